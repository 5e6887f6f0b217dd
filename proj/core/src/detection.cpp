#include "cgeo/detection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "cgeo/errors.hpp"

namespace cgeo {

const char* detection_status_name(DetectionStatus s) {
    switch (s) {
        case DetectionStatus::Detected:
            return "Detected";
        case DetectionStatus::Not3Separating:
            return "Not3Separating";
        case DetectionStatus::DeepConditionViolated:
            return "DeepConditionViolated";
        case DetectionStatus::NoncrossingViolated:
            return "NoncrossingViolated";
        case DetectionStatus::Unstable:
            return "Unstable";
    }
    return "?";
}

TranslateFamily collect_translates(const CayleyBall& ball, const VertexSet& y, int k) {
    TranslateFamily fam;
    fam.k = k;
    std::unordered_set<Element, ElementHash> seen_g;
    for (int p = 0; p < ball.size(); ++p) {
        if (ball.dist[static_cast<std::size_t>(p)] > k) break;
        for (std::size_t yv = 0; yv < y.members.size(); ++yv) {
            if (!y.members[yv]) continue;
            Element g = multiply(ball.spec, ball.vertices[static_cast<std::size_t>(p)],
                                 inverse(ball.spec, ball.vertices[yv]));
            if (!seen_g.insert(g).second) continue;
            VertexSet t = translate_set(ball, y, g);
            // Two translates are the same subset when they agree on the
            // common certified region; raw membership differs by truncation
            // artifacts near the boundary.
            bool dup = false;
            for (const VertexSet& kept : fam.translates) {
                if (sets_equal_guarded(ball, t, kept, guard_max(t.guard, kept.guard))) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            fam.reps.push_back(std::move(g));
            fam.translates.push_back(std::move(t));
        }
    }
    return fam;
}

ClusterResult cluster_translates(const CayleyBall& ball, const TranslateFamily& family,
                                 int threshold) {
    const int n = static_cast<int>(family.reps.size());
    ClusterResult out;
    std::vector<int> uf(static_cast<std::size_t>(n));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)];
        return x;
    };
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            HausdorffResult h = restricted_hausdorff(ball, family.translates[static_cast<std::size_t>(i)],
                                                     family.translates[static_cast<std::size_t>(j)], 0);
            if (h.upper <= threshold) {
                // in-ball distances only overestimate, so the pair is
                // certifiably near; mu tracks the exact certified part
                dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h.value;
                uf[static_cast<std::size_t>(find(i))] = find(j);
            } else if (h.value <= threshold) {
                // near on the certified part but possibly far near the
                // boundary: the merge decision is not certifiable here
                out.uncertified = true;
            }
        }
    }
    out.cluster_of.assign(static_cast<std::size_t>(n), -1);
    std::map<int, int> relabel;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        auto it = relabel.find(root);
        if (it == relabel.end()) it = relabel.emplace(root, out.cluster_count++).first;
        out.cluster_of[static_cast<std::size_t>(i)] = it->second;
    }
    int max_intra = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (find(i) == find(j) && dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= 0)
                max_intra = std::max(max_intra, dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    out.mu = max_intra + 1;
    return out;
}

VerifyResult verify_detection(const CayleyBall& ball, const VertexSet& y,
                              const std::vector<Element>& generators) {
    std::vector<Word> words;
    for (const Element& g : generators)
        if (!g.is_identity()) words.push_back(g.word);
    VertexSet orbit = realize(Pattern::subgroup_orbit(words), ball);
    VerifyResult out;
    out.orbit_size = orbit.count();
    HausdorffResult h = restricted_hausdorff(ball, y, orbit, 0);
    out.residual = h.value;
    out.exceeds = h.exceeds;
    return out;
}

namespace {

CayleyBall build_for(const GroupSpec& spec, const DetectParams& p, int grow) {
    if (!p.factor_caps.empty()) {
        std::vector<int> caps = p.factor_caps;
        for (int& c : caps) c += grow;
        return build_box_ball(spec, caps, p.budget);
    }
    return build_ball(spec, p.radius + grow, p.budget);
}

int range_of(const CayleyBall& ball) {
    if (!ball.is_box()) return ball.radius;
    int m = ball.factor_caps[0];
    for (int c : ball.factor_caps) m = std::min(m, c);
    return m;
}

// m0 with the r argument clamped down to the largest feasible value (the
// complement must retain a deep component at finite scale).
int m0_clamped(const CayleyBall& ball, const VertexSet& y, int r, int theta, bool& clamped) {
    for (int rr = r; rr >= 0; --rr) {
        int m0 = -1;
        try {
            m0 = measure_m0(ball, y, rr, theta);
        } catch (const ComplementEmptyError&) {
            m0 = -1;
        } catch (const EmptyAfterGuardError&) {
            m0 = -1;
        }
        if (m0 >= 0) {
            clamped = clamped || rr != r;
            return m0;
        }
    }
    clamped = true;
    return 1;
}

struct Construction {
    int cluster_count = 0;
    int mu = 0;
    bool uncertified = false;
    ClusterResult clusters;
    TranslateFamily family;
};

Construction run_family(const CayleyBall& ball, const VertexSet& y, int k, int threshold) {
    Construction c;
    c.family = collect_translates(ball, y, k);
    c.clusters = cluster_translates(ball, c.family, threshold);
    c.cluster_count = c.clusters.cluster_count;
    c.mu = c.clusters.mu;
    c.uncertified = c.clusters.uncertified;
    return c;
}

}  // namespace

DetectionCertificate detect_subgroup(const GroupSpec& spec, const Pattern& pattern,
                                     const DetectParams& params) {
    DetectionCertificate cert;
    CayleyBall ball = build_for(spec, params, 0);
    CayleyBall ball_big = build_for(spec, params, 2);
    VertexSet y = realize(pattern, ball);
    VertexSet y_big = realize(pattern, ball_big);

    // Precondition measurements on both balls (order: deep, shallow,
    // 3-separating, noncrossing).
    ComponentAnalysis an_y, an_y_big;
    try {
        an_y = complement_components(ball, y, 0, params.theta);
        an_y_big = complement_components(ball_big, y_big, 0, params.theta);
    } catch (const ComplementEmptyError&) {
        cert.status = DetectionStatus::Not3Separating;
        cert.detail = "complement of the pattern is empty";
        return cert;
    }
    cert.deep_counts = {an_y.deep_count, an_y_big.deep_count};
    cert.m0_values = {measure_m0(ball, y, 0, params.theta),
                      measure_m0(ball_big, y_big, 0, params.theta)};
    auto max_shallow = [](const ComponentAnalysis& a) {
        int m = 0;
        for (const Component& c : a.components)
            if (c.label == DepthLabel::Shallow) m = std::max(m, c.depth);
        return m;
    };
    cert.m1_values = {max_shallow(an_y), max_shallow(an_y_big)};

    const int m0_main = cert.m0_values[0], m0_big = cert.m0_values[1];
    if (m0_big < 0 || m0_main < 0 || 2 * m0_big > range_of(ball_big) || m0_big > m0_main) {
        cert.status = DetectionStatus::DeepConditionViolated;
        cert.detail = "m0 grows with the horizon or exceeds half the usable range";
        return cert;
    }
    if (cert.m1_values[1] > cert.m1_values[0] + 2) {
        // Shallow-condition failure has no named status of its own.
        cert.status = DetectionStatus::Unstable;
        cert.detail = "shallow bound grows with the horizon";
        return cert;
    }
    if (an_y.deep_count < 3 || an_y.deep_count != an_y_big.deep_count) {
        cert.status = DetectionStatus::Not3Separating;
        cert.detail = "deep count " + std::to_string(an_y.deep_count) + " / " +
                      std::to_string(an_y_big.deep_count);
        return cert;
    }
    NoncrossingReport nc = noncrossing_check(ball, pattern, params.t_max, params.k_max, params.theta);
    cert.noncrossing_pass = nc.pass;
    if (!nc.pass) {
        cert.status = DetectionStatus::NoncrossingViolated;
        cert.detail = "a translate is not contained near a single deep component";
        return cert;
    }

    // Cluster threshold from the measured moduli chain unless overridden.
    int x1 = params.threshold;
    if (x1 < 0) {
        bool clamped = false;
        int m0_k = m0_clamped(ball, y, params.k, params.theta, clamped);
        int x2 = m0_k + 1;
        int m0_x2 = m0_clamped(ball, y, x2, params.theta, clamped);
        int m0_in = m0_clamped(ball, y, std::min(x2 + m0_x2, range_of(ball)), params.theta, clamped);
        x1 = 2 * m0_in + m0_x2;
        cert.threshold_clamped = clamped;
    }
    cert.threshold_x1 = x1;

    Construction main = run_family(ball, y, params.k, x1);
    Construction big = run_family(ball_big, y_big, params.k, x1);
    cert.family_size = static_cast<int>(main.family.reps.size());
    cert.cluster_count = main.cluster_count;
    cert.cluster_count_enlarged = big.cluster_count;
    cert.mu = main.mu;
    cert.mu_enlarged = big.mu;
    if (main.uncertified || big.uncertified) {
        cert.status = DetectionStatus::Unstable;
        cert.detail = "an intra-cluster distance could not be certified within the guard";
        return cert;
    }

    // Deep components C_j of ball \ Y and D_m of ball \ N_mu(Y).
    ComponentAnalysis an_mu = complement_components(ball, y, main.mu, params.theta);
    std::vector<const Component*> cs, ds;
    for (const Component& c : an_y.components)
        if (c.label == DepthLabel::Deep) cs.push_back(&c);
    for (const Component& d : an_mu.components)
        if (d.label == DepthLabel::Deep) ds.push_back(&d);

    VertexSet nk = neighborhood(ball, y, params.k);
    std::map<std::pair<int, std::vector<int>>, int> class_of_key;
    std::vector<Element> class_rep;           // element_less-least member
    std::vector<std::pair<Element, int>> members;  // (g, class id)

    for (int gv = 0; gv < ball.size(); ++gv) {
        if (!nk.members[static_cast<std::size_t>(gv)] || !ball.in_guard(gv, nk.guard)) continue;
        const Element& g = ball.vertices[static_cast<std::size_t>(gv)];
        VertexSet gy = translate_set(ball, y, g);
        int fidx = -1;
        for (std::size_t i = 0; i < main.family.translates.size(); ++i) {
            const VertexSet& t = main.family.translates[i];
            if (sets_equal_guarded(ball, gy, t, guard_max(gy.guard, t.guard))) {
                fidx = static_cast<int>(i);
                break;
            }
        }
        if (fidx < 0) continue;  // family membership not certifiable
        const int cluster = main.clusters.cluster_of[static_cast<std::size_t>(fidx)];

        // f_g: for each C_j, the set of D_m whose guarded part lies in
        // g^-1 * C_j, with one edge of tolerance against boundary fuzz.
        Element gi = inverse(ball.spec, g);
        std::vector<int> signature;
        for (std::size_t j = 0; j < cs.size(); ++j) {
            VertexSet cset = make_set(ball, cs[j]->members, an_y.guard);
            VertexSet tset = translate_set(ball, cset, gi);
            // Only the translate's own uncertainty band is excluded: the
            // deep components D_m live near the boundary by construction, so
            // guarding them by mu as well would empty every signature.
            const Guard& dg = tset.guard;
            auto near_tset = [&](VertexId v) {
                if (tset.members[static_cast<std::size_t>(v)]) return true;
                for (int s = 0; s < ball.num_letters; ++s) {
                    VertexId w = ball.adj[static_cast<std::size_t>(v) * ball.num_letters + s];
                    if (w != kNoVertex && tset.members[static_cast<std::size_t>(w)]) return true;
                }
                return false;
            };
            for (std::size_t m = 0; m < ds.size(); ++m) {
                bool any = false, inside = true;
                for (VertexId v : ds[m]->members) {
                    if (!ball.in_guard(v, dg)) continue;
                    any = true;
                    if (!near_tset(v)) {
                        inside = false;
                        break;
                    }
                }
                if (any && inside) signature.push_back(static_cast<int>(m));
            }
            signature.push_back(-1);  // separator between the C_j blocks
        }

        auto key = std::make_pair(cluster, std::move(signature));
        auto it = class_of_key.find(key);
        int cid;
        if (it == class_of_key.end()) {
            cid = static_cast<int>(class_rep.size());
            class_of_key.emplace(std::move(key), cid);
            class_rep.push_back(g);
        } else {
            cid = it->second;
            if (element_less(g, class_rep[static_cast<std::size_t>(cid)]))
                class_rep[static_cast<std::size_t>(cid)] = g;
        }
        members.emplace_back(g, cid);
    }

    cert.class_count = static_cast<int>(class_rep.size());
    for (const Element& tau : class_rep) cert.r_rep = std::max(cert.r_rep, tau.length());

    std::vector<Element> gens;
    for (const auto& [g, cid] : members) {
        Element gen = multiply(ball.spec, g, inverse(ball.spec, class_rep[static_cast<std::size_t>(cid)]));
        if (!gen.is_identity()) gens.push_back(std::move(gen));
    }
    std::sort(gens.begin(), gens.end(), element_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    cert.generators = gens;
    cert.trivial_subgroup = gens.empty();

    VerifyResult vr = verify_detection(ball, y, gens);
    cert.residual = vr.residual;
    cert.residual_exceeds = vr.exceeds;
    cert.orbit_size = vr.orbit_size;
    cert.residual_bound = std::max(cert.r_rep + 1, 2 * cert.mu);

    if (cert.cluster_count != cert.cluster_count_enlarged || cert.mu != cert.mu_enlarged) {
        cert.status = DetectionStatus::Unstable;
        cert.detail = "cluster structure changed when the ball grew by 2";
        return cert;
    }
    if (vr.exceeds) {
        cert.status = DetectionStatus::Unstable;
        cert.detail = "residual distance not certifiable within the guard";
        return cert;
    }
    if (cert.residual <= cert.residual_bound) {
        cert.status = DetectionStatus::Detected;
    } else {
        cert.status = DetectionStatus::Unstable;
        cert.detail = "residual exceeds the certified bound";
    }
    return cert;
}

}  // namespace cgeo
