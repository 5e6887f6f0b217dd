#include "cgeo/separation.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "cgeo/errors.hpp"

namespace cgeo {

const char* depth_label_name(DepthLabel l) {
    switch (l) {
        case DepthLabel::Deep:
            return "Deep";
        case DepthLabel::Shallow:
            return "Shallow";
        case DepthLabel::Undetermined:
            return "Undetermined";
    }
    return "?";
}

int default_theta(const CayleyBall& ball, int r) {
    int range = ball.radius;
    if (ball.is_box()) {
        range = ball.factor_caps[0];
        for (int c : ball.factor_caps) range = std::min(range, c);
    }
    return (std::max(range - r, 0) + 2) / 3;  // ceil((range - r) / 3)
}

ComponentAnalysis complement_components(const CayleyBall& ball, const VertexSet& y, int r,
                                        int theta) {
    if (y.empty()) throw IncompatiblePatternError("component analysis of an empty set");
    ComponentAnalysis out;
    out.r = r;
    out.theta = theta >= 0 ? theta : default_theta(ball, r);

    VertexSet n = neighborhood(ball, y, r);
    out.guard = n.guard;
    out.removed = n.members;
    const std::size_t V = n.members.size();
    if (std::count(n.members.begin(), n.members.end(), char(1)) == static_cast<long>(V))
        throw ComplementEmptyError();

    std::vector<int> dn = multi_source_distances(ball, n.members);

    std::vector<char> seen(V, 0);
    for (std::size_t start = 0; start < V; ++start) {
        if (n.members[start] || seen[start]) continue;
        Component comp;
        std::deque<VertexId> q{static_cast<VertexId>(start)};
        seen[start] = 1;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            comp.members.push_back(v);
            comp.depth = std::max(comp.depth, dn[static_cast<std::size_t>(v)]);
            comp.touches_boundary |= ball.touches_outside(v);
            const std::size_t base = static_cast<std::size_t>(v) * ball.num_letters;
            for (int s = 0; s < ball.num_letters; ++s) {
                VertexId w = ball.adj[base + s];
                if (w == kNoVertex) continue;
                const std::size_t wi = static_cast<std::size_t>(w);
                if (!n.members[wi] && !seen[wi]) {
                    seen[wi] = 1;
                    q.push_back(w);
                }
            }
        }
        std::sort(comp.members.begin(), comp.members.end());
        if (!comp.touches_boundary)
            comp.label = DepthLabel::Shallow;
        else if (comp.depth >= out.theta)
            comp.label = DepthLabel::Deep;
        else if (2 * comp.depth <= out.theta)
            comp.label = DepthLabel::Shallow;
        else
            comp.label = DepthLabel::Undetermined;
        out.components.push_back(std::move(comp));
    }
    for (const Component& c : out.components) {
        if (c.label == DepthLabel::Deep) ++out.deep_count;
        if (c.label == DepthLabel::Shallow) ++out.shallow_count;
        if (c.label == DepthLabel::Undetermined) ++out.undetermined_count;
    }
    return out;
}

int measure_m0(const CayleyBall& ball, const VertexSet& y, int r, int theta) {
    ComponentAnalysis a = complement_components(ball, y, r, theta);
    if (a.deep_count == 0) return -1;
    const int unreachable = ball.radius + 1;
    int m0 = 0;
    bool any_p = false;
    std::vector<std::vector<int>> dd;
    for (const Component& c : a.components) {
        if (c.label != DepthLabel::Deep) continue;
        std::vector<char> seeds(a.removed.size(), 0);
        for (VertexId v : c.members) seeds[static_cast<std::size_t>(v)] = 1;
        dd.push_back(multi_source_distances(ball, seeds));
    }
    for (std::size_t p = 0; p < a.removed.size(); ++p) {
        if (!a.removed[p] || !ball.in_guard(static_cast<VertexId>(p), a.guard)) continue;
        any_p = true;
        for (const auto& d : dd) {
            int dp = d[p] < 0 ? unreachable : d[p];
            m0 = std::max(m0, dp);
        }
    }
    if (!any_p) throw EmptyAfterGuardError();
    return m0;
}

SeparationProfile n_separating_profile(const GroupSpec& spec, const Pattern& pattern, int r,
                                       const std::vector<int>& radii, std::uint64_t budget) {
    SeparationProfile out;
    out.radii = radii;
    for (int radius : radii) {
        CayleyBall ball = build_ball(spec, radius, budget);
        VertexSet y = realize(pattern, ball);
        int deep = 0;
        try {
            deep = complement_components(ball, y, r).deep_count;
        } catch (const ComplementEmptyError&) {
            deep = 0;  // finite index: 0-separating
        }
        out.deep_counts.push_back(deep);
    }
    const std::size_t n = out.deep_counts.size();
    if (n >= 2 && out.deep_counts[n - 1] == out.deep_counts[n - 2]) {
        out.n_separating = out.deep_counts[n - 1];
        out.stable = true;
    } else if (n == 1) {
        out.n_separating = out.deep_counts[0];
    }
    return out;
}

ModulusEstimate estimate_moduli(const GroupSpec& spec, const Pattern& pattern,
                                const std::vector<int>& radii, const std::vector<int>& r_list,
                                std::uint64_t budget) {
    ModulusEstimate out;
    out.radii = radii;
    for (int r : r_list) {
        ModulusSample s;
        s.r = r;
        out.samples.push_back(s);
    }
    for (int radius : radii) {
        CayleyBall ball = build_ball(spec, radius, budget);
        VertexSet y = realize(pattern, ball);
        for (ModulusSample& s : out.samples) {
            ComponentAnalysis a = complement_components(ball, y, s.r);
            int m1 = 0;
            for (const Component& c : a.components)
                if (c.label == DepthLabel::Shallow) m1 = std::max(m1, c.depth);
            s.m1_by_radius.push_back(m1);
            s.m0_by_radius.push_back(measure_m0(ball, y, s.r));
        }
    }
    const int top_radius = radii.back();
    for (ModulusSample& s : out.samples) {
        s.m0_hat = s.m0_by_radius.back();
        s.m1_hat = s.m1_by_radius.back();
        bool growing = s.m0_by_radius.size() >= 2;
        for (std::size_t i = 0; i + 1 < s.m0_by_radius.size(); ++i)
            growing &= s.m0_by_radius[i + 1] > s.m0_by_radius[i];
        s.failed = s.m0_hat < 0 || 2 * s.m0_hat > top_radius - s.r || growing;
    }
    return out;
}

namespace {

struct DeepFields {
    ComponentAnalysis analysis;
    std::vector<std::vector<int>> deep_dist;  // per Deep component
};

DeepFields deep_distance_fields(const CayleyBall& ball, const VertexSet& y, int theta) {
    DeepFields f;
    f.analysis = complement_components(ball, y, 0, theta);
    for (const Component& c : f.analysis.components) {
        if (c.label != DepthLabel::Deep) continue;
        std::vector<char> seeds(static_cast<std::size_t>(ball.size()), 0);
        for (VertexId v : c.members) seeds[static_cast<std::size_t>(v)] = 1;
        f.deep_dist.push_back(multi_source_distances(ball, seeds));
    }
    return f;
}

// k_min of a candidate set against the deep distance fields; INT_MAX = Fail.
int containment_k(const CayleyBall& ball, const VertexSet& candidate, const VertexSet& y,
                  const DeepFields& fields) {
    std::vector<VertexId> pts;
    for (std::size_t v = 0; v < candidate.members.size(); ++v)
        if (candidate.members[v] && ball.in_guard(static_cast<VertexId>(v), candidate.guard))
            pts.push_back(static_cast<VertexId>(v));
    if (pts.empty()) return -1;  // nothing certifiable
    bool inside_y = true;
    for (VertexId v : pts) inside_y &= y.members[static_cast<std::size_t>(v)] != 0;
    if (inside_y) return 0;  // trivially noncrossing: lies in the removed set
    int best = std::numeric_limits<int>::max();
    for (const auto& d : fields.deep_dist) {
        int worst = 0;
        for (VertexId v : pts) {
            int dv = d[static_cast<std::size_t>(v)];
            if (dv < 0) {
                worst = std::numeric_limits<int>::max();
                break;
            }
            worst = std::max(worst, dv);
        }
        best = std::min(best, worst);
    }
    return best;
}

void finalize(NoncrossingReport& rep, int k_max) {
    rep.tested = static_cast<int>(rep.entries.size());
    rep.pass = rep.tested > 0;
    for (const NoncrossingEntry& e : rep.entries) {
        if (e.fail)
            rep.pass = false;
        else
            rep.max_finite_k = std::max(rep.max_finite_k, e.k_min);
    }
    if (rep.max_finite_k > k_max) rep.pass = false;
}

}  // namespace

NoncrossingReport noncrossing_check(const CayleyBall& ball, const Pattern& pattern, int T,
                                    int k_max, int theta) {
    VertexSet y = realize(pattern, ball);
    DeepFields fields = deep_distance_fields(ball, y, theta);
    NoncrossingReport rep;
    std::map<std::vector<char>, bool> seen;  // dedupe identical translates
    for (int v = 0; v < ball.size(); ++v) {
        if (ball.dist[static_cast<std::size_t>(v)] > T) break;
        const Element& g = ball.vertices[static_cast<std::size_t>(v)];
        VertexSet t = translate_set(ball, y, g);
        if (!seen.emplace(t.members, true).second) continue;
        int k = containment_k(ball, t, y, fields);
        if (k < 0) continue;  // empty after guard: not certifiable either way
        NoncrossingEntry e;
        e.g = g;
        if (k == std::numeric_limits<int>::max() || k > k_max) {
            e.fail = true;
            e.k_min = -1;
        } else {
            e.k_min = k;
        }
        rep.entries.push_back(std::move(e));
    }
    finalize(rep, k_max);
    return rep;
}

NoncrossingReport noncrossing_family(const CayleyBall& ball, const std::vector<Pattern>& family,
                                     int k_max, int theta) {
    std::vector<VertexSet> sets;
    for (const Pattern& p : family) sets.push_back(realize(p, ball));
    NoncrossingReport rep;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        DeepFields fields = deep_distance_fields(ball, sets[j], theta);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (i == j) continue;
            int k = containment_k(ball, sets[i], sets[j], fields);
            if (k < 0) continue;
            NoncrossingEntry e;
            e.family_index = static_cast<int>(i);
            if (k == std::numeric_limits<int>::max() || k > k_max) {
                e.fail = true;
                e.k_min = -1;
            } else {
                e.k_min = k;
            }
            rep.entries.push_back(std::move(e));
        }
    }
    finalize(rep, k_max);
    return rep;
}

}  // namespace cgeo
