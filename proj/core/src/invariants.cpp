#include "cgeo/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "cgeo/errors.hpp"

namespace cgeo {

namespace {

std::vector<std::vector<VertexId>> deep_components(const ComponentAnalysis& a) {
    std::vector<std::vector<VertexId>> out;
    for (const Component& c : a.components)
        if (c.label == DepthLabel::Deep) out.push_back(c.members);
    return out;
}

std::vector<char> to_seeds(std::size_t n, const std::vector<VertexId>& ids) {
    std::vector<char> s(n, 0);
    for (VertexId v : ids) s[static_cast<std::size_t>(v)] = 1;
    return s;
}

// Least-squares affine fit y = slope * x + intercept.
std::pair<double, double> affine_fit(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return {0.0, pts.empty() ? 0.0 : pts[0].second};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return {0.0, sy / n};
    const double slope = (n * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / n};
}

long long round_half_down(double t) { return static_cast<long long>(std::ceil(t - 0.5)); }

}  // namespace

CoendEstimate coend_lower_bound(const GroupSpec& spec, const std::vector<Word>& subgroup_gens,
                                int r_max, int radius, std::uint64_t budget) {
    CayleyBall ball = build_ball(spec, radius, budget);
    VertexSet orbit = realize(Pattern::subgroup_orbit(subgroup_gens), ball);
    CoendEstimate out;
    for (int r = 0; r <= r_max; ++r) {
        int deep = 0;
        try {
            deep = complement_components(ball, orbit, r).deep_count;
        } catch (const ComplementEmptyError&) {
            deep = 0;
        }
        out.r_values.push_back(r);
        out.deep_counts.push_back(deep);
    }
    if (out.deep_counts.back() == 0) {
        out.lower_bound = 0;
    } else {
        out.lower_bound = *std::max_element(out.deep_counts.begin(), out.deep_counts.end());
    }
    out.unbounded = out.deep_counts.size() >= 2;
    for (std::size_t i = 0; i + 1 < out.deep_counts.size(); ++i)
        out.unbounded = out.unbounded && out.deep_counts[i + 1] > out.deep_counts[i];
    return out;
}

GrowthSeries growth_series(const GroupSpec& spec, int n_max, std::uint64_t budget) {
    CayleyBall ball = build_ball(spec, n_max, budget);
    GrowthSeries beta(static_cast<std::size_t>(n_max) + 1, 0);
    for (int d : ball.dist) ++beta[static_cast<std::size_t>(d)];
    for (std::size_t n = 1; n < beta.size(); ++n) beta[n] += beta[n - 1];
    return beta;
}

GrowthSeries pattern_growth(const CayleyBall& ball, const VertexSet& s, VertexId basepoint,
                            int n_max) {
    std::vector<int> d = distances_from(ball, basepoint);
    GrowthSeries beta(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::size_t v = 0; v < s.members.size(); ++v) {
        if (!s.members[v] || d[v] < 0 || d[v] > n_max) continue;
        ++beta[static_cast<std::size_t>(d[v])];
    }
    for (std::size_t n = 1; n < beta.size(); ++n) beta[n] += beta[n - 1];
    return beta;
}

DominationResult weakly_dominates(const GrowthSeries& beta, const GrowthSeries& beta2,
                                  int lambda_cap, int c_cap, int n_range) {
    if (static_cast<int>(beta.size()) <= n_range)
        throw RangeTooShortError("first series shorter than the requested range");
    const long long needed = static_cast<long long>(lambda_cap) * n_range + c_cap;
    if (static_cast<long long>(beta2.size()) <= needed)
        throw RangeTooShortError("second series must cover lambda_cap * n_range + c_cap");
    for (int lambda = 1; lambda <= lambda_cap; ++lambda) {
        for (int c = 0; c <= c_cap; ++c) {
            bool ok = true;
            for (int n = 0; n <= n_range && ok; ++n) {
                const std::size_t idx = static_cast<std::size_t>(lambda) * n + c;
                ok = beta[static_cast<std::size_t>(n)] <= lambda * beta2[idx] + c;
            }
            if (ok) return {true, lambda, c};
        }
    }
    return {false, 0, 0};
}

GrowthVerdict polynomial_growth_verdict(const GrowthSeries& beta) {
    GrowthVerdict v;
    const int top = static_cast<int>(beta.size()) - 1;
    if (top < 4) return v;
    const int half = top / 2;
    v.fitted_exponent = std::log(static_cast<double>(beta[static_cast<std::size_t>(top)]) /
                                 static_cast<double>(beta[static_cast<std::size_t>(half)])) /
                        std::log(static_cast<double>(top) / static_cast<double>(half));
    if (v.fitted_exponent > 6.5) return v;
    constexpr int kLambdaCap = 4, kCCap = 4;
    for (int a = 1; a <= 6; ++a) {
        GrowthSeries poly;
        for (long long n = 0; n <= static_cast<long long>(kLambdaCap) * top + kCCap; ++n) {
            long long p = 1;
            for (int i = 0; i < a; ++i) p *= n + 1;
            poly.push_back(p);
        }
        if (weakly_dominates(beta, poly, kLambdaCap, kCCap, top).dominated) {
            v.polynomial = true;
            v.degree = a;
            v.label = "polynomial growth => virtually nilpotent";
            break;
        }
    }
    return v;
}

CoarseConnectedness coarse_zero_connected(const CayleyBall& ball, const VertexSet& s, int r_max) {
    if (s.empty()) throw IncompatiblePatternError("coarse connectivity of an empty set");
    for (int r = 0; r <= r_max; ++r) {
        VertexSet n = neighborhood(ball, s, r);
        if (guarded_part_connected(ball, n, n.guard)) return {true, r};
    }
    return {false, -1};
}

namespace {

void fit_profile(DistortionProfile& p) {
    std::vector<std::pair<double, double>> up, lo;
    double sxy = 0, sxx = 0;
    for (const DistortionSample& s : p.samples) {
        if (s.intrinsic == 0) continue;
        up.emplace_back(s.intrinsic, s.max_ambient);
        lo.emplace_back(s.intrinsic, s.min_ambient);
        // scatter slope through the origin, envelope midpoints as proxy
        const double mid = (s.max_ambient + s.min_ambient) / 2.0;
        sxy += s.intrinsic * mid;
        sxx += static_cast<double>(s.intrinsic) * s.intrinsic;
    }
    std::tie(p.lambda_up, p.c_up) = affine_fit(up);
    std::tie(p.lambda_lo, p.c_lo) = affine_fit(lo);
    p.lambda_fit = sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

DistortionProfile distortion_profile(const GroupSpec& spec, const std::vector<Word>& subgroup_gens,
                                     int radius, int sample_count) {
    std::vector<Element> gens;
    for (const Word& w : subgroup_gens) {
        Element g = normalize(spec, w);
        if (g.is_identity())
            throw IncompatiblePatternError("subgroup generator normalizes to the identity");
        gens.push_back(inverse(spec, g));
        gens.push_back(std::move(g));
    }
    std::unordered_map<Element, int, ElementHash> depth;  // intrinsic word length
    std::deque<Element> todo;
    Element id = normalize(spec, {});
    depth.emplace(id, 0);
    todo.push_back(id);
    std::map<int, std::pair<int, int>> env;  // intrinsic -> (min, max ambient)
    env[0] = {0, 0};
    while (!todo.empty() && static_cast<int>(depth.size()) < sample_count) {
        Element h = todo.front();
        todo.pop_front();
        const int d = depth[h];
        for (const Element& g : gens) {
            Element n = multiply(spec, h, g);
            if (n.length() > radius) continue;
            if (!depth.emplace(n, d + 1).second) continue;
            auto it = env.find(d + 1);
            if (it == env.end())
                env[d + 1] = {n.length(), n.length()};
            else {
                it->second.first = std::min(it->second.first, n.length());
                it->second.second = std::max(it->second.second, n.length());
            }
            todo.push_back(n);
        }
    }
    DistortionProfile p;
    for (auto& [r, mm] : env) p.samples.push_back({r, mm.first, mm.second});
    fit_profile(p);
    return p;
}

DistortionProfile map_distortion_profile(const CayleyBall& ball, double angle, int sample_count,
                                         std::uint64_t seed) {
    if (ball.spec.family != Family::FreeAbelian || ball.spec.rank != 2)
        throw IncompatiblePatternError("map distortion requires the rank-2 free abelian group");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, ball.size() - 1);
    const double c = std::cos(angle), s = std::sin(angle);
    std::map<int, std::pair<int, int>> env;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < sample_count; ++i) {
        auto [x1, y1] = plane_coords(ball.vertices[static_cast<std::size_t>(pick(rng))]);
        auto [x2, y2] = plane_coords(ball.vertices[static_cast<std::size_t>(pick(rng))]);
        const long long dx = x1 - x2, dy = y1 - y2;
        const int intr = static_cast<int>(std::llabs(dx) + std::llabs(dy));
        if (intr == 0) continue;
        const long long ix1 = round_half_down(c * x1 - s * y1), iy1 = round_half_down(s * x1 + c * y1);
        const long long ix2 = round_half_down(c * x2 - s * y2), iy2 = round_half_down(s * x2 + c * y2);
        const int amb = static_cast<int>(std::llabs(ix1 - ix2) + std::llabs(iy1 - iy2));
        auto it = env.find(intr);
        if (it == env.end())
            env[intr] = {amb, amb};
        else {
            it->second.first = std::min(it->second.first, amb);
            it->second.second = std::max(it->second.second, amb);
        }
        sxy += static_cast<double>(intr) * amb;
        sxx += static_cast<double>(intr) * intr;
    }
    DistortionProfile p;
    for (auto& [r, mm] : env) p.samples.push_back({r, mm.first, mm.second});
    fit_profile(p);
    p.lambda_fit = sxx > 0 ? sxy / sxx : 0.0;  // true scatter slope, not the midpoint proxy
    return p;
}

CommensurizerProbe commensurizer_probe(const GroupSpec& spec,
                                       const std::vector<Word>& subgroup_gens, const Word& g,
                                       const std::vector<int>& radii, std::uint64_t budget) {
    CommensurizerProbe out;
    out.radii = radii;
    Element ge = normalize(spec, g);
    for (int radius : radii) {
        CayleyBall ball = build_ball(spec, radius, budget);
        VertexSet h = realize(Pattern::subgroup_orbit(subgroup_gens), ball);
        VertexSet gh = translate_set(ball, h, ge);
        HausdorffResult res = restricted_hausdorff(ball, h, gh, 0);
        out.values.push_back(res.value);
        out.exceeded.push_back(res.exceeds ? 1 : 0);
    }
    const std::size_t n = out.values.size();
    bool growing = n >= 3;
    for (std::size_t i = 0; i + 1 < n; ++i) growing = growing && out.values[i + 1] > out.values[i];
    if (n >= 2 && out.values[n - 1] == out.values[n - 2])
        out.verdict = "Stable";
    else if (growing)
        out.verdict = "Growing";
    else
        out.verdict = "Inconclusive";
    return out;
}

InterlacedProbe interlaced_probe(const GroupSpec& spec, const std::vector<Word>& subgroup_gens,
                                 int r, int radius, int t_max, std::uint64_t budget) {
    CayleyBall ball = build_ball(spec, radius, budget);
    VertexSet h = realize(Pattern::subgroup_orbit(subgroup_gens), ball);
    ComponentAnalysis a = complement_components(ball, h, r);
    auto deeps = deep_components(a);
    InterlacedProbe out;
    out.deep_count = static_cast<int>(deeps.size());
    std::vector<int> comp_of(static_cast<std::size_t>(ball.size()), -1);
    for (std::size_t i = 0; i < deeps.size(); ++i)
        for (VertexId v : deeps[i]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(i);

    std::vector<int> uf(deeps.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)];
        return x;
    };

    std::map<std::vector<char>, bool> seen;
    std::set<std::pair<int, int>> edges;
    for (int v = 0; v < ball.size(); ++v) {
        if (ball.dist[static_cast<std::size_t>(v)] > t_max) break;
        VertexSet coset = translate_set(ball, h, ball.vertices[static_cast<std::size_t>(v)]);
        if (!seen.emplace(coset.members, true).second) continue;
        ++out.cosets_tested;
        std::vector<int> touched;
        for (std::size_t u = 0; u < coset.members.size(); ++u) {
            if (!coset.members[u] || !ball.in_guard(static_cast<VertexId>(u), coset.guard))
                continue;
            int ci = comp_of[u];
            if (ci >= 0 && std::find(touched.begin(), touched.end(), ci) == touched.end())
                touched.push_back(ci);
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t i = 0; i + 1 < touched.size(); ++i) {
            for (std::size_t j = i + 1; j < touched.size(); ++j) {
                if (edges.emplace(touched[i], touched[j]).second)
                    out.edges.emplace_back(touched[i], touched[j]);
                uf[static_cast<std::size_t>(find(touched[i]))] = find(touched[j]);
            }
        }
    }
    out.interlaced = true;
    for (std::size_t i = 0; i < deeps.size(); ++i)
        out.interlaced = out.interlaced && find(static_cast<int>(i)) == find(0);
    return out;
}

AlmostInvariantResult almost_invariant_set(const GroupSpec& spec,
                                           const std::vector<Word>& subgroup_gens, int r,
                                           int chosen_component, int k, int radius,
                                           std::uint64_t budget) {
    CayleyBall ball = build_ball(spec, radius, budget);
    VertexSet h = realize(Pattern::subgroup_orbit(subgroup_gens), ball);
    ComponentAnalysis a = complement_components(ball, h, r);
    auto deeps = deep_components(a);
    AlmostInvariantResult out;
    out.deep_count = static_cast<int>(deeps.size());
    if (out.deep_count < 2) throw NotTwoSeparatingError();
    if (chosen_component < 0 || chosen_component >= out.deep_count)
        throw ConfigError("chosen_component", "deep component index out of range");

    std::vector<int> du = multi_source_distances(
        ball, to_seeds(static_cast<std::size_t>(ball.size()),
                       deeps[static_cast<std::size_t>(chosen_component)]));

    const std::size_t V = static_cast<std::size_t>(ball.size());
    out.b.assign(V, 0);
    out.determined.assign(V, 0);
    for (int g = 0; g < ball.size(); ++g) {
        VertexSet gh = translate_set(ball, h, ball.vertices[static_cast<std::size_t>(g)]);
        bool any = false, inside = true;
        for (std::size_t v = 0; v < gh.members.size(); ++v) {
            if (!gh.members[v]) continue;
            if (ball.boundary_codist(static_cast<VertexId>(v)) < k + 1) continue;
            any = true;
            inside = inside && du[v] >= 0 && du[v] <= k;
        }
        if (!any) continue;
        out.determined[static_cast<std::size_t>(g)] = 1;
        out.b[static_cast<std::size_t>(g)] = inside ? 1 : 0;
    }

    // Coboundary: edges between determined vertices with opposite membership;
    // each endpoint must lie within rho of N_r(H).
    std::vector<int> dn = multi_source_distances(ball, a.removed);
    int rho = 0;
    for (int v = 0; v < ball.size(); ++v) {
        if (!out.determined[static_cast<std::size_t>(v)]) continue;
        if (!ball.in_guard(v, a.guard)) continue;
        for (int s = 0; s < ball.num_letters; ++s) {
            VertexId w = ball.adj[static_cast<std::size_t>(v) * ball.num_letters + s];
            if (w == kNoVertex || !out.determined[static_cast<std::size_t>(w)]) continue;
            if (!ball.in_guard(w, a.guard)) continue;
            if (out.b[static_cast<std::size_t>(v)] == out.b[static_cast<std::size_t>(w)]) continue;
            rho = std::max({rho, dn[static_cast<std::size_t>(v)], dn[static_cast<std::size_t>(w)]});
        }
    }
    out.coboundary_radius = rho;

    out.h_invariant = true;
    for (const Word& w : subgroup_gens) {
        Element he = normalize(spec, w);
        for (int v = 0; v < ball.size() && out.h_invariant; ++v) {
            if (!out.determined[static_cast<std::size_t>(v)]) continue;
            auto hv = ball.find(multiply(spec, he, ball.vertices[static_cast<std::size_t>(v)]));
            if (!hv || !out.determined[static_cast<std::size_t>(*hv)]) continue;
            out.h_invariant = out.b[static_cast<std::size_t>(*hv)] == out.b[static_cast<std::size_t>(v)];
        }
    }
    return out;
}

}  // namespace cgeo
