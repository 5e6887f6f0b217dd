#include "cgeo/cayley.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <ostream>

#include "cgeo/errors.hpp"

namespace cgeo {

int Guard::max() const {
    int m = 0;
    for (int c : comps) m = std::max(m, c);
    return m;
}

Guard Guard::plus(int r) const {
    Guard g = *this;
    for (int& c : g.comps) c += r;
    return g;
}

Guard guard_max(const Guard& a, const Guard& b) {
    if (a.comps.size() != b.comps.size())
        throw IncompatiblePatternError("guard dimensions differ");
    Guard g = a;
    for (std::size_t i = 0; i < g.comps.size(); ++i)
        g.comps[i] = std::max(g.comps[i], b.comps[i]);
    return g;
}

Letter CayleyBall::letter_at(int slot) const {
    int gen = slot / 2 + 1;
    return slot % 2 == 0 ? gen : -gen;
}

VertexId CayleyBall::neighbor(VertexId v, Letter l) const {
    int gen = l > 0 ? l : -l;
    int slot = (gen - 1) * 2 + (l > 0 ? 0 : 1);
    return adj[static_cast<std::size_t>(v) * num_letters + slot];
}

std::optional<VertexId> CayleyBall::find(const Element& e) const {
    auto it = index.find(e);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

bool CayleyBall::touches_outside(VertexId v) const {
    const std::size_t base = static_cast<std::size_t>(v) * num_letters;
    for (int s = 0; s < num_letters; ++s)
        if (adj[base + s] == kNoVertex) return true;
    return false;
}

int CayleyBall::boundary_codist(VertexId v) const {
    if (!is_box()) return radius - dist[static_cast<std::size_t>(v)];
    int m = factor_caps[0] - flens[static_cast<std::size_t>(v) * factor_caps.size()];
    for (std::size_t i = 1; i < factor_caps.size(); ++i)
        m = std::min(m, factor_caps[i] - flens[static_cast<std::size_t>(v) * factor_caps.size() + i]);
    return m;
}

bool CayleyBall::in_guard(VertexId v, const Guard& g) const {
    if (!is_box()) return radius - dist[static_cast<std::size_t>(v)] >= g.comps[0];
    for (std::size_t i = 0; i < factor_caps.size(); ++i)
        if (factor_caps[i] - flens[static_cast<std::size_t>(v) * factor_caps.size() + i] < g.comps[i])
            return false;
    return true;
}

Guard CayleyBall::translation_guard(const Guard& base, const Element& g) const {
    Guard out = base;
    Element n = normalize(spec, g.word);
    if (!is_box()) {
        out.comps[0] += static_cast<int>(n.word.size());
    } else {
        std::vector<int> fl = factor_lengths(spec, n);
        for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] += fl[i];
    }
    return out;
}

namespace {

CayleyBall build_common(const GroupSpec& spec, int radius, const std::vector<int>& caps,
                        std::uint64_t budget) {
    spec.validate();
    CayleyBall b;
    b.spec = spec;
    b.factor_caps = caps;
    b.num_letters = 2 * spec.generator_count();
    const bool box = !caps.empty();
    if (box && spec.family != Family::DirectProduct)
        throw ConfigError("factor_caps", "box balls require a direct product group");
    if (box && caps.size() != spec.factors.size())
        throw ConfigError("factor_caps", "one cap per factor required");
    if (box) {
        b.radius = 0;
        for (int c : caps) b.radius += c;
    } else {
        b.radius = radius;
    }

    const std::size_t nf = box ? caps.size() : 0;
    auto admissible = [&](const Element& e, std::vector<int>& fl_out) {
        if (!box) return true;  // metric: gated by BFS depth instead
        fl_out = factor_lengths(spec, e);
        for (std::size_t i = 0; i < nf; ++i)
            if (fl_out[i] > caps[i]) return false;
        return true;
    };

    Element id = normalize(spec, {});
    b.vertices.push_back(id);
    b.index.emplace(id, 0);
    b.dist.push_back(0);
    if (box) b.flens.assign(nf, 0);

    // Discovery pass: BFS in id order (ids are assigned in discovery order,
    // and distances along the vertex vector are non-decreasing).
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
        const int dv = b.dist[v];
        if (!box && dv >= b.radius) continue;
        for (int s = 0; s < b.num_letters; ++s) {
            Letter l = b.letter_at(s);
            Element w = multiply(spec, b.vertices[v], Element{{l}});
            if (b.index.contains(w)) continue;
            std::vector<int> fl;
            if (!admissible(w, fl)) continue;
            if (b.vertices.size() + 1 > budget)
                throw BudgetExceededError(b.vertices.size() + 1, budget);
            b.index.emplace(w, static_cast<VertexId>(b.vertices.size()));
            b.vertices.push_back(std::move(w));
            b.dist.push_back(dv + 1);
            if (box) b.flens.insert(b.flens.end(), fl.begin(), fl.end());
        }
    }

    // Adjacency pass over the complete vertex set.
    b.adj.assign(b.vertices.size() * static_cast<std::size_t>(b.num_letters), kNoVertex);
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
        for (int s = 0; s < b.num_letters; ++s) {
            Element w = multiply(spec, b.vertices[v], Element{{b.letter_at(s)}});
            auto it = b.index.find(w);
            if (it != b.index.end())
                b.adj[v * static_cast<std::size_t>(b.num_letters) + s] = it->second;
        }
    }
    return b;
}

}  // namespace

CayleyBall build_ball(const GroupSpec& spec, int radius, std::uint64_t budget) {
    if (radius < 0) throw ConfigError("radius", "must be non-negative");
    return build_common(spec, radius, {}, budget);
}

CayleyBall build_box_ball(const GroupSpec& spec, const std::vector<int>& caps,
                          std::uint64_t budget) {
    for (int c : caps)
        if (c < 0) throw ConfigError("factor_caps", "caps must be non-negative");
    return build_common(spec, 0, caps, budget);
}

int VertexSet::count() const {
    return static_cast<int>(std::count(members.begin(), members.end(), char(1)));
}

std::vector<VertexId> VertexSet::ids() const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i]) out.push_back(static_cast<VertexId>(i));
    return out;
}

VertexSet make_empty_set(const CayleyBall& ball) {
    VertexSet s;
    s.ball = &ball;
    s.members.assign(static_cast<std::size_t>(ball.size()), 0);
    s.guard = ball.zero_guard();
    return s;
}

VertexSet make_set(const CayleyBall& ball, const std::vector<VertexId>& ids, Guard guard) {
    VertexSet s = make_empty_set(ball);
    for (VertexId v : ids) s.members[static_cast<std::size_t>(v)] = 1;
    s.guard = std::move(guard);
    return s;
}

std::vector<int> multi_source_distances(const CayleyBall& ball, const std::vector<char>& seeds) {
    std::vector<int> d(static_cast<std::size_t>(ball.size()), -1);
    std::deque<VertexId> q;
    for (std::size_t v = 0; v < seeds.size(); ++v) {
        if (seeds[v]) {
            d[v] = 0;
            q.push_back(static_cast<VertexId>(v));
        }
    }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        const std::size_t base = static_cast<std::size_t>(v) * ball.num_letters;
        for (int s = 0; s < ball.num_letters; ++s) {
            VertexId w = ball.adj[base + s];
            if (w != kNoVertex && d[static_cast<std::size_t>(w)] < 0) {
                d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
                q.push_back(w);
            }
        }
    }
    return d;
}

std::vector<int> distances_from(const CayleyBall& ball, VertexId v) {
    std::vector<char> seeds(static_cast<std::size_t>(ball.size()), 0);
    seeds[static_cast<std::size_t>(v)] = 1;
    return multi_source_distances(ball, seeds);
}

VertexSet neighborhood(const CayleyBall& ball, const VertexSet& s, int r) {
    VertexSet out = make_empty_set(ball);
    std::vector<int> d = multi_source_distances(ball, s.members);
    for (std::size_t v = 0; v < d.size(); ++v)
        if (d[v] >= 0 && d[v] <= r) out.members[v] = 1;
    out.guard = s.guard.plus(r);
    return out;
}

VertexSet translate_set(const CayleyBall& ball, const VertexSet& s, const Element& g) {
    VertexSet out = make_empty_set(ball);
    for (std::size_t v = 0; v < s.members.size(); ++v) {
        if (!s.members[v]) continue;
        Element p = multiply(ball.spec, g, ball.vertices[v]);
        auto it = ball.index.find(p);
        if (it != ball.index.end()) out.members[static_cast<std::size_t>(it->second)] = 1;
    }
    out.guard = ball.translation_guard(s.guard, g);
    return out;
}

HausdorffResult restricted_hausdorff(const CayleyBall& ball, const VertexSet& a,
                                     const VertexSet& b, int extra_guard) {
    Guard common = guard_max(a.guard, b.guard).plus(extra_guard);
    HausdorffResult res;

    auto one_side = [&](const VertexSet& from, const VertexSet& to) {
        bool any = false;
        std::vector<int> d = multi_source_distances(ball, to.members);
        for (std::size_t v = 0; v < from.members.size(); ++v) {
            if (!from.members[v] || !ball.in_guard(static_cast<VertexId>(v), common)) continue;
            any = true;
            int dv = d[v];
            // A distance is certified only while the whole reach stays inside
            // the ball; beyond the boundary codistance a closer outside
            // partner could exist.
            if (dv < 0) {
                res.exceeds = true;
                res.upper = std::max(res.upper, ball.radius > 0 ? 2 * ball.radius : 1 << 20);
            } else if (dv > ball.boundary_codist(static_cast<VertexId>(v))) {
                res.exceeds = true;
                res.upper = std::max(res.upper, dv);
            } else {
                res.value = std::max(res.value, dv);
                res.upper = std::max(res.upper, dv);
            }
        }
        if (!any)
            throw EmptyAfterGuardError();
    };

    one_side(a, b);
    one_side(b, a);
    return res;
}

bool sets_equal_guarded(const CayleyBall& ball, const VertexSet& a, const VertexSet& b,
                        const Guard& g) {
    for (std::size_t v = 0; v < a.members.size(); ++v) {
        if (!ball.in_guard(static_cast<VertexId>(v), g)) continue;
        if (a.members[v] != b.members[v]) return false;
    }
    return true;
}

bool guarded_part_connected(const CayleyBall& ball, const VertexSet& s, const Guard& g) {
    VertexId start = kNoVertex;
    std::size_t total = 0;
    for (std::size_t v = 0; v < s.members.size(); ++v) {
        if (s.members[v] && ball.in_guard(static_cast<VertexId>(v), g)) {
            if (start == kNoVertex) start = static_cast<VertexId>(v);
            ++total;
        }
    }
    if (total <= 1) return true;
    // Flood fill restricted to members of s (the full set bridges guarded
    // pieces that only connect near the boundary).
    std::vector<char> seen(s.members.size(), 0);
    std::deque<VertexId> q{start};
    seen[static_cast<std::size_t>(start)] = 1;
    std::size_t reached = 0;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        if (ball.in_guard(v, g)) ++reached;
        const std::size_t base = static_cast<std::size_t>(v) * ball.num_letters;
        for (int sl = 0; sl < ball.num_letters; ++sl) {
            VertexId w = ball.adj[base + sl];
            if (w != kNoVertex && s.members[static_cast<std::size_t>(w)] &&
                !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                q.push_back(w);
            }
        }
    }
    return reached == total;
}

void dump_ball_csv(const CayleyBall& ball, std::ostream& out) {
    out << "id,word,dist\n";
    for (int v = 0; v < ball.size(); ++v)
        out << v << ',' << word_to_string(ball.spec, ball.vertices[static_cast<std::size_t>(v)].word)
            << ',' << ball.dist[static_cast<std::size_t>(v)] << '\n';
}

}  // namespace cgeo
