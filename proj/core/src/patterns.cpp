#include "cgeo/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "cgeo/errors.hpp"

namespace cgeo {

double slope_value(SlopeTag tag) {
    switch (tag) {
        case SlopeTag::Golden:
            return (1.0 + std::sqrt(5.0)) / 2.0;
        case SlopeTag::Sqrt2:
            return std::sqrt(2.0);
        case SlopeTag::Sqrt3:
            return std::sqrt(3.0);
        case SlopeTag::InvSqrt3:
            return 1.0 / std::sqrt(3.0);
        case SlopeTag::None:
            break;
    }
    throw IncompatiblePatternError("no slope value for tag None");
}

Pattern Pattern::subgroup_orbit(std::vector<Word> gens) {
    Pattern p;
    p.kind = PatternKind::SubgroupOrbit;
    p.generators = std::move(gens);
    return p;
}

Pattern Pattern::coset(Word rep, std::vector<Word> gens) {
    Pattern p;
    p.kind = PatternKind::Coset;
    p.base = std::move(rep);
    p.generators = std::move(gens);
    return p;
}

Pattern Pattern::digitized_line(int dx, int dy) {
    Pattern p;
    p.kind = PatternKind::DigitizedLine;
    p.dir_x = dx;
    p.dir_y = dy;
    return p;
}

Pattern Pattern::digitized_line(SlopeTag tag) {
    Pattern p;
    p.kind = PatternKind::DigitizedLine;
    p.slope = tag;
    return p;
}

Pattern Pattern::geodesic_word_line(Word period) {
    Pattern p;
    p.kind = PatternKind::GeodesicWordLine;
    p.period = std::move(period);
    return p;
}

Pattern Pattern::thue_morse_line() {
    Pattern p;
    p.kind = PatternKind::GeodesicWordLine;
    p.thue_morse = true;
    return p;
}

Pattern Pattern::fiber(int factor_index, Word base) {
    Pattern p;
    p.kind = PatternKind::Fiber;
    p.factor_index = factor_index;
    p.base = std::move(base);
    return p;
}

Pattern Pattern::neighborhood_of(Pattern inner, int r) {
    Pattern p;
    p.kind = PatternKind::Neighborhood;
    p.r = r;
    p.inner.push_back(std::move(inner));
    return p;
}

Pattern Pattern::union_of(std::vector<Pattern> parts) {
    Pattern p;
    p.kind = PatternKind::Union;
    p.inner = std::move(parts);
    return p;
}

Pattern Pattern::qi_image(double angle, Pattern inner) {
    Pattern p;
    p.kind = PatternKind::QiImage;
    p.angle = angle;
    p.inner.push_back(std::move(inner));
    return p;
}

Letter thue_morse_letter(long long n) {
    return static_cast<Letter>(1 + (std::popcount(static_cast<unsigned long long>(n)) & 1));
}

std::pair<long long, long long> plane_coords(const Element& e) {
    long long x = 0, y = 0;
    for (Letter l : e.word) {
        if (std::abs(l) == 1)
            x += l > 0 ? 1 : -1;
        else
            y += l > 0 ? 1 : -1;
    }
    return {x, y};
}

namespace {

// BFS over the subgroup generated by gens; membership of rep*h is tested in
// the ball, and exploration is pruned a little past the ball so that orbit
// points reachable only through just-outside elements are still found.
VertexSet orbit_set(const CayleyBall& ball, const Element& rep, const std::vector<Word>& raw_gens) {
    std::vector<Element> gens;
    int max_len = 1;
    for (const Word& w : raw_gens) {
        Element g = normalize(ball.spec, w);
        if (g.is_identity())
            throw IncompatiblePatternError("subgroup generator normalizes to the identity");
        max_len = std::max(max_len, g.length());
        Element gi = inverse(ball.spec, g);
        gens.push_back(std::move(g));
        gens.push_back(std::move(gi));
    }
    const int slack = 2 * max_len;
    auto within_reach = [&](const Element& e) {
        if (!ball.is_box()) return e.length() <= ball.radius + slack;
        std::vector<int> fl = factor_lengths(ball.spec, e);
        for (std::size_t i = 0; i < fl.size(); ++i)
            if (fl[i] > ball.factor_caps[i] + slack) return false;
        return true;
    };

    VertexSet out = make_empty_set(ball);
    std::unordered_set<Element, ElementHash> seen;
    std::deque<Element> todo;
    Element start = normalize(ball.spec, rep.word);
    seen.insert(start);
    todo.push_back(start);
    while (!todo.empty()) {
        Element h = todo.front();
        todo.pop_front();
        if (auto v = ball.find(h)) out.members[static_cast<std::size_t>(*v)] = 1;
        for (const Element& g : gens) {
            Element n = multiply(ball.spec, h, g);
            if (!within_reach(n)) continue;
            if (seen.insert(n).second) todo.push_back(n);
        }
    }
    return out;
}

VertexSet digitized_line_set(const Pattern& p, const CayleyBall& ball) {
    if (ball.spec.family != Family::FreeAbelian || ball.spec.rank != 2)
        throw IncompatiblePatternError("digitized lines require the rank-2 free abelian group");
    VertexSet out = make_empty_set(ball);
    if (p.slope == SlopeTag::None) {
        if (p.dir_x == 0 && p.dir_y == 0)
            throw IncompatiblePatternError("digitized line direction is zero");
        if (std::gcd(std::abs(p.dir_x), std::abs(p.dir_y)) != 1)
            throw IncompatiblePatternError("digitized line direction is not primitive");
        for (long long t = -(2LL * ball.radius + 1); t <= 2LL * ball.radius + 1; ++t) {
            Word w;
            long long x = t * p.dir_x, y = t * p.dir_y;
            for (long long i = 0; i < std::llabs(x); ++i) w.push_back(x > 0 ? 1 : -1);
            for (long long i = 0; i < std::llabs(y); ++i) w.push_back(y > 0 ? 2 : -2);
            if (auto v = ball.find(normalize(ball.spec, w)))
                out.members[static_cast<std::size_t>(*v)] = 1;
        }
        return out;
    }
    const double alpha = slope_value(p.slope);
    for (long long n = -(ball.radius + 1); n <= ball.radius + 1; ++n) {
        long long y = static_cast<long long>(std::floor(alpha * static_cast<double>(n)));
        Word w;
        for (long long i = 0; i < std::llabs(n); ++i) w.push_back(n > 0 ? 1 : -1);
        for (long long i = 0; i < std::llabs(y); ++i) w.push_back(y > 0 ? 2 : -2);
        if (auto v = ball.find(normalize(ball.spec, w)))
            out.members[static_cast<std::size_t>(*v)] = 1;
    }
    return out;
}

VertexSet word_line_set(const Pattern& p, const CayleyBall& ball) {
    if (ball.spec.family != Family::Free)
        throw IncompatiblePatternError("geodesic word lines require a free group");
    auto label = [&](long long n) -> Letter {
        if (p.thue_morse) return thue_morse_letter(n);
        return p.period[static_cast<std::size_t>(n % static_cast<long long>(p.period.size()))];
    };
    if (!p.thue_morse) {
        if (p.period.empty())
            throw IncompatiblePatternError("geodesic word line needs a non-empty period");
        for (Letter l : p.period)
            if (l <= 0 || l > ball.spec.generator_count())
                throw IncompatiblePatternError("geodesic word line labels must be positive letters");
        for (std::size_t i = 0; i + 1 < p.period.size(); ++i)
            if (p.period[i] == -p.period[i + 1])
                throw IncompatiblePatternError("geodesic word line period is not reduced");
    }
    VertexSet out = make_empty_set(ball);
    // Positive ray: prefixes of the label sequence.  Negative ray: the same
    // labels negated; the concatenation through the identity is freely
    // reduced because all labels are positive generators.
    Word w;
    for (long long n = 0; n <= ball.radius; ++n) {
        if (auto v = ball.find(Element{w})) out.members[static_cast<std::size_t>(*v)] = 1;
        w.push_back(label(n));
    }
    w.clear();
    for (long long n = 0; n <= ball.radius; ++n) {
        if (n > 0) {
            if (auto v = ball.find(Element{w})) out.members[static_cast<std::size_t>(*v)] = 1;
        }
        w.push_back(-label(n));
    }
    return out;
}

VertexSet fiber_set(const Pattern& p, const CayleyBall& ball) {
    if (ball.spec.family != Family::DirectProduct)
        throw IncompatiblePatternError("fibers require a direct product group");
    const int nf = static_cast<int>(ball.spec.factors.size());
    if (p.factor_index < 0 || p.factor_index >= nf)
        throw IncompatiblePatternError("fiber factor index out of range");
    Element base = normalize(ball.spec, p.base);
    auto base_parts = split_by_factor(ball.spec, base.word);
    VertexSet out = make_empty_set(ball);
    for (int v = 0; v < ball.size(); ++v) {
        auto parts = split_by_factor(ball.spec, ball.vertices[static_cast<std::size_t>(v)].word);
        bool ok = true;
        for (int f = 0; f < nf && ok; ++f)
            if (f != p.factor_index && parts[static_cast<std::size_t>(f)] != base_parts[static_cast<std::size_t>(f)])
                ok = false;
        if (ok) out.members[static_cast<std::size_t>(v)] = 1;
    }
    return out;
}

}  // namespace

VertexSet qi_rotate(double angle, const Pattern& inner, const CayleyBall& ball) {
    if (ball.spec.family != Family::FreeAbelian || ball.spec.rank != 2)
        throw IncompatiblePatternError("qi_rotate requires the rank-2 free abelian group");
    VertexSet src = realize(inner, ball);
    VertexSet out = make_empty_set(ball);
    const double c = std::cos(angle), s = std::sin(angle);
    auto round_half_down = [](double t) {
        // nearest integer, ties toward the smaller value
        return static_cast<long long>(std::ceil(t - 0.5));
    };
    for (VertexId v : src.ids()) {
        auto [x, y] = plane_coords(ball.vertices[static_cast<std::size_t>(v)]);
        double rx = c * static_cast<double>(x) - s * static_cast<double>(y);
        double ry = s * static_cast<double>(x) + c * static_cast<double>(y);
        long long ix = round_half_down(rx), iy = round_half_down(ry);
        Word w;
        for (long long i = 0; i < std::llabs(ix); ++i) w.push_back(ix > 0 ? 1 : -1);
        for (long long i = 0; i < std::llabs(iy); ++i) w.push_back(iy > 0 ? 2 : -2);
        if (auto id = ball.find(normalize(ball.spec, w)))
            out.members[static_cast<std::size_t>(*id)] = 1;
    }
    out.guard = src.guard.plus(2);
    return out;
}

VertexSet realize(const Pattern& pattern, const CayleyBall& ball) {
    switch (pattern.kind) {
        case PatternKind::SubgroupOrbit:
            return orbit_set(ball, normalize(ball.spec, {}), pattern.generators);
        case PatternKind::Coset:
            return orbit_set(ball, normalize(ball.spec, pattern.base), pattern.generators);
        case PatternKind::DigitizedLine:
            return digitized_line_set(pattern, ball);
        case PatternKind::GeodesicWordLine:
            return word_line_set(pattern, ball);
        case PatternKind::Fiber:
            return fiber_set(pattern, ball);
        case PatternKind::Neighborhood: {
            if (pattern.inner.size() != 1)
                throw IncompatiblePatternError("neighborhood needs exactly one inner pattern");
            return neighborhood(ball, realize(pattern.inner[0], ball), pattern.r);
        }
        case PatternKind::Union: {
            if (pattern.inner.empty())
                throw IncompatiblePatternError("union needs at least one inner pattern");
            VertexSet out = realize(pattern.inner[0], ball);
            for (std::size_t i = 1; i < pattern.inner.size(); ++i) {
                VertexSet part = realize(pattern.inner[i], ball);
                for (std::size_t v = 0; v < out.members.size(); ++v)
                    out.members[v] = out.members[v] || part.members[v];
                out.guard = guard_max(out.guard, part.guard);
            }
            return out;
        }
        case PatternKind::QiImage: {
            if (pattern.inner.size() != 1)
                throw IncompatiblePatternError("qi image needs exactly one inner pattern");
            return qi_rotate(pattern.angle, pattern.inner[0], ball);
        }
    }
    throw IncompatiblePatternError("unknown pattern kind");
}

}  // namespace cgeo
