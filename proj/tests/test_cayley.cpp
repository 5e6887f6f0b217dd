#include <algorithm>
#include <sstream>
#include <vector>

#include "cgeo/cayley.hpp"
#include "cgeo/errors.hpp"
#include "cgeo/groups.hpp"
#include "doctest.h"

using namespace cgeo;

namespace {

VertexSet axis_set(const CayleyBall& ball, Letter l) {
    // The cyclic subgroup <l> realized inside the ball.
    VertexSet s = make_empty_set(ball);
    Element p = normalize(ball.spec, {});
    while (true) {
        auto v = ball.find(p);
        if (!v) break;
        s.members[static_cast<std::size_t>(*v)] = 1;
        p = multiply(ball.spec, p, Element{{l}});
    }
    p = normalize(ball.spec, {Letter(-l)});
    while (true) {
        auto v = ball.find(p);
        if (!v) break;
        s.members[static_cast<std::size_t>(*v)] = 1;
        p = multiply(ball.spec, p, Element{{Letter(-l)}});
    }
    return s;
}

}  // namespace

TEST_CASE("ball sizes match closed-form counts") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    for (int n : {0, 1, 2, 5, 10}) {
        CayleyBall b = build_ball(z2, n);
        CHECK(b.size() == 2 * n * n + 2 * n + 1);
    }
    GroupSpec f2 = GroupSpec::free(2);
    int expect = 1;
    for (int n : {0, 1, 2, 3, 6}) {
        CayleyBall b = build_ball(f2, n);
        // |B_n| = 2*3^n - 1
        expect = 1;
        for (int i = 0; i < n; ++i) expect *= 3;
        CHECK(b.size() == 2 * expect - 1);
    }
}

TEST_CASE("BFS distance equals word length for geodesic families") {
    for (const GroupSpec& g : {GroupSpec::free_abelian(2), GroupSpec::free(2),
                               GroupSpec::free_product_of_cyclics({2, 3})}) {
        CayleyBall b = build_ball(g, 5);
        for (int v = 0; v < b.size(); ++v)
            CHECK(b.dist[static_cast<std::size_t>(v)] ==
                  b.vertices[static_cast<std::size_t>(v)].length());
    }
}

TEST_CASE("vertex ids are deterministic BFS discovery order") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall a = build_ball(z2, 4);
    CayleyBall b = build_ball(z2, 4);
    CHECK(a.vertices == b.vertices);
    // dist is non-decreasing in id.
    CHECK(std::is_sorted(a.dist.begin(), a.dist.end()));
    // id 0 is the identity, ids 1..4 are the one-letter elements in slot order.
    CHECK(a.vertices[0].is_identity());
    CHECK(a.vertices[1].word == Word{1});
    CHECK(a.vertices[2].word == Word{-1});
    CHECK(a.vertices[3].word == Word{2});
    CHECK(a.vertices[4].word == Word{-2});
}

TEST_CASE("adjacency is a correct involution-free edge table") {
    GroupSpec f2 = GroupSpec::free(2);
    CayleyBall b = build_ball(f2, 4);
    for (int v = 0; v < b.size(); ++v) {
        for (int s = 0; s < b.num_letters; ++s) {
            Letter l = b.letter_at(s);
            VertexId w = b.neighbor(v, l);
            if (w == kNoVertex) continue;
            // Edge labels invert along the reverse edge.
            CHECK(b.neighbor(w, -l) == v);
            CHECK(elements_equal(f2, b.vertices[static_cast<std::size_t>(w)],
                                 multiply(f2, b.vertices[static_cast<std::size_t>(v)],
                                          Element{{l}})));
        }
    }
    // Interior vertices have full degree; radius-4 vertices touch outside.
    for (int v = 0; v < b.size(); ++v)
        CHECK(b.touches_outside(v) == (b.dist[static_cast<std::size_t>(v)] == 4));
}

TEST_CASE("vertex budget aborts oversized builds") {
    GroupSpec f2 = GroupSpec::free(2);
    CHECK_THROWS_AS(build_ball(f2, 15, 10'000), BudgetExceededError);
    try {
        build_ball(f2, 15, 10'000);
    } catch (const BudgetExceededError& e) {
        CHECK(e.projected > 10'000);
        CHECK(e.budget == 10'000);
    }
}

TEST_CASE("box balls cap factors independently") {
    GroupSpec g = GroupSpec::direct_product({GroupSpec::free(2), GroupSpec::free_abelian(1)});
    CayleyBall b = build_box_ball(g, {2, 5});
    // |B^F2_2| = 17, |B^Z_5| = 11.
    CHECK(b.size() == 17 * 11);
    for (int v = 0; v < b.size(); ++v) {
        auto fl = factor_lengths(g, b.vertices[static_cast<std::size_t>(v)]);
        CHECK(fl[0] <= 2);
        CHECK(fl[1] <= 5);
    }
    // boundary_codist is the per-factor slack minimum.
    auto v = b.find(normalize(g, {1, 3, 3}));  // (a, z^2): slack min(1, 3)
    REQUIRE(v);
    CHECK(b.boundary_codist(*v) == 1);
    CHECK_THROWS_AS(build_box_ball(GroupSpec::free(2), {2, 2}), ConfigError);
}

TEST_CASE("neighborhood is the closed metric neighborhood") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall b = build_ball(z2, 6);
    VertexSet axis = axis_set(b, 1);
    CHECK(axis.count() == 13);  // x^-6 .. x^6
    VertexSet n2 = neighborhood(b, axis, 2);
    // Every vertex with |y| <= 2 belongs; check counts: for |y|=k the x-range
    // shrinks only by the ball, so count = sum over k in [-2,2] of row sizes.
    int expect = 0;
    for (int v = 0; v < b.size(); ++v) {
        Element e = b.vertices[static_cast<std::size_t>(v)];
        int y = 0;
        for (Letter l : e.word)
            if (std::abs(l) == 2) y += l > 0 ? 1 : -1;
        if (std::abs(y) <= 2) ++expect;
    }
    CHECK(n2.count() == expect);
    CHECK(n2.guard.comps[0] == 2);
    // r = 0 is the set itself.
    CHECK(neighborhood(b, axis, 0).members == axis.members);
}

TEST_CASE("translation relocates the set and grows the guard") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall b = build_ball(z2, 6);
    VertexSet axis = axis_set(b, 1);
    Element g = normalize(z2, {2, 2, 2});  // y^3
    VertexSet t = translate_set(b, axis, g);
    CHECK(t.guard.comps[0] == 3);
    for (VertexId v : t.ids()) {
        Element e = b.vertices[static_cast<std::size_t>(v)];
        int y = 0;
        for (Letter l : e.word)
            if (std::abs(l) == 2) y += l > 0 ? 1 : -1;
        CHECK(y == 3);
    }
    // |x| <= 3 on the translated line survives: x^k y^3 has length |k| + 3 <= 6.
    CHECK(t.count() == 7);
}

TEST_CASE("restricted Hausdorff distance between parallel lines") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall b = build_ball(z2, 10);
    VertexSet axis = axis_set(b, 1);
    VertexSet shifted = translate_set(b, axis, normalize(z2, {2, 2, 2}));
    HausdorffResult h = restricted_hausdorff(b, axis, shifted, 0);
    CHECK(h.value == 3);
    CHECK_FALSE(h.exceeds);
    // Symmetry.
    HausdorffResult h2 = restricted_hausdorff(b, shifted, axis, 0);
    CHECK(h2.value == 3);

    // Perpendicular lines are far apart at the boundary: truncation flags it.
    VertexSet yaxis = axis_set(b, 2);
    HausdorffResult hp = restricted_hausdorff(b, axis, yaxis, 0);
    CHECK(hp.exceeds);

    // Degenerate guard leaves nothing: error, not a bogus zero.
    VertexSet far = translate_set(b, axis, normalize(z2, Word(9, 2)));
    CHECK_THROWS_AS(restricted_hausdorff(b, axis, far, 2), EmptyAfterGuardError);
}

TEST_CASE("guarded set equality and connectivity") {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall b = build_ball(z2, 6);
    VertexSet axis = axis_set(b, 1);
    VertexSet axis2 = axis_set(b, 1);
    // Flip a boundary vertex: equal under guard 1, unequal under guard 0.
    auto tip = b.find(normalize(z2, Word(6, 1)));
    REQUIRE(tip);
    axis2.members[static_cast<std::size_t>(*tip)] = 0;
    CHECK(sets_equal_guarded(b, axis, axis2, Guard{{1}}));
    CHECK_FALSE(sets_equal_guarded(b, axis, axis2, Guard{{0}}));

    CHECK(guarded_part_connected(b, axis, Guard{{0}}));
    // Two parallel lines are disconnected as a subset.
    VertexSet two = axis;
    for (VertexId v : translate_set(b, axis, normalize(z2, {2, 2})).ids())
        two.members[static_cast<std::size_t>(v)] = 1;
    CHECK_FALSE(guarded_part_connected(b, two, Guard{{0}}));
}

TEST_CASE("multi-source distances agree with per-vertex BFS") {
    GroupSpec f2 = GroupSpec::free(2);
    CayleyBall b = build_ball(f2, 4);
    VertexSet axis = axis_set(b, 1);
    auto d = multi_source_distances(b, axis.members);
    for (int v = 0; v < b.size(); ++v) {
        int best = -1;
        for (VertexId s : axis.ids()) {
            auto ds = distances_from(b, s);
            int dv = ds[static_cast<std::size_t>(v)];
            if (dv >= 0 && (best < 0 || dv < best)) best = dv;
        }
        CHECK(d[static_cast<std::size_t>(v)] == best);
    }
}

TEST_CASE("csv dump is stable") {
    GroupSpec z = GroupSpec::free_abelian(1);
    CayleyBall b = build_ball(z, 2);
    std::ostringstream out;
    dump_ball_csv(b, out);
    CHECK(out.str() == "id,word,dist\n0,e,0\n1,x,1\n2,x',1\n3,x x,2\n4,x' x',2\n");
}
