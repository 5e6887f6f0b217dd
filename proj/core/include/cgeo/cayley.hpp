#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cgeo/groups.hpp"

namespace cgeo {

using VertexId = std::int32_t;
constexpr VertexId kNoVertex = -1;

constexpr std::uint64_t kDefaultVertexBudget = 2'000'000;

/**
 * Guard band: the width of the boundary region of a ball whose contents are
 * untrusted for a derived vertex set.  Stored per truncation direction: one
 * component for metric balls, one per factor for box balls over direct
 * products (translations shift factors independently).
 */
struct Guard {
    std::vector<int> comps{0};

    int max() const;
    Guard plus(int r) const;
    bool operator==(const Guard&) const = default;
};

/**
 * The finite ball of a Cayley graph about the identity.
 *
 * Metric balls hold exactly the elements at word distance <= radius.  Box
 * balls (direct products only) hold the elements whose per-factor lengths
 * stay within factor_caps; they keep asymmetric scenarios within budget.
 * Vertex ids are BFS discovery order, letters tried in the fixed order
 * +1, -1, +2, -2, ..., so ids are deterministic.
 */
struct CayleyBall {
    GroupSpec spec;
    int radius = 0;                     // metric radius, or sum of caps for boxes
    std::vector<int> factor_caps;       // empty => metric ball
    int num_letters = 0;                // 2 * generator count
    std::vector<Element> vertices;      // id -> element
    std::unordered_map<Element, VertexId, ElementHash> index;
    std::vector<VertexId> adj;          // V * num_letters; kNoVertex = outside
    std::vector<int> dist;              // BFS distance from the identity
    std::vector<int> flens;             // V * n_factors (box balls only)

    int size() const { return static_cast<int>(vertices.size()); }
    bool is_box() const { return !factor_caps.empty(); }
    int n_factors() const { return is_box() ? static_cast<int>(factor_caps.size()) : 1; }

    Letter letter_at(int slot) const;   // slot in [0, num_letters)
    VertexId neighbor(VertexId v, Letter l) const;
    std::optional<VertexId> find(const Element& e) const;
    /// Some edge slot of v leads outside the ball.
    bool touches_outside(VertexId v) const;
    /// Distance budget left before v falls off the trusted region:
    /// metric: radius - dist, box: min over factors of cap - factor length.
    int boundary_codist(VertexId v) const;
    bool in_guard(VertexId v, const Guard& g) const;

    Guard zero_guard() const { return Guard{std::vector<int>(static_cast<std::size_t>(n_factors()), 0)}; }
    /// Guard growth caused by left-translating a set by g.
    Guard translation_guard(const Guard& base, const Element& g) const;
};

Guard guard_max(const Guard& a, const Guard& b);

CayleyBall build_ball(const GroupSpec& spec, int radius,
                      std::uint64_t budget = kDefaultVertexBudget);
/// Box ball over a DirectProduct: per-factor word-length caps.
CayleyBall build_box_ball(const GroupSpec& spec, const std::vector<int>& caps,
                          std::uint64_t budget = kDefaultVertexBudget);

/// A subset of a ball's vertices with its guard band.
struct VertexSet {
    const CayleyBall* ball = nullptr;
    std::vector<char> members;          // size V
    Guard guard;

    bool contains(VertexId v) const { return members[static_cast<std::size_t>(v)] != 0; }
    int count() const;
    std::vector<VertexId> ids() const;
    bool empty() const { return count() == 0; }
};

VertexSet make_empty_set(const CayleyBall& ball);
VertexSet make_set(const CayleyBall& ball, const std::vector<VertexId>& ids, Guard guard);

/// N_r(S) within the ball (closed neighborhood); guard grows by r.
VertexSet neighborhood(const CayleyBall& ball, const VertexSet& s, int r);

/// {g * s : s in S} intersected with the ball; guard grows by the factor
/// lengths of g.
VertexSet translate_set(const CayleyBall& ball, const VertexSet& s, const Element& g);

/// BFS distances from every vertex of the seed set; -1 where unreachable.
std::vector<int> multi_source_distances(const CayleyBall& ball, const std::vector<char>& seeds);
std::vector<int> distances_from(const CayleyBall& ball, VertexId v);

struct HausdorffResult {
    int value = 0;         // max over certified points (exact there)
    int upper = 0;         // max over all guarded points; distances inside the
                           // ball only overestimate, so this bounds the true
                           // restricted distance from above
    bool exceeds = false;  // some truncated point had no certified partner
};

/**
 * Finite-scale Hausdorff distance: each side truncated to the common guard
 * plus extra_guard, distances measured inside the ball against the
 * untruncated other side.  exceeds is set when a truncated point is
 * unreachable or farther than the trusted reach.
 */
HausdorffResult restricted_hausdorff(const CayleyBall& ball, const VertexSet& a,
                                     const VertexSet& b, int extra_guard);

/// Membership equality restricted to the guarded region.
bool sets_equal_guarded(const CayleyBall& ball, const VertexSet& a, const VertexSet& b,
                        const Guard& g);

/// True when the guarded part of s is connected inside the ball (restricted
/// to s's members).  Empty guarded part counts as connected.
bool guarded_part_connected(const CayleyBall& ball, const VertexSet& s, const Guard& g);

/// CSV dump: id,word,dist.
void dump_ball_csv(const CayleyBall& ball, std::ostream& out);

}  // namespace cgeo
