#pragma once

#include <cstdint>
#include <vector>

#include "cgeo/cayley.hpp"
#include "cgeo/groups.hpp"
#include "cgeo/patterns.hpp"

namespace cgeo {

enum class DepthLabel { Deep, Shallow, Undetermined };

const char* depth_label_name(DepthLabel l);

struct Component {
    std::vector<VertexId> members;  // sorted by id
    DepthLabel label = DepthLabel::Undetermined;
    int depth = 0;                  // max distance of a member to N_r(Y)
    bool touches_boundary = false;

    int size() const { return static_cast<int>(members.size()); }
};

/**
 * Flood-fill decomposition of ball \ N_r(Y) with finite-scale depth labels.
 *
 * Interior components (not touching the ball boundary) are genuine finite
 * components of the infinite complement, hence Shallow.  Boundary-touching
 * components are Deep when depth >= theta, Shallow when 2*depth <= theta,
 * and Undetermined in between: the classifier is depth against the
 * threshold, not boundary contact, because thin strips between parallel
 * removed sets touch the boundary while staying uniformly shallow.
 */
struct ComponentAnalysis {
    int r = 0;
    int theta = 0;
    Guard guard;                    // guard of N_r(Y) used for the analysis
    std::vector<char> removed;      // membership of N_r(Y)
    std::vector<Component> components;
    int deep_count = 0;
    int shallow_count = 0;
    int undetermined_count = 0;
};

/// Default depth threshold: one third of the usable depth range.
int default_theta(const CayleyBall& ball, int r);

/// theta < 0 selects the default.  Throws ComplementEmptyError when N_r(Y)
/// covers the ball.
ComponentAnalysis complement_components(const CayleyBall& ball, const VertexSet& y, int r,
                                        int theta = -1);

/**
 * Largest over guarded p in N_r(Y) of the least m whose open metric-graph
 * ball about p meets every Deep component; equivalently the max over p of
 * the max over Deep components of the vertex distance from p.  Returns -1
 * when there is no Deep component.
 */
int measure_m0(const CayleyBall& ball, const VertexSet& y, int r, int theta = -1);

struct SeparationProfile {
    std::vector<int> radii;
    std::vector<int> deep_counts;
    int n_separating = 0;  // count agreed at the top two radii; 0 otherwise
    bool stable = false;
};

/// Deep counts of ball \ N_r(pattern) across increasing radii.  An empty
/// complement at some radius is recorded as count 0 (finite index).
SeparationProfile n_separating_profile(const GroupSpec& spec, const Pattern& pattern, int r,
                                       const std::vector<int>& radii,
                                       std::uint64_t budget = kDefaultVertexBudget);

struct ModulusSample {
    int r = 0;
    std::vector<int> m0_by_radius;  // -1 where no deep component exists
    std::vector<int> m1_by_radius;  // max Shallow depth; 0 when none
    int m0_hat = -1;                // value at the top radius
    int m1_hat = 0;
    bool failed = false;            // deep-condition failure signal
};

struct ModulusEstimate {
    std::vector<int> radii;
    std::vector<ModulusSample> samples;
};

/**
 * Empirical deep/shallow moduli.  failed is set when the top-radius m0
 * exceeds half the usable range (R - r)/2 or m0 keeps growing across every
 * sampled radius: at finite scale that is the signature of a set whose deep
 * components recede with the horizon.
 */
ModulusEstimate estimate_moduli(const GroupSpec& spec, const Pattern& pattern,
                                const std::vector<int>& radii, const std::vector<int>& r_list,
                                std::uint64_t budget = kDefaultVertexBudget);

struct NoncrossingEntry {
    Element g;        // translating element (identity for explicit families)
    int family_index = -1;  // which family member was tested (-1 for translates)
    int k_min = 0;    // least k with containment in N_k of one Deep component
    bool fail = false;
};

struct NoncrossingReport {
    std::vector<NoncrossingEntry> entries;
    int tested = 0;
    int max_finite_k = 0;
    bool pass = false;  // no Fail and max finite k_min <= k_max
};

/**
 * Tests every translate g*Y with |g| <= T.  A translate whose guarded part
 * lies inside Y itself is trivially noncrossing (k_min = 0); otherwise
 * k_min is the least k with the guarded translate inside N_k of a single
 * Deep component of ball \ Y, or Fail beyond k_max.
 */
NoncrossingReport noncrossing_check(const CayleyBall& ball, const Pattern& pattern, int T,
                                    int k_max, int theta = -1);

/// Same test for an explicit finite family: every member against the Deep
/// components of every other member's complement.
NoncrossingReport noncrossing_family(const CayleyBall& ball, const std::vector<Pattern>& family,
                                     int k_max, int theta = -1);

}  // namespace cgeo
