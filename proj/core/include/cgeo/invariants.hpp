#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgeo/cayley.hpp"
#include "cgeo/groups.hpp"
#include "cgeo/patterns.hpp"
#include "cgeo/separation.hpp"

namespace cgeo {

/**
 * Finite-scale coend estimate: deep component counts of ball \ N_r(orbit)
 * for r = 0..r_max.  The count at any r is a certified lower bound for the
 * stable number of deep components; unbounded is flagged when the counts
 * strictly increase across every sampled r.
 */
struct CoendEstimate {
    std::vector<int> r_values;
    std::vector<int> deep_counts;
    int lower_bound = 0;
    bool unbounded = false;
};

CoendEstimate coend_lower_bound(const GroupSpec& spec, const std::vector<Word>& subgroup_gens,
                                int r_max, int radius,
                                std::uint64_t budget = kDefaultVertexBudget);

/// beta(0..n_max): cumulative closed-ball vertex counts.
using GrowthSeries = std::vector<long long>;

GrowthSeries growth_series(const GroupSpec& spec, int n_max,
                           std::uint64_t budget = kDefaultVertexBudget);

/// Growth of a subset under the ambient metric, from a basepoint inside it.
GrowthSeries pattern_growth(const CayleyBall& ball, const VertexSet& s, VertexId basepoint,
                            int n_max);

struct DominationResult {
    bool dominated = false;
    int lambda = 0;  // witness, lexicographically first (lambda, c)
    int c = 0;
};

/**
 * Weak domination beta(n) <= lambda * beta2(lambda*n + c) + c for all n in
 * [0, n_range], searched over the integer grid lambda in [1, lambda_cap],
 * c in [0, c_cap].  Throws RangeTooShortError when beta2 does not cover
 * lambda_cap * n_range + c_cap.
 */
DominationResult weakly_dominates(const GrowthSeries& beta, const GrowthSeries& beta2,
                                  int lambda_cap, int c_cap, int n_range);

struct GrowthVerdict {
    double fitted_exponent = 0.0;
    bool polynomial = false;
    int degree = 0;                // least verified dominating exponent
    std::string label;             // non-empty only when polynomial
};

/// Fits the exponent from the top of the series and verifies domination by
/// n -> (n+1)^a; a polynomial verdict carries the (label-only) consequence
/// for the group's structure.
GrowthVerdict polynomial_growth_verdict(const GrowthSeries& beta);

struct CoarseConnectedness {
    bool connected = false;
    int r = -1;  // least r with N_r(S) connected in the guarded region
};

CoarseConnectedness coarse_zero_connected(const CayleyBall& ball, const VertexSet& s, int r_max);

struct DistortionSample {
    int intrinsic = 0;
    int min_ambient = 0;
    int max_ambient = 0;
};

struct DistortionProfile {
    std::vector<DistortionSample> samples;
    double lambda_up = 0.0, c_up = 0.0;  // affine fit of the max envelope
    double lambda_lo = 0.0, c_lo = 0.0;  // affine fit of the min envelope
    double lambda_fit = 0.0;             // least-squares slope of the scatter
};

/**
 * Subgroup distortion: intrinsic = word length over the given subgroup
 * generators (BFS in the subgroup), ambient = normal-form length in the
 * group.  Exploration stops at ambient length > radius; enumeration is
 * capped at sample_count subgroup elements.
 */
DistortionProfile distortion_profile(const GroupSpec& spec, const std::vector<Word>& subgroup_gens,
                                     int radius, int sample_count = 100000);

/// Distortion of the rotate-and-round map on FreeAbelian(2): sampled vertex
/// pairs, intrinsic = distance between sources, ambient = distance between
/// images.  Deterministic for a fixed seed.
DistortionProfile map_distortion_profile(const CayleyBall& ball, double angle, int sample_count,
                                         std::uint64_t seed);

struct CommensurizerProbe {
    std::vector<int> radii;
    std::vector<int> values;        // restricted Hausdorff d(H, gH) per radius
    std::vector<char> exceeded;     // per-radius exceeds flag
    std::string verdict;            // Stable | Growing | Inconclusive
};

CommensurizerProbe commensurizer_probe(const GroupSpec& spec,
                                       const std::vector<Word>& subgroup_gens, const Word& g,
                                       const std::vector<int>& radii,
                                       std::uint64_t budget = kDefaultVertexBudget);

struct InterlacedProbe {
    int deep_count = 0;
    int cosets_tested = 0;
    std::vector<std::pair<int, int>> edges;  // chain graph on deep components
    bool interlaced = false;                 // chain graph connected
};

/// Chain graph: one node per Deep component of ball \ N_r(H), an edge when
/// some coset gH (|g| <= T) meets both in the guarded region.
InterlacedProbe interlaced_probe(const GroupSpec& spec, const std::vector<Word>& subgroup_gens,
                                 int r, int radius, int t_max,
                                 std::uint64_t budget = kDefaultVertexBudget);

struct AlmostInvariantResult {
    std::vector<char> b;           // membership of B among determined vertices
    std::vector<char> determined;  // vertices whose membership is certified
    int coboundary_radius = 0;     // least rho with delta-B inside N_rho(N_r(H))
    bool h_invariant = false;      // h*B = B for the subgroup generators
    int deep_count = 0;
};

/**
 * The almost-invariant set of a chosen deep component U: B collects the g
 * whose translated orbit g*H lies in N_k(U), tested on the certifiable part
 * of each translate.  Verifies the coboundary bound (<= k+1 by construction)
 * and H-invariance on the determined region.
 */
AlmostInvariantResult almost_invariant_set(const GroupSpec& spec,
                                           const std::vector<Word>& subgroup_gens, int r,
                                           int chosen_component, int k, int radius,
                                           std::uint64_t budget = kDefaultVertexBudget);

}  // namespace cgeo
