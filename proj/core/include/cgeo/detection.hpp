#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgeo/cayley.hpp"
#include "cgeo/groups.hpp"
#include "cgeo/patterns.hpp"
#include "cgeo/separation.hpp"

namespace cgeo {

/// All translates g*Y that meet the closed ball of radius k about the
/// identity, deduplicated as vertex sets.
struct TranslateFamily {
    int k = 0;
    std::vector<Element> reps;        // translating elements, discovery order
    std::vector<VertexSet> translates;
};

TranslateFamily collect_translates(const CayleyBall& ball, const VertexSet& y, int k);

struct ClusterResult {
    std::vector<int> cluster_of;      // family index -> cluster id (0-based)
    int cluster_count = 0;
    int mu = 0;                       // max certified intra-cluster distance + 1
    bool uncertified = false;         // some near pair's distance exceeded the guard
};

/// Single-linkage clustering of the family under restricted Hausdorff
/// distance with the given threshold.
ClusterResult cluster_translates(const CayleyBall& ball, const TranslateFamily& family,
                                 int threshold);

enum class DetectionStatus {
    Detected,
    Not3Separating,
    DeepConditionViolated,
    NoncrossingViolated,
    Unstable,
};

const char* detection_status_name(DetectionStatus s);

struct DetectParams {
    int k = 1;
    int radius = 0;                   // metric radius (ignored when caps given)
    std::vector<int> factor_caps;     // box ball for direct products
    int theta = -1;                   // depth threshold; -1 = default
    int t_max = 3;                    // noncrossing translate radius
    int k_max = 4;                    // noncrossing tolerance
    int threshold = -1;               // cluster threshold; -1 = derived from moduli
    std::uint64_t budget = kDefaultVertexBudget;
};

struct DetectionCertificate {
    DetectionStatus status = DetectionStatus::Unstable;
    std::string detail;

    // precondition measurements at the main and enlarged ball
    std::vector<int> deep_counts;     // complement of Y, r = 0, per ball
    std::vector<int> m0_values;
    std::vector<int> m1_values;
    bool noncrossing_pass = false;

    // construction
    int threshold_x1 = 0;
    bool threshold_clamped = false;
    int cluster_count = 0;
    int cluster_count_enlarged = 0;
    int mu = 0;
    int mu_enlarged = 0;
    int family_size = 0;
    int class_count = 0;
    int r_rep = 0;
    std::vector<Element> generators;  // sorted, deduplicated, non-identity
    bool trivial_subgroup = false;    // no non-identity generator emitted

    int residual = -1;
    bool residual_exceeds = false;
    int residual_bound = 0;           // max(r_rep + 1, 2*mu)
    int orbit_size = 0;
};

/// Runs the full pipeline: precondition checks in the fixed order
/// deep -> shallow -> 3-separating -> noncrossing, then translate
/// collection, clustering, component matching, generator extraction and
/// verification, with a stability re-run on a ball enlarged by 2.
DetectionCertificate detect_subgroup(const GroupSpec& spec, const Pattern& pattern,
                                     const DetectParams& params);

struct VerifyResult {
    int residual = 0;
    bool exceeds = false;
    int orbit_size = 0;
};

/// BFS the subgroup generated by the elements inside the ball and measure
/// the restricted Hausdorff distance to Y.
VerifyResult verify_detection(const CayleyBall& ball, const VertexSet& y,
                              const std::vector<Element>& generators);

}  // namespace cgeo
