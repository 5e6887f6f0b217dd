#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgeo/cayley.hpp"
#include "cgeo/groups.hpp"
#include "cgeo/patterns.hpp"

namespace cgeo {

/// Per-analysis knobs.  Every field has a usable default; analyses that need
/// a subgroup fall back to the scenario pattern's generators when it is an
/// orbit pattern.
struct AnalysisParams {
    int r = 0;              // neighborhood width (components, moduli, interlaced)
    int theta = -1;         // depth threshold; -1 = default
    int r_max = 4;          // sweep width (coends, connectedness)
    int k = 1;              // detect / almost_invariant
    int t_max = 3;          // translate radius (noncrossing, interlaced)
    int k_max = 4;          // noncrossing tolerance
    int n_max = -1;         // growth range; -1 = top radius
    int chosen_component = 0;
    int poly_degree = -1;   // domination reference exponent; -1 = fitted
    int lambda_cap = 4;
    int c_cap = 4;
    int n_range = -1;       // domination range; -1 = top radius
    std::vector<int> r_list{0};       // moduli neighborhood widths
    std::vector<Word> subgroup;       // subgroup generators for probes
    Word g;                           // commensurizer translate
    std::vector<Pattern> family;      // explicit noncrossing family
};

struct ScenarioConfig {
    GroupSpec group;
    Pattern pattern;
    std::vector<int> radii;                     // metric radii, increasing
    std::vector<std::vector<int>> factor_caps;  // box alternative (per scale)
    std::vector<std::string> analyses;
    AnalysisParams params;
    std::string output_dir = ".";
    std::uint64_t budget = kDefaultVertexBudget;
    std::uint64_t seed = 0;
};

/// Parses a version-1 JSON config.  Throws ConfigError naming the offending
/// field.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

std::vector<std::string> known_families();
std::vector<std::string> known_analyses();

/**
 * Runs every requested analysis and writes report.json plus components.csv /
 * growth.csv / coends.csv / detection.json as applicable into output_dir
 * (atomic-rename writes, byte-deterministic).  Returns 0 on success, 2 when
 * a detect analysis ends in a named precondition-failure status.  Hard
 * errors propagate as exceptions.
 */
int run_scenario(const ScenarioConfig& config);

}  // namespace cgeo
