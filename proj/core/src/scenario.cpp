#include "cgeo/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "cgeo/detection.hpp"
#include "cgeo/errors.hpp"
#include "cgeo/invariants.hpp"
#include "cgeo/separation.hpp"
#include "json.hpp"

namespace cgeo {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- parsing

[[noreturn]] void bad(const std::string& field, const std::string& detail) {
    throw ConfigError(field, detail);
}

json need(const json& j, const std::string& field) {
    if (!j.contains(field)) bad(field, "missing required field");
    return j.at(field);
}

int need_int(const json& j, const std::string& field) {
    json v = need(j, field);
    if (!v.is_number_integer()) bad(field, "expected an integer");
    return v.get<int>();
}

Word parse_word(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of signed generator indices");
    Word w;
    for (const auto& x : j) {
        if (!x.is_number_integer()) bad(field, "expected an array of signed generator indices");
        w.push_back(x.get<Letter>());
    }
    return w;
}

std::vector<Word> parse_words(const json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of words");
    std::vector<Word> out;
    for (const auto& x : j) out.push_back(parse_word(x, field));
    return out;
}

GroupSpec parse_group(const json& j, const std::string& field) {
    if (!j.is_object()) bad(field, "expected an object with a \"family\" tag");
    std::string fam = need(j, "family").get<std::string>();
    GroupSpec s;
    if (fam == "free_abelian") {
        s = GroupSpec::free_abelian(need_int(j, "rank"));
    } else if (fam == "free") {
        s = GroupSpec::free(need_int(j, "rank"));
    } else if (fam == "surface") {
        s = GroupSpec::surface(need_int(j, "genus"));
    } else if (fam == "free_product_of_cyclics") {
        std::vector<int> orders;
        for (const auto& x : need(j, "orders")) orders.push_back(x.get<int>());
        s = GroupSpec::free_product_of_cyclics(orders);
    } else if (fam == "direct_product") {
        std::vector<GroupSpec> factors;
        for (const auto& x : need(j, "factors")) factors.push_back(parse_group(x, "factors"));
        s = GroupSpec::direct_product(std::move(factors));
    } else {
        bad(field, "unknown family \"" + fam + "\"");
    }
    s.validate();
    return s;
}

SlopeTag parse_slope(const std::string& s) {
    if (s == "golden") return SlopeTag::Golden;
    if (s == "sqrt2") return SlopeTag::Sqrt2;
    if (s == "sqrt3") return SlopeTag::Sqrt3;
    if (s == "inv_sqrt3") return SlopeTag::InvSqrt3;
    bad("pattern.slope", "unknown slope \"" + s + "\"");
}

Pattern parse_pattern(const json& j, const std::string& field) {
    if (!j.is_object()) bad(field, "expected an object with a \"kind\" tag");
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "subgroup_orbit") return Pattern::subgroup_orbit(parse_words(need(j, "generators"), field + ".generators"));
    if (kind == "coset")
        return Pattern::coset(parse_word(need(j, "rep"), field + ".rep"),
                              parse_words(need(j, "generators"), field + ".generators"));
    if (kind == "digitized_line") {
        if (j.contains("slope")) return Pattern::digitized_line(parse_slope(j.at("slope").get<std::string>()));
        return Pattern::digitized_line(need_int(j, "dx"), need_int(j, "dy"));
    }
    if (kind == "geodesic_word_line")
        return Pattern::geodesic_word_line(parse_word(need(j, "period"), field + ".period"));
    if (kind == "thue_morse_line") return Pattern::thue_morse_line();
    if (kind == "fiber") {
        Word base;
        if (j.contains("base")) base = parse_word(j.at("base"), field + ".base");
        return Pattern::fiber(need_int(j, "factor"), base);
    }
    if (kind == "neighborhood")
        return Pattern::neighborhood_of(parse_pattern(need(j, "inner"), field + ".inner"),
                                        need_int(j, "r"));
    if (kind == "union") {
        std::vector<Pattern> parts;
        for (const auto& x : need(j, "parts")) parts.push_back(parse_pattern(x, field + ".parts"));
        return Pattern::union_of(std::move(parts));
    }
    if (kind == "qi_image")
        return Pattern::qi_image(need(j, "angle").get<double>(),
                                 parse_pattern(need(j, "inner"), field + ".inner"));
    bad(field, "unknown pattern kind \"" + kind + "\"");
}

// ----------------------------------------------------------- serialization

json group_to_json(const GroupSpec& s) {
    json j;
    switch (s.family) {
        case Family::FreeAbelian:
            j["family"] = "free_abelian";
            j["rank"] = s.rank;
            break;
        case Family::Free:
            j["family"] = "free";
            j["rank"] = s.rank;
            break;
        case Family::Surface:
            j["family"] = "surface";
            j["genus"] = s.genus;
            break;
        case Family::FreeProductOfCyclics:
            j["family"] = "free_product_of_cyclics";
            j["orders"] = s.orders;
            break;
        case Family::DirectProduct: {
            j["family"] = "direct_product";
            json f = json::array();
            for (const GroupSpec& x : s.factors) f.push_back(group_to_json(x));
            j["factors"] = std::move(f);
            break;
        }
    }
    return j;
}

const char* slope_name(SlopeTag t) {
    switch (t) {
        case SlopeTag::Golden: return "golden";
        case SlopeTag::Sqrt2: return "sqrt2";
        case SlopeTag::Sqrt3: return "sqrt3";
        case SlopeTag::InvSqrt3: return "inv_sqrt3";
        default: return "none";
    }
}

json pattern_to_json(const Pattern& p) {
    json j;
    switch (p.kind) {
        case PatternKind::SubgroupOrbit:
            j["kind"] = "subgroup_orbit";
            j["generators"] = p.generators;
            break;
        case PatternKind::Coset:
            j["kind"] = "coset";
            j["rep"] = p.base;
            j["generators"] = p.generators;
            break;
        case PatternKind::DigitizedLine:
            j["kind"] = "digitized_line";
            if (p.slope != SlopeTag::None) {
                j["slope"] = slope_name(p.slope);
            } else {
                j["dx"] = p.dir_x;
                j["dy"] = p.dir_y;
            }
            break;
        case PatternKind::GeodesicWordLine:
            j["kind"] = p.thue_morse ? "thue_morse_line" : "geodesic_word_line";
            if (!p.thue_morse) j["period"] = p.period;
            break;
        case PatternKind::Fiber:
            j["kind"] = "fiber";
            j["factor"] = p.factor_index;
            j["base"] = p.base;
            break;
        case PatternKind::Neighborhood:
            j["kind"] = "neighborhood";
            j["r"] = p.r;
            j["inner"] = pattern_to_json(p.inner.at(0));
            break;
        case PatternKind::Union: {
            j["kind"] = "union";
            json parts = json::array();
            for (const Pattern& x : p.inner) parts.push_back(pattern_to_json(x));
            j["parts"] = std::move(parts);
            break;
        }
        case PatternKind::QiImage:
            j["kind"] = "qi_image";
            j["angle"] = p.angle;
            j["inner"] = pattern_to_json(p.inner.at(0));
            break;
    }
    return j;
}

json provenance(int range, const Guard& guard, int theta) {
    json j;
    j["R"] = range;
    j["guard"] = guard.comps;
    j["theta"] = theta;
    return j;
}

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

// ------------------------------------------------------------ scale plans

struct Scale {
    int radius = 0;              // metric radius (0 when box)
    std::vector<int> caps;       // box caps (empty when metric)

    int range() const { return caps.empty() ? radius : *std::min_element(caps.begin(), caps.end()); }
    std::string name() const {
        if (caps.empty()) return std::to_string(radius);
        std::string s;
        for (std::size_t i = 0; i < caps.size(); ++i)
            s += (i ? "x" : "") + std::to_string(caps[i]);
        return s;
    }
};

std::vector<Scale> scales_of(const ScenarioConfig& c) {
    std::vector<Scale> out;
    for (const auto& caps : c.factor_caps) out.push_back(Scale{0, caps});
    if (out.empty())
        for (int r : c.radii) out.push_back(Scale{r, {}});
    return out;
}

CayleyBall build_scale(const GroupSpec& spec, const Scale& s, std::uint64_t budget) {
    return s.caps.empty() ? build_ball(spec, s.radius, budget)
                          : build_box_ball(spec, s.caps, budget);
}

std::vector<Word> subgroup_of(const ScenarioConfig& c, const std::string& analysis) {
    if (!c.params.subgroup.empty()) return c.params.subgroup;
    if (c.pattern.kind == PatternKind::SubgroupOrbit && !c.pattern.generators.empty())
        return c.pattern.generators;
    bad("params.subgroup", "analysis \"" + analysis + "\" needs subgroup generators");
}

}  // namespace

// ------------------------------------------------------------- public API

ScenarioConfig parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad("config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("config", "top level must be an object");
    if (need_int(j, "version") != 1) bad("version", "unsupported config version");

    ScenarioConfig c;
    c.group = parse_group(need(j, "group"), "group");
    c.pattern = parse_pattern(need(j, "pattern"), "pattern");

    if (j.contains("radii")) {
        for (const auto& x : j.at("radii")) {
            if (!x.is_number_integer() || x.get<int>() <= 0)
                bad("radii", "expected positive integers");
            c.radii.push_back(x.get<int>());
        }
        for (std::size_t i = 0; i + 1 < c.radii.size(); ++i)
            if (c.radii[i + 1] <= c.radii[i]) bad("radii", "must be strictly increasing");
    }
    if (j.contains("factor_caps")) {
        for (const auto& row : j.at("factor_caps")) {
            std::vector<int> caps;
            for (const auto& x : row) caps.push_back(x.get<int>());
            if (caps.empty()) bad("factor_caps", "each entry needs one cap per factor");
            c.factor_caps.push_back(std::move(caps));
        }
    }
    if (c.radii.empty() && c.factor_caps.empty())
        bad("radii", "need a non-empty \"radii\" list (or \"factor_caps\")");

    json an = need(j, "analyses");
    if (!an.is_array() || an.empty()) bad("analyses", "need a non-empty list");
    auto known = known_analyses();
    for (const auto& x : an) {
        std::string name = x.get<std::string>();
        if (std::find(known.begin(), known.end(), name) == known.end())
            bad("analyses", "unknown analysis \"" + name + "\"");
        c.analyses.push_back(name);
    }

    if (j.contains("params")) {
        const json& p = j.at("params");
        if (!p.is_object()) bad("params", "expected an object");
        auto geti = [&](const char* f, int& slot) {
            if (p.contains(f)) slot = p.at(f).get<int>();
        };
        geti("r", c.params.r);
        geti("theta", c.params.theta);
        geti("r_max", c.params.r_max);
        geti("k", c.params.k);
        geti("t_max", c.params.t_max);
        geti("k_max", c.params.k_max);
        geti("n_max", c.params.n_max);
        geti("chosen_component", c.params.chosen_component);
        geti("poly_degree", c.params.poly_degree);
        geti("lambda_cap", c.params.lambda_cap);
        geti("c_cap", c.params.c_cap);
        geti("n_range", c.params.n_range);
        if (p.contains("r_list")) {
            c.params.r_list.clear();
            for (const auto& x : p.at("r_list")) c.params.r_list.push_back(x.get<int>());
        }
        if (p.contains("subgroup")) c.params.subgroup = parse_words(p.at("subgroup"), "params.subgroup");
        if (p.contains("g")) c.params.g = parse_word(p.at("g"), "params.g");
        if (p.contains("family"))
            for (const auto& x : p.at("family"))
                c.params.family.push_back(parse_pattern(x, "params.family"));
    }

    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("budget")) c.budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("config", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::vector<std::string> known_families() {
    return {"free_abelian", "free", "direct_product", "free_product_of_cyclics", "surface"};
}

std::vector<std::string> known_analyses() {
    return {"components", "separating",    "moduli",     "noncrossing",
            "coends",     "growth",        "domination", "distortion",
            "commensurizer", "interlaced", "almost_invariant", "detect"};
}

int run_scenario(const ScenarioConfig& c) {
    c.group.validate();
    std::vector<Scale> scales = scales_of(c);
    fs::create_directories(c.output_dir);

    json report;
    report["version"] = 1;
    report["group"] = group_to_json(c.group);
    report["pattern"] = pattern_to_json(c.pattern);
    if (!c.radii.empty()) report["radii"] = c.radii;
    if (!c.factor_caps.empty()) report["factor_caps"] = c.factor_caps;
    report["budget"] = c.budget;
    report["seed"] = c.seed;
    report["analyses"] = json::object();

    // Balls are shared across analyses at the same scale.
    std::map<std::string, CayleyBall> cache;
    auto ball_at = [&](const Scale& s) -> const CayleyBall& {
        auto it = cache.find(s.name());
        if (it == cache.end())
            it = cache.emplace(s.name(), build_scale(c.group, s, c.budget)).first;
        return it->second;
    };

    int exit_code = 0;
    int top = scales.back().range();

    for (const std::string& name : c.analyses) {
        json& slot = report["analyses"][name];

        if (name == "components") {
            std::ostringstream csv;
            csv << "R,r,component_id,size,depth,label,touches_boundary\n";
            slot = json::array();
            for (const Scale& s : scales) {
                const CayleyBall& b = ball_at(s);
                VertexSet y = realize(c.pattern, b);
                ComponentAnalysis a = complement_components(b, y, c.params.r, c.params.theta);
                json e;
                e["provenance"] = provenance(s.range(), a.guard, a.theta);
                e["r"] = a.r;
                e["deep_count"] = a.deep_count;
                e["shallow_count"] = a.shallow_count;
                e["undetermined_count"] = a.undetermined_count;
                e["component_count"] = static_cast<int>(a.components.size());
                slot.push_back(std::move(e));
                for (std::size_t i = 0; i < a.components.size(); ++i) {
                    const Component& comp = a.components[i];
                    csv << s.range() << ',' << a.r << ',' << i << ',' << comp.size() << ','
                        << comp.depth << ',' << depth_label_name(comp.label) << ','
                        << (comp.touches_boundary ? 1 : 0) << '\n';
                }
            }
            atomic_write(fs::path(c.output_dir) / "components.csv", csv.str());

        } else if (name == "separating") {
            SeparationProfile p =
                n_separating_profile(c.group, c.pattern, c.params.r, c.radii, c.budget);
            slot["provenance"] = provenance(top, Guard{{c.params.r}}, c.params.theta);
            slot["radii"] = p.radii;
            slot["deep_counts"] = p.deep_counts;
            slot["n_separating"] = p.n_separating;
            slot["stable"] = p.stable;

        } else if (name == "moduli") {
            ModulusEstimate m =
                estimate_moduli(c.group, c.pattern, c.radii, c.params.r_list, c.budget);
            slot["provenance"] = provenance(top, Guard{{0}}, c.params.theta);
            slot["radii"] = m.radii;
            slot["samples"] = json::array();
            for (const ModulusSample& s : m.samples) {
                json e;
                e["r"] = s.r;
                e["m0_by_radius"] = s.m0_by_radius;
                e["m1_by_radius"] = s.m1_by_radius;
                e["m0_hat"] = s.m0_hat;
                e["m1_hat"] = s.m1_hat;
                e["failed"] = s.failed;
                slot["samples"].push_back(std::move(e));
            }

        } else if (name == "noncrossing") {
            const CayleyBall& b = ball_at(scales.back());
            NoncrossingReport r =
                c.params.family.empty()
                    ? noncrossing_check(b, c.pattern, c.params.t_max, c.params.k_max,
                                        c.params.theta)
                    : noncrossing_family(b, c.params.family, c.params.k_max, c.params.theta);
            slot["provenance"] = provenance(top, Guard{{0}}, c.params.theta);
            slot["tested"] = r.tested;
            slot["max_finite_k"] = r.max_finite_k;
            slot["pass"] = r.pass;
            slot["entries"] = json::array();
            for (const NoncrossingEntry& e : r.entries) {
                json x;
                x["g"] = e.g.word;
                x["family_index"] = e.family_index;
                x["k_min"] = e.k_min;
                x["fail"] = e.fail;
                slot["entries"].push_back(std::move(x));
            }

        } else if (name == "coends") {
            CoendEstimate e = coend_lower_bound(c.group, subgroup_of(c, name), c.params.r_max,
                                                top, c.budget);
            slot["provenance"] = provenance(top, Guard{{0}}, c.params.theta);
            slot["r_values"] = e.r_values;
            slot["deep_counts"] = e.deep_counts;
            slot["lower_bound"] = e.lower_bound;
            slot["unbounded"] = e.unbounded;
            std::ostringstream csv;
            csv << "r,deep_count\n";
            for (std::size_t i = 0; i < e.r_values.size(); ++i)
                csv << e.r_values[i] << ',' << e.deep_counts[i] << '\n';
            atomic_write(fs::path(c.output_dir) / "coends.csv", csv.str());

        } else if (name == "growth") {
            int n_max = c.params.n_max >= 0 ? c.params.n_max : top;
            GrowthSeries beta = growth_series(c.group, n_max, c.budget);
            GrowthVerdict v = polynomial_growth_verdict(beta);
            slot["provenance"] = provenance(n_max, Guard{{0}}, -1);
            slot["beta"] = beta;
            slot["fitted_exponent"] = v.fitted_exponent;
            slot["polynomial"] = v.polynomial;
            slot["degree"] = v.degree;
            slot["label"] = v.label;
            std::ostringstream csv;
            csv << "n,beta\n";
            for (std::size_t n = 0; n < beta.size(); ++n) csv << n << ',' << beta[n] << '\n';
            atomic_write(fs::path(c.output_dir) / "growth.csv", csv.str());

        } else if (name == "domination") {
            int n_range = c.params.n_range >= 0 ? c.params.n_range : top;
            GrowthSeries beta = growth_series(c.group, n_range, c.budget);
            int a = c.params.poly_degree;
            if (a < 0) a = polynomial_growth_verdict(beta).degree;
            GrowthSeries ref;
            long long span =
                static_cast<long long>(c.params.lambda_cap) * n_range + c.params.c_cap;
            for (long long n = 0; n <= span; ++n) {
                long long v = 1;
                for (int i = 0; i < a; ++i) v *= (n + 1);
                ref.push_back(v);
            }
            DominationResult d =
                weakly_dominates(beta, ref, c.params.lambda_cap, c.params.c_cap, n_range);
            slot["provenance"] = provenance(n_range, Guard{{0}}, -1);
            slot["reference_degree"] = a;
            slot["dominated"] = d.dominated;
            slot["lambda"] = d.lambda;
            slot["c"] = d.c;

        } else if (name == "distortion") {
            DistortionProfile p = distortion_profile(c.group, subgroup_of(c, name), top);
            slot["provenance"] = provenance(top, Guard{{0}}, -1);
            slot["lambda_up"] = p.lambda_up;
            slot["c_up"] = p.c_up;
            slot["lambda_lo"] = p.lambda_lo;
            slot["c_lo"] = p.c_lo;
            slot["lambda_fit"] = p.lambda_fit;
            slot["sample_count"] = static_cast<int>(p.samples.size());

        } else if (name == "commensurizer") {
            CommensurizerProbe p =
                commensurizer_probe(c.group, subgroup_of(c, name), c.params.g, c.radii, c.budget);
            slot["provenance"] = provenance(top, Guard{{0}}, -1);
            slot["radii"] = p.radii;
            slot["values"] = p.values;
            json ex = json::array();
            for (char e : p.exceeded) ex.push_back(static_cast<bool>(e));
            slot["exceeded"] = std::move(ex);
            slot["verdict"] = p.verdict;

        } else if (name == "interlaced") {
            InterlacedProbe p = interlaced_probe(c.group, subgroup_of(c, name), c.params.r, top,
                                                 c.params.t_max, c.budget);
            slot["provenance"] = provenance(top, Guard{{c.params.r}}, c.params.theta);
            slot["deep_count"] = p.deep_count;
            slot["cosets_tested"] = p.cosets_tested;
            json edges = json::array();
            for (auto [u, v] : p.edges) edges.push_back(json::array({u, v}));
            slot["edges"] = std::move(edges);
            slot["interlaced"] = p.interlaced;

        } else if (name == "almost_invariant") {
            AlmostInvariantResult r =
                almost_invariant_set(c.group, subgroup_of(c, name), c.params.r,
                                     c.params.chosen_component, c.params.k, top, c.budget);
            slot["provenance"] = provenance(top, Guard{{c.params.r}}, c.params.theta);
            slot["deep_count"] = r.deep_count;
            int determined = 0, inside = 0;
            for (std::size_t i = 0; i < r.determined.size(); ++i) {
                if (!r.determined[i]) continue;
                ++determined;
                if (r.b[i]) ++inside;
            }
            slot["determined_count"] = determined;
            slot["member_count"] = inside;
            slot["coboundary_radius"] = r.coboundary_radius;
            slot["h_invariant"] = r.h_invariant;

        } else if (name == "detect") {
            DetectParams p;
            p.k = c.params.k;
            p.theta = c.params.theta;
            p.t_max = c.params.t_max;
            p.k_max = c.params.k_max;
            p.budget = c.budget;
            if (!c.factor_caps.empty())
                p.factor_caps = c.factor_caps.back();
            else
                p.radius = c.radii.back();
            DetectionCertificate cert = detect_subgroup(c.group, c.pattern, p);
            json d;
            d["provenance"] = provenance(top, Guard{{0}}, p.theta);
            d["status"] = detection_status_name(cert.status);
            d["detail"] = cert.detail;
            d["deep_counts"] = cert.deep_counts;
            d["m0_values"] = cert.m0_values;
            d["m1_values"] = cert.m1_values;
            d["noncrossing_pass"] = cert.noncrossing_pass;
            d["threshold_x1"] = cert.threshold_x1;
            d["threshold_clamped"] = cert.threshold_clamped;
            d["cluster_count"] = cert.cluster_count;
            d["cluster_count_enlarged"] = cert.cluster_count_enlarged;
            d["mu"] = cert.mu;
            d["mu_enlarged"] = cert.mu_enlarged;
            d["family_size"] = cert.family_size;
            d["class_count"] = cert.class_count;
            d["r_rep"] = cert.r_rep;
            json gens = json::array(), gen_words = json::array();
            for (const Element& g : cert.generators) {
                gens.push_back(word_to_string(c.group, g.word));
                gen_words.push_back(g.word);
            }
            d["generators"] = std::move(gens);
            d["generator_words"] = std::move(gen_words);
            d["trivial_subgroup"] = cert.trivial_subgroup;
            d["residual"] = cert.residual;
            d["residual_exceeds"] = cert.residual_exceeds;
            d["residual_bound"] = cert.residual_bound;
            d["orbit_size"] = cert.orbit_size;
            slot = d;
            atomic_write(fs::path(c.output_dir) / "detection.json", d.dump(2) + "\n");
            if (cert.status != DetectionStatus::Detected) exit_code = 2;
        }
    }

    atomic_write(fs::path(c.output_dir) / "report.json", report.dump(2) + "\n");
    return exit_code;
}

}  // namespace cgeo
