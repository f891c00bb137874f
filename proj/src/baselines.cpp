#include "dgafd/baselines.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dgafd/default_rules.hpp"
#include "dgafd/errors.hpp"

namespace dgafd {

namespace {

using nlohmann::json;

BaselineVerdict verdict_from_json(const json& j, const std::string& where) {
    if (j.is_null()) return std::nullopt;
    const auto cls = parse_fault_class(j.get<std::string>());
    if (!cls) throw ParseError(0, where + ": unknown fault label '" + j.get<std::string>() + "'");
    return cls;
}

ZoneTable zone_table_from_json(const json& j) {
    ZoneTable table;
    for (const auto& zj : j.at("zones")) {
        Zone z;
        z.name = zj.at("name").get<std::string>();
        z.verdict = verdict_from_json(zj.at("verdict"), "duval zone " + z.name);
        for (const auto& vj : zj.at("polygon")) {
            std::array<double, 3> v = {vj.at(0).get<double>(), vj.at(1).get<double>(),
                                       vj.at(2).get<double>()};
            if (std::abs(v[0] + v[1] + v[2] - 100.0) > 1e-9) {
                throw ParseError(0, "duval zone " + z.name + ": vertex does not sum to 100");
            }
            z.polygon.push_back(v);
        }
        if (z.polygon.size() < 3) throw ParseError(0, "duval zone " + z.name + ": needs >= 3 vertices");
        table.zones.push_back(std::move(z));
    }
    return table;
}

RatioRuleTable ratio_table_from_json(const json& j, const std::string& method, std::size_t n_ratios) {
    RatioRuleTable table;
    for (const auto& rj : j.at("ratios")) {
        RatioCoding coding;
        coding.name = rj.at("name").get<std::string>();
        for (const auto& bj : rj.at("bands")) {
            RatioBand band;
            band.lower = bj.at("lower").get<double>();
            band.upper = bj.at("upper").is_null() ? std::numeric_limits<double>::infinity()
                                                  : bj.at("upper").get<double>();
            band.code = bj.at("code").get<int>();
            if (!(band.lower < band.upper)) {
                throw ParseError(0, method + " ratio " + coding.name + ": empty band");
            }
            if (!coding.bands.empty() && band.lower != coding.bands.back().upper) {
                throw ParseError(0, method + " ratio " + coding.name + ": bands not contiguous");
            }
            coding.bands.push_back(band);
        }
        table.ratios.push_back(std::move(coding));
    }
    if (table.ratios.size() != n_ratios) {
        throw ParseError(0, method + ": expected " + std::to_string(n_ratios) + " ratios");
    }
    for (const auto& rj : j.at("rules")) {
        CodeRule rule;
        rule.codes = rj.at("codes").get<std::vector<int>>();
        if (rule.codes.size() != n_ratios) {
            throw ParseError(0, method + ": rule code tuple must have " + std::to_string(n_ratios) +
                                    " entries");
        }
        rule.verdict = verdict_from_json(rj.at("verdict"), method + " rule");
        rule.diagnosis = rj.value("diagnosis", "");
        table.rules.push_back(std::move(rule));
    }
    return table;
}

// Point-in-polygon in the (pct_c2h4, pct_c2h2) plane, boundary inclusive.
// Containment survives the affine drop of the third ternary coordinate.
bool polygon_contains(const std::vector<std::array<double, 3>>& polygon, double u, double v) {
    constexpr double eps = 1e-9;
    const std::size_t n = polygon.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = polygon[i][1], yi = polygon[i][2];
        const double xj = polygon[j][1], yj = polygon[j][2];
        // on-segment test
        const double cross = (xj - xi) * (v - yi) - (yj - yi) * (u - xi);
        if (std::abs(cross) <= eps * std::max({1.0, std::abs(xj - xi), std::abs(yj - yi)}) &&
            u >= std::min(xi, xj) - eps && u <= std::max(xi, xj) + eps &&
            v >= std::min(yi, yj) - eps && v <= std::max(yi, yj) + eps) {
            return true;
        }
        // ray cast rightwards
        if ((yi > v) != (yj > v)) {
            const double x_at = xi + (v - yi) / (yj - yi) * (xj - xi);
            if (u < x_at) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

RuleSet parse_rules(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("rules document is not valid JSON: ") + e.what());
    }
    try {
        RuleSet rules;
        rules.schema_version = j.at("schema_version").get<int>();
        if (rules.schema_version != 1) {
            throw VersionMismatch("unsupported rules schema version " +
                                  std::to_string(rules.schema_version));
        }
        rules.duval = zone_table_from_json(j.at("duval"));
        rules.rogers = ratio_table_from_json(j.at("rogers"), "rogers", 4);
        rules.iec = ratio_table_from_json(j.at("iec"), "iec", 3);
        return rules;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("rules document malformed: ") + e.what());
    }
}

RuleSet load_rules(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open rules file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules(buf.str());
}

const RuleSet& default_rules() {
    static const RuleSet rules = parse_rules(detail::kDefaultRulesJson);
    return rules;
}

std::optional<TriangleCoordinates> duval_coordinates(const GasSample& s) {
    const double total = s.ch4 + s.c2h4 + s.c2h2;
    if (total <= 0.0) return std::nullopt;
    return TriangleCoordinates{100.0 * s.ch4 / total, 100.0 * s.c2h4 / total,
                               100.0 * s.c2h2 / total};
}

int code_for(const RatioCoding& coding, double value) {
    for (const RatioBand& band : coding.bands) {
        if (value >= band.lower && value < band.upper) return band.code;
    }
    return -1;
}

BaselineVerdict duval_classify(const TriangleCoordinates& coords, const ZoneTable& zones) {
    for (const Zone& z : zones.zones) {
        if (polygon_contains(z.polygon, coords.pct_c2h4, coords.pct_c2h2)) return z.verdict;
    }
    return std::nullopt;
}

BaselineVerdict duval_classify(const GasSample& sample, const ZoneTable& zones) {
    const auto coords = duval_coordinates(sample);
    if (!coords) return std::nullopt;
    return duval_classify(*coords, zones);
}

namespace {

BaselineVerdict classify_by_codes(const RatioRuleTable& table, const std::vector<double>& values) {
    std::vector<int> codes(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        codes[i] = code_for(table.ratios[i], values[i]);
        if (codes[i] < 0) return std::nullopt;
    }
    for (const CodeRule& rule : table.rules) {
        if (rule.codes == codes) return rule.verdict;
    }
    return std::nullopt;
}

}  // namespace

BaselineVerdict rogers_classify(const GasSample& s, const RatioRuleTable& table) {
    return classify_by_codes(table, {safe_ratio(s.ch4, s.h2), safe_ratio(s.c2h6, s.ch4),
                                     safe_ratio(s.c2h4, s.c2h6), safe_ratio(s.c2h2, s.c2h4)});
}

BaselineVerdict iec_classify(const GasSample& s, const RatioRuleTable& table) {
    return classify_by_codes(table, {safe_ratio(s.c2h2, s.c2h4), safe_ratio(s.ch4, s.h2),
                                     safe_ratio(s.c2h4, s.c2h6)});
}

}  // namespace dgafd
