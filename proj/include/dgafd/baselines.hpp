#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dgafd/fault.hpp"
#include "dgafd/features.hpp"

namespace dgafd {

/// A diagnosis from a rule-based method; nullopt means "no result".
using BaselineVerdict = std::optional<FaultClass>;

/// Ternary position in the CH4/C2H4/C2H2 triangle; the three percentages
/// sum to 100.
struct TriangleCoordinates {
    double pct_ch4 = 0.0;
    double pct_c2h4 = 0.0;
    double pct_c2h2 = 0.0;
};

/// One triangle zone: a polygon of (pct_ch4, pct_c2h4, pct_c2h2) vertices and
/// the verdict it maps to (nullopt for the unresolved mixed zone).
struct Zone {
    std::string name;
    BaselineVerdict verdict;
    std::vector<std::array<double, 3>> polygon;
};

/// Zones are evaluated in declared order; a point on a shared edge belongs to
/// the earlier zone.
struct ZoneTable {
    std::vector<Zone> zones;
};

/// Half-open band [lower, upper) mapping a ratio value to an integer code;
/// upper may be infinity for the last band.
struct RatioBand {
    double lower = 0.0;
    double upper = 0.0;
    int code = 0;
};

struct RatioCoding {
    std::string name;
    std::vector<RatioBand> bands;
};

struct CodeRule {
    std::vector<int> codes;
    BaselineVerdict verdict;
    std::string diagnosis;
};

/// Band codings for each ratio plus an ordered code-tuple -> verdict map;
/// tuples absent from the map give "no result".
struct RatioRuleTable {
    std::vector<RatioCoding> ratios;
    std::vector<CodeRule> rules;
};

/// All rule constants for the three conventional methods, loaded from the
/// bundled rules document (overridable via --rules).
struct RuleSet {
    int schema_version = 0;
    ZoneTable duval;
    RatioRuleTable rogers;
    RatioRuleTable iec;
};

RuleSet parse_rules(const std::string& json_text);
RuleSet load_rules(const std::string& path);
const RuleSet& default_rules();

/// Triangle position of a sample; nullopt when CH4+C2H4+C2H2 is zero.
std::optional<TriangleCoordinates> duval_coordinates(const GasSample& sample);

/// Closed-lower band code for a value; -1 when no band matches.
int code_for(const RatioCoding& coding, double value);

/// First zone in declared order containing the point.
BaselineVerdict duval_classify(const TriangleCoordinates& coords, const ZoneTable& zones);
BaselineVerdict duval_classify(const GasSample& sample, const ZoneTable& zones);

/// Rogers four-ratio method: CH4/H2, C2H6/CH4, C2H4/C2H6, C2H2/C2H4.
BaselineVerdict rogers_classify(const GasSample& sample, const RatioRuleTable& table);

/// IEC ratio method: C2H2/C2H4, CH4/H2, C2H4/C2H6.
BaselineVerdict iec_classify(const GasSample& sample, const RatioRuleTable& table);

}  // namespace dgafd
