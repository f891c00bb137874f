#include "dgafd/features.hpp"

#include <array>

#include "dgafd/errors.hpp"

namespace dgafd {

GasTotals compute_totals(const GasSample& s) noexcept {
    GasTotals t;
    t.th = s.h2 + s.ch4 + s.c2h6 + s.c2h4 + s.c2h2;
    t.thd = s.ch4 + s.c2h4 + s.c2h2;
    t.thh = s.h2 + s.c2h4 + s.c2h2;
    t.tch = s.ch4 + s.c2h6 + s.c2h4 + s.c2h2;
    return t;
}

FeatureVector compute_features(const GasSample& s) {
    const GasTotals t = compute_totals(s);
    if (t.th <= 0.0) throw DegenerateSample("all five gas concentrations are zero for sample '" + s.id + "'");

    FeatureVector v;
    v(0) = safe_ratio(s.h2, t.th);
    v(1) = safe_ratio(s.ch4, t.th);
    v(2) = safe_ratio(s.c2h6, t.th);
    v(3) = safe_ratio(s.c2h4, t.th);
    v(4) = safe_ratio(s.c2h2, t.th);
    v(5) = safe_ratio(s.c2h2, s.h2);
    v(6) = safe_ratio(s.c2h2, s.ch4);
    v(7) = safe_ratio(s.c2h2, s.c2h6);
    v(8) = safe_ratio(s.c2h2, s.c2h4);
    v(9) = safe_ratio(s.c2h4, s.h2);
    v(10) = safe_ratio(s.c2h4, s.ch4);
    v(11) = safe_ratio(s.c2h4, s.c2h6);
    v(12) = safe_ratio(s.c2h4, s.h2) + safe_ratio(s.c2h4, s.ch4);
    v(13) = s.h2;
    v(14) = s.ch4;
    v(15) = s.c2h6;
    v(16) = s.c2h4;
    v(17) = s.c2h2;
    v(18) = t.th;
    v(19) = t.thd;
    v(20) = t.thh;
    v(21) = t.tch;
    v(22) = safe_ratio(s.h2, t.thd);
    v(23) = safe_ratio(s.ch4, t.thd);
    v(24) = safe_ratio(s.c2h6, t.thd);
    v(25) = safe_ratio(s.c2h4, t.thd);
    v(26) = safe_ratio(s.c2h2, t.thd);
    v(27) = safe_ratio(s.h2, t.thh);
    v(28) = safe_ratio(s.ch4, t.thh);
    v(29) = safe_ratio(s.c2h6, t.thh);
    v(30) = safe_ratio(s.c2h4, t.thh);
    v(31) = safe_ratio(s.c2h2, t.thh);
    v(32) = safe_ratio(s.h2, t.tch);
    v(33) = safe_ratio(s.ch4, t.tch);
    v(34) = safe_ratio(s.c2h6, t.tch);
    v(35) = safe_ratio(s.c2h4, t.tch);
    v(36) = safe_ratio(s.c2h2, t.tch);
    return v;
}

Eigen::MatrixXd feature_matrix(std::span<const GasSample> samples) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(samples.size()), kNumFeatures);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        m.row(static_cast<Eigen::Index>(i)) = compute_features(samples[i]).transpose();
    }
    return m;
}

std::string_view feature_name(int feature_number) {
    static const std::array<std::string_view, kNumFeatures> names = {
        "H2/TH",      "CH4/TH",   "C2H6/TH",  "C2H4/TH",  "C2H2/TH",
        "C2H2/H2",    "C2H2/CH4", "C2H2/C2H6", "C2H2/C2H4", "C2H4/H2",
        "C2H4/CH4",   "C2H4/C2H6", "C2H4/H2+C2H4/CH4",      "H2",       "CH4",
        "C2H6",       "C2H4",     "C2H2",     "TH",       "THD",
        "THH",        "TCH",      "H2/THD",   "CH4/THD",  "C2H6/THD",
        "C2H4/THD",   "C2H2/THD", "H2/THH",   "CH4/THH",  "C2H6/THH",
        "C2H4/THH",   "C2H2/THH", "H2/TCH",   "CH4/TCH",  "C2H6/TCH",
        "C2H4/TCH",   "C2H2/TCH"};
    return names.at(static_cast<std::size_t>(feature_number - 1));
}

}  // namespace dgafd
