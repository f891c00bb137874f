#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "dgafd/fault.hpp"

namespace dgafd {

/// One oil sample: the five hydrocarbon/hydrogen gas concentrations in ppm,
/// plus an optional fault label.
struct GasSample {
    std::string id;
    double h2 = 0.0;
    double ch4 = 0.0;
    double c2h6 = 0.0;
    double c2h4 = 0.0;
    double c2h2 = 0.0;
    std::optional<FaultClass> label;
};

/// Gas-sum denominators used by the ratio features.
/// th = all five gases, thd = CH4+C2H4+C2H2, thh = H2+C2H4+C2H2,
/// tch = CH4+C2H6+C2H4+C2H2.
struct GasTotals {
    double th = 0.0;
    double thd = 0.0;
    double thh = 0.0;
    double tch = 0.0;
};

inline constexpr int kNumFeatures = 37;

/// Cap applied to x/0 ratios with x > 0; 0/0 evaluates to 0.
inline constexpr double kRatioCap = 1e6;

/// The 37 ratio features for one sample. Storage is 0-based; entry i holds
/// feature number i+1 of the canonical 1..37 numbering used everywhere else
/// (rankings, windows, reports).
using FeatureVector = Eigen::Matrix<double, kNumFeatures, 1>;

GasTotals compute_totals(const GasSample& sample) noexcept;

/// Computes all 37 features. Throws DegenerateSample when every gas is zero.
FeatureVector compute_features(const GasSample& sample);

/// N x 37 matrix of features, one row per sample, columns in 1..37 order.
Eigen::MatrixXd feature_matrix(std::span<const GasSample> samples);

/// Human-readable name of a feature by its canonical number (1..37).
std::string_view feature_name(int feature_number);

/// Ratio with the shared zero-denominator policy: 0/0 -> 0, x/0 -> kRatioCap.
inline double safe_ratio(double numerator, double denominator) noexcept {
    if (denominator > 0.0) return numerator / denominator;
    return numerator > 0.0 ? kRatioCap : 0.0;
}

}  // namespace dgafd
