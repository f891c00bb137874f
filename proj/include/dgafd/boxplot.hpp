#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "dgafd/fault.hpp"

namespace dgafd {

/// Five-number summary plus Tukey whiskers (1.5 x IQR) for one
/// (feature, class) group.
struct BoxPlotRecord {
    int feature_index = 0;  // canonical feature number for raw features;
                            // 1-based window position for IMF features
    FaultClass cls = FaultClass::PD;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;
};

/// Quantile by linear interpolation of order statistics: rank h = (n-1)p,
/// value = x[floor(h)] + frac(h) * (x[floor(h)+1] - x[floor(h)]).
double quantile_linear(std::span<const double> sorted_values, double p);

/// One record per (column, class present); columns are labeled with
/// feature_numbers (must match the matrix column count).
std::vector<BoxPlotRecord> boxplot_records(const Eigen::Ref<const Eigen::MatrixXd>& matrix,
                                           std::span<const FaultClass> labels,
                                           std::span<const int> feature_numbers);

/// CSV emission; `stage` tags every record (raw-feature or imf).
void write_boxplot_csv(std::ostream& out, std::string_view stage,
                       std::span<const BoxPlotRecord> records);

}  // namespace dgafd
