#include "dgafd/boxplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dgafd/errors.hpp"

namespace dgafd {

double quantile_linear(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw Error("quantile of an empty set");
    if (sorted.size() == 1) return sorted[0];
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
    const double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<BoxPlotRecord> boxplot_records(const Eigen::Ref<const Eigen::MatrixXd>& matrix,
                                           std::span<const FaultClass> labels,
                                           std::span<const int> feature_numbers) {
    if (static_cast<std::size_t>(matrix.rows()) != labels.size()) {
        throw LengthMismatch("matrix rows != label count");
    }
    if (static_cast<std::size_t>(matrix.cols()) != feature_numbers.size()) {
        throw LengthMismatch("matrix columns != feature number count");
    }

    std::vector<BoxPlotRecord> records;
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
        for (const FaultClass cls : kAllFaultClasses) {
            std::vector<double> values;
            for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
                if (labels[static_cast<std::size_t>(i)] == cls) values.push_back(matrix(i, j));
            }
            if (values.empty()) continue;
            std::sort(values.begin(), values.end());

            BoxPlotRecord r;
            r.feature_index = feature_numbers[static_cast<std::size_t>(j)];
            r.cls = cls;
            r.min = values.front();
            r.max = values.back();
            r.q1 = quantile_linear(values, 0.25);
            r.median = quantile_linear(values, 0.5);
            r.q3 = quantile_linear(values, 0.75);
            const double iqr = r.q3 - r.q1;
            const double lo_fence = r.q1 - 1.5 * iqr;
            const double hi_fence = r.q3 + 1.5 * iqr;
            r.whisker_low = r.max;
            r.whisker_high = r.min;
            for (double v : values) {
                if (v < lo_fence || v > hi_fence) {
                    r.outliers.push_back(v);
                } else {
                    r.whisker_low = std::min(r.whisker_low, v);
                    r.whisker_high = std::max(r.whisker_high, v);
                }
            }
            records.push_back(std::move(r));
        }
    }
    return records;
}

void write_boxplot_csv(std::ostream& out, std::string_view stage,
                       std::span<const BoxPlotRecord> records) {
    out << "stage,feature,class,min,q1,median,q3,max,whisker_low,whisker_high,outliers\n";
    char buf[32];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        return std::string(buf);
    };
    for (const auto& r : records) {
        out << stage << ',' << r.feature_index << ',' << to_string(r.cls) << ',' << num(r.min)
            << ',' << num(r.q1) << ',' << num(r.median) << ',' << num(r.q3) << ',' << num(r.max)
            << ',' << num(r.whisker_low) << ',' << num(r.whisker_high) << ',';
        for (std::size_t k = 0; k < r.outliers.size(); ++k) {
            if (k) out << ';';
            out << num(r.outliers[k]);
        }
        out << '\n';
    }
}

}  // namespace dgafd
