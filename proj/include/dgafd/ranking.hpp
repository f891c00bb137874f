#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "dgafd/errors.hpp"

namespace dgafd {

enum class RankMode { Absolute, Signed };

struct RankEntry {
    int feature_index = 0;  // canonical feature number, 1-based
    double skewness = 0.0;
};

/// Permutation of the feature numbers ordered by skewness (ascending
/// |skewness| in Absolute mode, ascending signed value in Signed mode),
/// ties broken by the lower feature number.
struct SkewnessRanking {
    std::vector<RankEntry> entries;
    RankMode mode = RankMode::Absolute;

    std::vector<int> order() const {
        std::vector<int> o;
        o.reserve(entries.size());
        for (const auto& e : entries) o.push_back(e.feature_index);
        return o;
    }
};

/// A run of `width` consecutive ranks of a SkewnessRanking; rank_start is
/// 1-based, feature_indices preserves rank order.
struct FeatureWindow {
    int rank_start = 1;
    std::vector<int> feature_indices;
};

/// Fisher-Pearson moment coefficient g1 = m3 / m2^(3/2) with biased central
/// moments. Returns 0 for (near-)constant input (m2 < 1e-12).
/// Throws TooFewSamples for fewer than 3 values.
template <typename Derived>
double skewness(const Eigen::MatrixBase<Derived>& xs) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = xs.size();
    if (n < 3) throw TooFewSamples("skewness needs at least 3 samples, got " + std::to_string(n));
    const Scalar mean = xs.mean();
    const auto centered = (xs.array() - mean).eval();
    const double m2 = static_cast<double>(centered.square().mean());
    if (m2 < 1e-12) return 0.0;
    const double m3 = static_cast<double>(centered.cube().mean());
    return m3 / std::pow(m2, 1.5);
}

/// Per-column skewness over all rows of `features`, sorted per the ranking
/// contract. Column j carries feature number j+1.
SkewnessRanking rank_features(const Eigen::Ref<const Eigen::MatrixXd>& features,
                              RankMode mode = RankMode::Absolute);

/// All sliding windows of `width` consecutive ranks; count is
/// entries - width + 1. Throws BadWidth when width is outside 1..entries.
std::vector<FeatureWindow> enumerate_windows(const SkewnessRanking& ranking, int width = 12);

}  // namespace dgafd
