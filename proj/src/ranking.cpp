#include "dgafd/ranking.hpp"

#include <algorithm>
#include <cstdlib>

namespace dgafd {

SkewnessRanking rank_features(const Eigen::Ref<const Eigen::MatrixXd>& features, RankMode mode) {
    SkewnessRanking ranking;
    ranking.mode = mode;
    ranking.entries.reserve(static_cast<std::size_t>(features.cols()));
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        ranking.entries.push_back({static_cast<int>(j) + 1, skewness(features.col(j))});
    }
    const auto key = [mode](const RankEntry& e) {
        return mode == RankMode::Absolute ? std::abs(e.skewness) : e.skewness;
    };
    std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                     [&](const RankEntry& a, const RankEntry& b) {
                         const double ka = key(a);
                         const double kb = key(b);
                         if (ka != kb) return ka < kb;
                         return a.feature_index < b.feature_index;
                     });
    return ranking;
}

std::vector<FeatureWindow> enumerate_windows(const SkewnessRanking& ranking, int width) {
    const int total = static_cast<int>(ranking.entries.size());
    if (width < 1 || width > total) {
        throw BadWidth("window width " + std::to_string(width) + " out of range 1.." +
                       std::to_string(total));
    }
    std::vector<FeatureWindow> windows;
    windows.reserve(static_cast<std::size_t>(total - width + 1));
    for (int start = 0; start + width <= total; ++start) {
        FeatureWindow w;
        w.rank_start = start + 1;
        w.feature_indices.reserve(static_cast<std::size_t>(width));
        for (int k = 0; k < width; ++k) {
            w.feature_indices.push_back(ranking.entries[static_cast<std::size_t>(start + k)].feature_index);
        }
        windows.push_back(std::move(w));
    }
    return windows;
}

}  // namespace dgafd
