#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dgafd/baselines.hpp"
#include "dgafd/boosting.hpp"
#include "dgafd/dataset.hpp"
#include "dgafd/emd.hpp"
#include "dgafd/fault.hpp"
#include "dgafd/hierarchy.hpp"
#include "dgafd/ranking.hpp"

namespace dgafd {

struct SplitConfig {
    double train_fraction = 0.85;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct SplitIndices {
    std::vector<int> train;
    std::vector<int> test;
};

/// Disjoint, covering train/test index sets. Stratified mode allocates
/// per-class train counts by largest-remainder rounding of the global train
/// total and requires every fault class to be present (EmptyClass otherwise).
SplitIndices split_dataset(std::span<const FaultClass> labels, const SplitConfig& config);

/// Rows = actual class, columns = predicted class.
using ConfusionMatrix = Eigen::Matrix<std::int64_t, kNumFaultClasses, kNumFaultClasses>;

ConfusionMatrix confusion_matrix(std::span<const FaultClass> actual,
                                 std::span<const FaultClass> predicted);

/// Per-class recall in percent; UndefinedForEmptyClass when the class has no
/// actual rows.
double sensitivity(const ConfusionMatrix& cm, FaultClass cls);

double overall_accuracy(const ConfusionMatrix& cm);

/// How baseline "no result" verdicts are scored.
enum class NoResultPolicy { CountAsWrong, Exclude };

/// Everything the end-to-end evaluation needs besides the data and rules.
struct EvalConfig {
    SplitConfig split;
    TrainConfig train;
    SiftConfig sift;
    EmdAxis emd_axis = EmdAxis::Column;
    RankMode rank_mode = RankMode::Absolute;
    int window = 1;  // 1-based rank_start of the feature window
    int window_width = 12;
    NoResultPolicy no_result = NoResultPolicy::CountAsWrong;
};

struct SweepResult {
    std::vector<double> accuracies;  // percent, one per window in rank order
    int best_window = 1;             // rank_start of the argmax (lowest wins ties)
};

/// Trains a flat 6-class ensemble per feature window and records its test
/// accuracy; the split is shared across windows.
SweepResult sweep_windows(const Eigen::Ref<const Eigen::MatrixXd>& features,
                          std::span<const FaultClass> labels, const SkewnessRanking& ranking,
                          int width, const EvalConfig& config);

struct MethodRow {
    std::string method;
    std::array<double, kNumFaultClasses> per_class{};  // percent per actual class
    double average = 0.0;                              // overall accuracy, percent
    int no_result_count = 0;
};

struct MetricsReport {
    ConfusionMatrix cm = ConfusionMatrix::Zero();
    std::array<double, kNumFaultClasses> sensitivity_pct{};
    double average_sensitivity = 0.0;
    double overall_accuracy_pct = 0.0;
    std::vector<MethodRow> methods;  // proposed method first, then baselines
    std::vector<int> test_indices;
    std::vector<FaultClass> test_actual;
    std::vector<FaultClass> test_predicted;
};

/// Trains the hierarchical pipeline on the train split of the prepared IMF
/// features, evaluates it on the test split, and scores the three rule-based
/// methods on the same test rows.
MetricsReport compare_methods(std::span<const GasSample> samples,
                              const Eigen::Ref<const Eigen::MatrixXd>& imf_features,
                              std::span<const FaultClass> labels, const SplitIndices& split,
                              const EvalConfig& config, const RuleSet& rules,
                              HierarchicalModel* trained_model = nullptr);

}  // namespace dgafd
