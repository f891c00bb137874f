#include "dgafd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "dgafd/errors.hpp"
#include "dgafd/features.hpp"
#include "dgafd/random.hpp"

namespace dgafd {

namespace {

// Largest-remainder allocation of `total` across quotas proportional to
// counts; ties go to the lower class index.
std::array<long, kNumFaultClasses> largest_remainder(
    const std::array<std::size_t, kNumFaultClasses>& counts, double fraction, long total) {
    std::array<long, kNumFaultClasses> alloc{};
    std::array<double, kNumFaultClasses> remainder{};
    long assigned = 0;
    for (int c = 0; c < kNumFaultClasses; ++c) {
        const double quota = static_cast<double>(counts[static_cast<std::size_t>(c)]) * fraction;
        alloc[static_cast<std::size_t>(c)] = static_cast<long>(std::floor(quota));
        remainder[static_cast<std::size_t>(c)] = quota - std::floor(quota);
        assigned += alloc[static_cast<std::size_t>(c)];
    }
    std::array<int, kNumFaultClasses> order{};
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (remainder[static_cast<std::size_t>(a)] != remainder[static_cast<std::size_t>(b)]) {
            return remainder[static_cast<std::size_t>(a)] > remainder[static_cast<std::size_t>(b)];
        }
        return a < b;
    });
    // the floor sum never exceeds total, and the deficit is below one seat
    // per class, so one pass over the ordered remainders settles it
    for (int k = 0; assigned < total && k < kNumFaultClasses; ++k, ++assigned) {
        ++alloc[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    }
    return alloc;
}

}  // namespace

SplitIndices split_dataset(std::span<const FaultClass> labels, const SplitConfig& config) {
    const long n = static_cast<long>(labels.size());
    const long train_total = static_cast<long>(std::floor(static_cast<double>(n) * config.train_fraction + 0.5));
    std::mt19937_64 gen(config.seed);
    SplitIndices out;

    if (!config.stratified) {
        std::vector<int> order(labels.size());
        std::iota(order.begin(), order.end(), 0);
        rng::shuffle(order, gen);
        out.train.assign(order.begin(), order.begin() + train_total);
        out.test.assign(order.begin() + train_total, order.end());
    } else {
        std::array<std::vector<int>, kNumFaultClasses> per_class;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            per_class[static_cast<std::size_t>(index_of(labels[i]))].push_back(static_cast<int>(i));
        }
        std::array<std::size_t, kNumFaultClasses> counts{};
        for (int c = 0; c < kNumFaultClasses; ++c) {
            counts[static_cast<std::size_t>(c)] = per_class[static_cast<std::size_t>(c)].size();
            if (per_class[static_cast<std::size_t>(c)].empty()) {
                throw EmptyClass("stratified split requires every class; " +
                                 std::string(to_string(fault_from_index(c))) + " is absent");
            }
        }
        const auto train_per_class = largest_remainder(counts, config.train_fraction, train_total);
        for (int c = 0; c < kNumFaultClasses; ++c) {
            auto& rows = per_class[static_cast<std::size_t>(c)];
            rng::shuffle(rows, gen);
            const long k = train_per_class[static_cast<std::size_t>(c)];
            out.train.insert(out.train.end(), rows.begin(), rows.begin() + k);
            out.test.insert(out.test.end(), rows.begin() + k, rows.end());
        }
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

ConfusionMatrix confusion_matrix(std::span<const FaultClass> actual,
                                 std::span<const FaultClass> predicted) {
    if (actual.size() != predicted.size()) {
        throw LengthMismatch("actual has " + std::to_string(actual.size()) + " labels, predicted " +
                             std::to_string(predicted.size()));
    }
    ConfusionMatrix cm = ConfusionMatrix::Zero();
    for (std::size_t i = 0; i < actual.size(); ++i) {
        ++cm(index_of(actual[i]), index_of(predicted[i]));
    }
    return cm;
}

double sensitivity(const ConfusionMatrix& cm, FaultClass cls) {
    const int c = index_of(cls);
    const auto row_sum = cm.row(c).sum();
    if (row_sum == 0) {
        throw UndefinedForEmptyClass("no actual rows of class " + std::string(to_string(cls)));
    }
    return 100.0 * static_cast<double>(cm(c, c)) / static_cast<double>(row_sum);
}

double overall_accuracy(const ConfusionMatrix& cm) {
    const auto total = cm.sum();
    if (total == 0) throw UndefinedForEmptyClass("confusion matrix is empty");
    return 100.0 * static_cast<double>(cm.trace()) / static_cast<double>(total);
}

SweepResult sweep_windows(const Eigen::Ref<const Eigen::MatrixXd>& features,
                          std::span<const FaultClass> labels, const SkewnessRanking& ranking,
                          int width, const EvalConfig& config) {
    const auto windows = enumerate_windows(ranking, width);
    const SplitIndices split = split_dataset(labels, config.split);

    std::vector<int> int_labels(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) int_labels[i] = index_of(labels[i]);

    SweepResult result;
    result.accuracies.reserve(windows.size());
    for (const FeatureWindow& window : windows) {
        Eigen::MatrixXd selected(features.rows(), static_cast<Eigen::Index>(window.feature_indices.size()));
        for (std::size_t k = 0; k < window.feature_indices.size(); ++k) {
            selected.col(static_cast<Eigen::Index>(k)) = features.col(window.feature_indices[k] - 1);
        }
        // sift the full matrix once, then split (the dataset is one batch)
        const TransformResult imf = transform_matrix(selected, config.emd_axis, config.sift);

        Eigen::MatrixXd train_X(static_cast<Eigen::Index>(split.train.size()), imf.values.cols());
        std::vector<int> train_y(split.train.size());
        for (std::size_t k = 0; k < split.train.size(); ++k) {
            train_X.row(static_cast<Eigen::Index>(k)) = imf.values.row(split.train[k]);
            train_y[k] = int_labels[static_cast<std::size_t>(split.train[k])];
        }
        const BoostedEnsemble model = train(train_X, train_y, kNumFaultClasses, config.train);

        long correct = 0;
        for (int row : split.test) {
            const Prediction p = predict(model, imf.values.row(row));
            if (p.cls == int_labels[static_cast<std::size_t>(row)]) ++correct;
        }
        result.accuracies.push_back(100.0 * static_cast<double>(correct) /
                                    static_cast<double>(split.test.size()));
    }
    int best = 0;
    for (std::size_t i = 1; i < result.accuracies.size(); ++i) {
        if (result.accuracies[i] > result.accuracies[static_cast<std::size_t>(best)]) {
            best = static_cast<int>(i);
        }
    }
    result.best_window = windows[static_cast<std::size_t>(best)].rank_start;
    return result;
}

namespace {

MethodRow score_baseline(const std::string& name, std::span<const GasSample> samples,
                         std::span<const FaultClass> labels, const std::vector<int>& test_rows,
                         NoResultPolicy policy, const std::function<BaselineVerdict(const GasSample&)>& classify) {
    MethodRow row;
    row.method = name;
    std::array<long, kNumFaultClasses> actual_count{};
    std::array<long, kNumFaultClasses> correct{};
    long total = 0, total_correct = 0;
    for (int r : test_rows) {
        const FaultClass truth = labels[static_cast<std::size_t>(r)];
        const BaselineVerdict verdict = classify(samples[static_cast<std::size_t>(r)]);
        if (!verdict) {
            ++row.no_result_count;
            if (policy == NoResultPolicy::Exclude) continue;
        }
        ++actual_count[static_cast<std::size_t>(index_of(truth))];
        ++total;
        if (verdict && *verdict == truth) {
            ++correct[static_cast<std::size_t>(index_of(truth))];
            ++total_correct;
        }
    }
    for (int c = 0; c < kNumFaultClasses; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        row.per_class[idx] = actual_count[idx] > 0
                                 ? 100.0 * static_cast<double>(correct[idx]) / static_cast<double>(actual_count[idx])
                                 : 0.0;
    }
    row.average = total > 0 ? 100.0 * static_cast<double>(total_correct) / static_cast<double>(total) : 0.0;
    return row;
}

}  // namespace

MetricsReport compare_methods(std::span<const GasSample> samples,
                              const Eigen::Ref<const Eigen::MatrixXd>& imf_features,
                              std::span<const FaultClass> labels, const SplitIndices& split,
                              const EvalConfig& config, const RuleSet& rules,
                              HierarchicalModel* trained_model) {
    Eigen::MatrixXd train_X(static_cast<Eigen::Index>(split.train.size()), imf_features.cols());
    std::vector<FaultClass> train_y(split.train.size());
    for (std::size_t k = 0; k < split.train.size(); ++k) {
        train_X.row(static_cast<Eigen::Index>(k)) = imf_features.row(split.train[k]);
        train_y[k] = labels[static_cast<std::size_t>(split.train[k])];
    }
    const HierarchicalModel model = train_hierarchy(train_X, train_y, config.train);

    MetricsReport report;
    report.test_indices = split.test;
    for (int r : split.test) {
        report.test_actual.push_back(labels[static_cast<std::size_t>(r)]);
        report.test_predicted.push_back(predict_hierarchy(model, imf_features.row(r)).fault);
    }
    report.cm = confusion_matrix(report.test_actual, report.test_predicted);

    MethodRow proposed;
    proposed.method = "proposed";
    double sens_sum = 0.0;
    int sens_classes = 0;
    for (int c = 0; c < kNumFaultClasses; ++c) {
        const FaultClass cls = fault_from_index(c);
        if (report.cm.row(c).sum() > 0) {
            const double s = sensitivity(report.cm, cls);
            report.sensitivity_pct[static_cast<std::size_t>(c)] = s;
            proposed.per_class[static_cast<std::size_t>(c)] = s;
            sens_sum += s;
            ++sens_classes;
        } else {
            report.sensitivity_pct[static_cast<std::size_t>(c)] = 0.0;
        }
    }
    report.average_sensitivity = sens_classes > 0 ? sens_sum / sens_classes : 0.0;
    report.overall_accuracy_pct = overall_accuracy(report.cm);
    proposed.average = report.overall_accuracy_pct;
    report.methods.push_back(std::move(proposed));

    report.methods.push_back(score_baseline(
        "duval", samples, labels, split.test, config.no_result,
        [&](const GasSample& s) { return duval_classify(s, rules.duval); }));
    report.methods.push_back(score_baseline(
        "rogers", samples, labels, split.test, config.no_result,
        [&](const GasSample& s) { return rogers_classify(s, rules.rogers); }));
    report.methods.push_back(score_baseline(
        "iec", samples, labels, split.test, config.no_result,
        [&](const GasSample& s) { return iec_classify(s, rules.iec); }));

    if (trained_model) *trained_model = model;
    return report;
}

}  // namespace dgafd
