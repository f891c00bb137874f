#include "dgafd/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dgafd/boxplot.hpp"
#include "dgafd/errors.hpp"

namespace dgafd {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_features_csv(const fs::path& path, const Dataset& ds, const Eigen::MatrixXd& features) {
    std::ostringstream out;
    out << "id";
    for (int f = 1; f <= kNumFeatures; ++f) out << ",f" << f;
    out << '\n';
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        out << ds.samples[static_cast<std::size_t>(i)].id;
        for (Eigen::Index j = 0; j < features.cols(); ++j) out << ',' << fmtg(features(i, j));
        out << '\n';
    }
    write_file_atomic(path.string(), out.str());
}

void write_ranking_csv(const fs::path& path, const SkewnessRanking& ranking) {
    std::ostringstream out;
    out << "rank,feature,name,skewness\n";
    for (std::size_t r = 0; r < ranking.entries.size(); ++r) {
        const auto& e = ranking.entries[r];
        out << (r + 1) << ',' << e.feature_index << ',' << feature_name(e.feature_index) << ','
            << fmtg(e.skewness) << '\n';
    }
    write_file_atomic(path.string(), out.str());
}

void write_sweep_csv(const fs::path& path, const SweepResult& sweep,
                     const std::vector<FeatureWindow>& windows) {
    std::ostringstream out;
    out << "window,features,accuracy_pct\n";
    for (std::size_t i = 0; i < sweep.accuracies.size(); ++i) {
        out << windows[i].rank_start << ',';
        for (std::size_t k = 0; k < windows[i].feature_indices.size(); ++k) {
            if (k) out << ';';
            out << windows[i].feature_indices[k];
        }
        out << ',' << fmt(sweep.accuracies[i]) << '\n';
    }
    write_file_atomic(path.string(), out.str());
}

void write_confusion_csv(const fs::path& path, const ConfusionMatrix& cm) {
    std::ostringstream out;
    out << "actual\\predicted";
    for (const FaultClass c : kAllFaultClasses) out << ',' << to_string(c);
    out << '\n';
    for (const FaultClass a : kAllFaultClasses) {
        out << to_string(a);
        for (const FaultClass p : kAllFaultClasses) out << ',' << cm(index_of(a), index_of(p));
        out << '\n';
    }
    write_file_atomic(path.string(), out.str());
}

void write_comparison_csv(const fs::path& path, const MetricsReport& report) {
    std::ostringstream out;
    out << "method";
    for (const FaultClass c : kAllFaultClasses) out << ',' << to_string(c);
    out << ",average,no_result\n";
    for (const auto& row : report.methods) {
        out << row.method;
        for (double v : row.per_class) out << ',' << fmt(v);
        out << ',' << fmt(row.average) << ',' << row.no_result_count << '\n';
    }
    write_file_atomic(path.string(), out.str());
}

}  // namespace

StageOutputs prepare_stages(const Dataset& dataset, const EvalConfig& config, int window) {
    StageOutputs s;
    s.features = feature_matrix(dataset.samples);
    s.ranking = rank_features(s.features, config.rank_mode);
    const auto windows = enumerate_windows(s.ranking, config.window_width);
    if (window < 1 || window > static_cast<int>(windows.size())) {
        throw BadWidth("window " + std::to_string(window) + " out of range 1.." +
                       std::to_string(windows.size()));
    }
    s.window = windows[static_cast<std::size_t>(window - 1)];
    s.windowed.resize(s.features.rows(), static_cast<Eigen::Index>(s.window.feature_indices.size()));
    for (std::size_t k = 0; k < s.window.feature_indices.size(); ++k) {
        s.windowed.col(static_cast<Eigen::Index>(k)) = s.features.col(s.window.feature_indices[k] - 1);
    }
    s.imf = transform_matrix(s.windowed, config.emd_axis, config.sift);
    return s;
}

PipelineResult run_pipeline(const std::string& dataset_path, const PipelineConfig& config,
                            const std::string& out_dir) {
    return run_pipeline(ingest(dataset_path), config, out_dir);
}

PipelineResult run_pipeline(const Dataset& dataset, const PipelineConfig& config,
                            const std::string& out_dir) {
    const RuleSet rules =
        config.rules_path.empty() ? default_rules() : load_rules(config.rules_path);
    const std::vector<FaultClass> labels = dataset.labels();

    PipelineResult result;
    EvalConfig eval_cfg = config.eval;

    // stage: features + ranking (window choice may still change below)
    Eigen::MatrixXd features = feature_matrix(dataset.samples);
    result.ranking = rank_features(features, eval_cfg.rank_mode);

    if (config.run_sweep) {
        result.sweep = sweep_windows(features, labels, result.ranking, eval_cfg.window_width, eval_cfg);
        eval_cfg.window = result.sweep->best_window;
    }

    const StageOutputs stages = prepare_stages(dataset, eval_cfg, eval_cfg.window);
    result.window = stages.window;

    const SplitIndices split = split_dataset(labels, eval_cfg.split);
    HierarchicalModel model;
    result.report = compare_methods(dataset.samples, stages.imf.values, labels, split, eval_cfg,
                                    rules, &model);

    result.artifact.schema_version = kModelSchemaVersion;
    result.artifact.ranking = stages.ranking;
    result.artifact.window = stages.window;
    result.artifact.sift = eval_cfg.sift;
    result.artifact.emd_axis = eval_cfg.emd_axis;
    result.artifact.train_config = eval_cfg.train;
    result.artifact.dataset_fingerprint = dataset.fingerprint;
    result.artifact.model = model;

    PipelineConfig effective = config;
    effective.eval = eval_cfg;
    result.report_text = render_report(dataset, effective, result);

    if (!out_dir.empty()) {
        const fs::path root(out_dir);
        write_features_csv(root / "features" / "features.csv", dataset, stages.features);
        {
            std::vector<int> numbers(kNumFeatures);
            for (int f = 0; f < kNumFeatures; ++f) numbers[static_cast<std::size_t>(f)] = f + 1;
            const auto records = boxplot_records(stages.features, labels, numbers);
            std::ostringstream out;
            write_boxplot_csv(out, "raw-feature", records);
            write_file_atomic((root / "features" / "boxplot_raw.csv").string(), out.str());
        }
        write_ranking_csv(root / "ranking" / "ranking.csv", result.ranking);
        if (result.sweep) {
            write_sweep_csv(root / "sweep" / "sweep.csv", *result.sweep,
                            enumerate_windows(result.ranking, eval_cfg.window_width));
        }
        save_model(result.artifact, (root / "model" / "model.json").string());
        write_confusion_csv(root / "report" / "confusion.csv", result.report.cm);
        write_comparison_csv(root / "report" / "comparison.csv", result.report);
        {
            std::vector<int> positions(stages.window.feature_indices.size());
            for (std::size_t k = 0; k < positions.size(); ++k) positions[k] = static_cast<int>(k) + 1;
            const auto records = boxplot_records(stages.imf.values, labels, positions);
            std::ostringstream out;
            write_boxplot_csv(out, "imf", records);
            write_file_atomic((root / "report" / "boxplot_imf.csv").string(), out.str());
        }
        write_file_atomic((root / "report" / "report.txt").string(), result.report_text);
    }
    return result;
}

std::string render_report(const Dataset& dataset, const PipelineConfig& config,
                          const PipelineResult& result) {
    const EvalConfig& cfg = config.eval;
    std::ostringstream out;
    out << "DGA fault diagnosis report\n";
    out << "==========================\n\n";
    out << "dataset: " << dataset.size() << " samples, fingerprint " << dataset.fingerprint << "\n";
    const auto counts = dataset.class_counts();
    out << "class counts:";
    for (const FaultClass c : kAllFaultClasses) {
        out << ' ' << to_string(c) << '=' << counts[static_cast<std::size_t>(index_of(c))];
    }
    out << "\n";
    out << "split: train_fraction=" << fmt(cfg.split.train_fraction) << " seed=" << cfg.split.seed
        << " stratified=" << (cfg.split.stratified ? "yes" : "no") << "\n";
    out << "emd: axis=" << (cfg.emd_axis == EmdAxis::Column ? "column" : "row")
        << " sd_threshold=" << fmtg(cfg.sift.sd_threshold)
        << " max_iterations=" << cfg.sift.max_sift_iterations << "\n";
    out << "ranking mode: " << (cfg.rank_mode == RankMode::Absolute ? "absolute" : "signed")
        << "\n";
    out << "boosting: rounds=" << cfg.train.rounds << " max_depth=" << cfg.train.max_depth
        << " learning_rate=" << fmtg(cfg.train.learning_rate)
        << " l2_lambda=" << fmtg(cfg.train.l2_lambda) << "\n\n";

    if (result.sweep) {
        out << "window sweep (width " << cfg.window_width << "):\n";
        for (std::size_t i = 0; i < result.sweep->accuracies.size(); ++i) {
            out << "  window " << (i + 1) << ": " << fmt(result.sweep->accuracies[i]) << "%\n";
        }
        out << "  best window: " << result.sweep->best_window << "\n\n";
    }

    out << "selected window " << result.window.rank_start << " (features";
    for (int f : result.window.feature_indices) out << ' ' << f;
    out << ")\n\n";

    out << "confusion matrix (rows actual, columns predicted):\n";
    out << "        ";
    for (const FaultClass c : kAllFaultClasses) out << ' ' << to_string(c) << "  ";
    out << "  sensitivity\n";
    for (const FaultClass a : kAllFaultClasses) {
        const int i = index_of(a);
        const auto row_total = result.report.cm.row(i).sum();
        out << "  " << to_string(a) << " (" << row_total << ")";
        for (const FaultClass p : kAllFaultClasses) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "%4lld", static_cast<long long>(result.report.cm(i, index_of(p))));
            out << buf;
        }
        out << "   "
            << (row_total > 0 ? fmt(result.report.sensitivity_pct[static_cast<std::size_t>(i)]) + "%"
                              : std::string("n/a"))
            << "\n";
    }
    out << "average sensitivity: " << fmt(result.report.average_sensitivity) << "%\n";
    out << "overall accuracy:    " << fmt(result.report.overall_accuracy_pct) << "%\n\n";

    out << "method comparison on the shared test split (per-class % correct; no-result "
        << (cfg.no_result == NoResultPolicy::CountAsWrong ? "counts as wrong" : "rows excluded")
        << "):\n";
    out << "  method   ";
    for (const FaultClass c : kAllFaultClasses) out << "    " << to_string(c);
    out << "    avg   no-result\n";
    for (const auto& row : result.report.methods) {
        char name[16];
        std::snprintf(name, sizeof(name), "%-8s", row.method.c_str());
        out << "  " << name;
        for (double v : row.per_class) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%6.1f", v);
            out << buf;
        }
        char avg[16];
        std::snprintf(avg, sizeof(avg), "%7.2f", row.average);
        out << avg << "   " << row.no_result_count << "\n";
    }
    out << "\nreference accuracies reported in the literature on this corpus: "
           "ensemble learning 84.21%, BA-PNN 63.16%, HGA-SVM 77.19%\n";
    return out.str();
}

}  // namespace dgafd
