#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dgafd/boxplot.hpp"
#include "dgafd/errors.hpp"
#include "dgafd/pipeline.hpp"

namespace {

using namespace dgafd;

struct CommonOptions {
    std::uint64_t seed = 0;
    double train_fraction = 0.85;
    std::string emd_axis = "column";
    int window = 0;  // 0 = pick via sweep where applicable
    std::string rank_mode = "absolute";
    std::string rules_path;
    std::string out_dir;
    bool unstratified = false;
    bool exclude_no_result = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--seed", opt.seed, "RNG seed for the train/test split");
    cmd->add_option("--train-fraction", opt.train_fraction, "Training fraction of the split")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    cmd->add_option("--emd-axis", opt.emd_axis, "EMD axis: column (per feature) or row (per sample)")
        ->check(CLI::IsMember({"column", "row"}));
    cmd->add_option("--window", opt.window, "Feature window (1..26); omit to select via sweep")
        ->check(CLI::Range(1, 26));
    cmd->add_option("--rank-mode", opt.rank_mode, "Skewness ranking key: absolute or signed")
        ->check(CLI::IsMember({"absolute", "signed"}));
    cmd->add_option("--rules", opt.rules_path, "Rules file overriding the bundled constants");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_flag("--unstratified", opt.unstratified, "Disable stratified splitting");
    cmd->add_flag("--exclude-no-result", opt.exclude_no_result,
                  "Score baselines only on rows where they give a verdict");
}

PipelineConfig make_config(const CommonOptions& opt) {
    PipelineConfig cfg;
    cfg.eval.split.seed = opt.seed;
    cfg.eval.split.train_fraction = opt.train_fraction;
    cfg.eval.split.stratified = !opt.unstratified;
    cfg.eval.emd_axis = opt.emd_axis == "row" ? EmdAxis::Row : EmdAxis::Column;
    cfg.eval.rank_mode = opt.rank_mode == "signed" ? RankMode::Signed : RankMode::Absolute;
    cfg.eval.no_result =
        opt.exclude_no_result ? NoResultPolicy::Exclude : NoResultPolicy::CountAsWrong;
    if (opt.window > 0) {
        cfg.eval.window = opt.window;
        cfg.run_sweep = false;
    }
    cfg.rules_path = opt.rules_path;
    return cfg;
}

RuleSet rules_for(const CommonOptions& opt) {
    return opt.rules_path.empty() ? default_rules() : load_rules(opt.rules_path);
}

void print_class_counts(const Dataset& ds) {
    const auto counts = ds.class_counts();
    std::size_t labeled = 0;
    std::cout << "class counts:";
    for (const FaultClass c : kAllFaultClasses) {
        const auto n = counts[static_cast<std::size_t>(index_of(c))];
        labeled += n;
        std::cout << ' ' << to_string(c) << '=' << n;
    }
    if (labeled < ds.size()) std::cout << " unlabeled=" << (ds.size() - labeled);
    std::cout << '\n';
}

int cmd_ingest(const std::string& path) {
    const Dataset ds = ingest(path);
    std::cout << "parsed " << ds.size() << " samples from " << path << " (fingerprint "
              << ds.fingerprint << ")\n";
    print_class_counts(ds);
    return 0;
}

int cmd_features(const std::string& path, const CommonOptions& opt) {
    const Dataset ds = ingest(path);
    const Eigen::MatrixXd m = feature_matrix(ds.samples);
    std::ostringstream out;
    out << "id";
    for (int f = 1; f <= kNumFeatures; ++f) out << ",f" << f;
    out << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << ds.samples[static_cast<std::size_t>(i)].id;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.9g", m(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (opt.out_dir.empty()) {
        std::cout << out.str();
    } else {
        write_file_atomic((std::filesystem::path(opt.out_dir) / "features.csv").string(), out.str());
        std::cout << "wrote " << (std::filesystem::path(opt.out_dir) / "features.csv").string() << '\n';
    }
    return 0;
}

int cmd_rank(const std::string& path, const CommonOptions& opt) {
    const Dataset ds = ingest(path);
    const Eigen::MatrixXd m = feature_matrix(ds.samples);
    const SkewnessRanking ranking =
        rank_features(m, opt.rank_mode == "signed" ? RankMode::Signed : RankMode::Absolute);
    std::cout << "rank,feature,name,skewness\n";
    char buf[32];
    for (std::size_t r = 0; r < ranking.entries.size(); ++r) {
        const auto& e = ranking.entries[r];
        std::snprintf(buf, sizeof(buf), "%.9g", e.skewness);
        std::cout << (r + 1) << ',' << e.feature_index << ',' << feature_name(e.feature_index)
                  << ',' << buf << '\n';
    }
    if (!opt.out_dir.empty() && ds.fully_labeled()) {
        std::vector<int> numbers(kNumFeatures);
        for (int f = 0; f < kNumFeatures; ++f) numbers[static_cast<std::size_t>(f)] = f + 1;
        const auto records = boxplot_records(m, ds.labels(), numbers);
        std::ostringstream out;
        write_boxplot_csv(out, "raw-feature", records);
        write_file_atomic((std::filesystem::path(opt.out_dir) / "boxplot_raw.csv").string(), out.str());
    }
    return 0;
}

int cmd_sweep(const std::string& path, const CommonOptions& opt) {
    const Dataset ds = ingest(path);
    const PipelineConfig cfg = make_config(opt);
    const Eigen::MatrixXd m = feature_matrix(ds.samples);
    const SkewnessRanking ranking = rank_features(m, cfg.eval.rank_mode);
    const SweepResult sweep = sweep_windows(m, ds.labels(), ranking, cfg.eval.window_width, cfg.eval);
    const auto windows = enumerate_windows(ranking, cfg.eval.window_width);
    std::cout << "window,features,accuracy_pct\n";
    for (std::size_t i = 0; i < sweep.accuracies.size(); ++i) {
        std::cout << windows[i].rank_start << ',';
        for (std::size_t k = 0; k < windows[i].feature_indices.size(); ++k) {
            if (k) std::cout << ';';
            std::cout << windows[i].feature_indices[k];
        }
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.2f", sweep.accuracies[i]);
        std::cout << ',' << buf << '\n';
    }
    std::cout << "best window: " << sweep.best_window << '\n';
    return 0;
}

int cmd_train(const std::string& path, const std::string& model_path, const CommonOptions& opt) {
    const Dataset ds = ingest(path);
    PipelineConfig cfg = make_config(opt);
    const std::vector<FaultClass> labels = ds.labels();

    EvalConfig& eval = cfg.eval;
    const Eigen::MatrixXd features = feature_matrix(ds.samples);
    const SkewnessRanking ranking = rank_features(features, eval.rank_mode);
    if (cfg.run_sweep) {
        const SweepResult sweep = sweep_windows(features, labels, ranking, eval.window_width, eval);
        eval.window = sweep.best_window;
        std::cout << "sweep selected window " << eval.window << '\n';
    }
    const StageOutputs stages = prepare_stages(ds, eval, eval.window);

    ModelArtifact artifact;
    artifact.ranking = stages.ranking;
    artifact.window = stages.window;
    artifact.sift = eval.sift;
    artifact.emd_axis = eval.emd_axis;
    artifact.train_config = eval.train;
    artifact.dataset_fingerprint = ds.fingerprint;
    artifact.model = train_hierarchy(stages.imf.values, labels, eval.train);
    save_model(artifact, model_path);
    std::cout << "trained on " << ds.size() << " samples; model written to " << model_path << '\n';
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path) {
    const ModelArtifact artifact = load_model(model_path);
    const Dataset ds = ingest(data_path);

    // the stored window picks the feature columns; EMD runs on this batch
    Eigen::MatrixXd windowed(static_cast<Eigen::Index>(ds.size()),
                             static_cast<Eigen::Index>(artifact.window.feature_indices.size()));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const FeatureVector f = compute_features(ds.samples[i]);
        for (std::size_t k = 0; k < artifact.window.feature_indices.size(); ++k) {
            windowed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                f(artifact.window.feature_indices[k] - 1);
        }
    }
    const TransformResult imf = transform_matrix(windowed, artifact.emd_axis, artifact.sift);

    std::cout << "id,predicted,superclass,confidence,root_discharge,root_thermal,branch_p1,branch_p2,branch_p3\n";
    char buf[32];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        return std::string(buf);
    };
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto p = predict_hierarchy(artifact.model, imf.values.row(static_cast<Eigen::Index>(i)));
        std::cout << ds.samples[i].id << ',' << to_string(p.fault) << ',' << to_string(p.super_class)
                  << ',' << num(p.confidence) << ',' << num(p.root_probs[0]) << ','
                  << num(p.root_probs[1]) << ',' << num(p.branch_probs[0]) << ','
                  << num(p.branch_probs[1]) << ',' << num(p.branch_probs[2]) << '\n';
    }
    return 0;
}

int cmd_evaluate(const std::string& path, CommonOptions opt) {
    if (opt.window == 0) opt.window = 1;  // evaluation defaults to the first window
    const PipelineConfig cfg = make_config(opt);
    const PipelineResult result = run_pipeline(ingest(path), cfg, opt.out_dir);
    std::cout << result.report_text;
    return 0;
}

int cmd_baseline(const std::string& path, const std::string& method, const CommonOptions& opt) {
    const Dataset ds = ingest(path);
    const RuleSet rules = rules_for(opt);
    std::cout << "id,verdict,actual\n";
    long correct = 0, labeled = 0, no_result = 0;
    for (const GasSample& s : ds.samples) {
        BaselineVerdict v;
        if (method == "duval") {
            v = duval_classify(s, rules.duval);
        } else if (method == "rogers") {
            v = rogers_classify(s, rules.rogers);
        } else {
            v = iec_classify(s, rules.iec);
        }
        if (!v) ++no_result;
        std::cout << s.id << ',' << (v ? to_string(*v) : std::string_view("NoResult")) << ','
                  << (s.label ? to_string(*s.label) : std::string_view("")) << '\n';
        if (s.label) {
            ++labeled;
            if (v && *v == *s.label) ++correct;
        }
    }
    if (labeled > 0) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * static_cast<double>(correct) / static_cast<double>(labeled));
        std::cout << "accuracy: " << buf << "% (" << correct << "/" << labeled << ", no-result "
                  << no_result << ")\n";
    }
    return 0;
}

int cmd_pipeline(const std::string& path, const CommonOptions& opt) {
    const PipelineConfig cfg = make_config(opt);
    const std::string out_dir = opt.out_dir.empty() ? "dgafd-out" : opt.out_dir;
    const PipelineResult result = run_pipeline(ingest(path), cfg, out_dir);
    std::cout << result.report_text;
    std::cout << "\noutputs written under " << out_dir << "/\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DGA transformer fault diagnosis: ratio features, skewness ranking, "
                 "single-level EMD, hierarchical boosted-tree classification, and the "
                 "conventional Duval/Rogers/IEC diagnosers"};
    app.require_subcommand(1);

    std::string dataset_path, model_path, method;
    CommonOptions opt;

    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a dataset and print class counts");
    ingest_cmd->add_option("dataset", dataset_path, "CSV dataset")->required();

    auto* features_cmd = app.add_subcommand("features", "Emit the 37 ratio features per sample");
    features_cmd->add_option("dataset", dataset_path)->required();
    features_cmd->add_option("--out", opt.out_dir, "Output directory");

    auto* rank_cmd = app.add_subcommand("rank", "Rank features by skewness");
    rank_cmd->add_option("dataset", dataset_path)->required();
    rank_cmd->add_option("--rank-mode", opt.rank_mode)->check(CLI::IsMember({"absolute", "signed"}));
    rank_cmd->add_option("--out", opt.out_dir, "Also write box-plot data here");

    auto* sweep_cmd = app.add_subcommand("sweep", "Accuracy of every 12-wide feature window");
    sweep_cmd->add_option("dataset", dataset_path)->required();
    add_common_flags(sweep_cmd, opt);

    auto* train_cmd = app.add_subcommand("train", "Train and save a model artifact");
    train_cmd->add_option("dataset", dataset_path)->required();
    train_cmd->add_option("--model", model_path, "Artifact path")->required();
    add_common_flags(train_cmd, opt);

    auto* predict_cmd = app.add_subcommand("predict", "Predict faults with a saved model");
    predict_cmd->add_option("--model", model_path, "Artifact path")->required();
    predict_cmd->add_option("dataset", dataset_path)->required();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Split, train, and report metrics");
    evaluate_cmd->add_option("dataset", dataset_path)->required();
    add_common_flags(evaluate_cmd, opt);

    auto* baseline_cmd = app.add_subcommand("baseline", "Run a conventional rule-based diagnoser");
    baseline_cmd->add_option("dataset", dataset_path)->required();
    baseline_cmd->add_option("--method", method, "duval, rogers, or iec")
        ->required()
        ->check(CLI::IsMember({"duval", "rogers", "iec"}));
    baseline_cmd->add_option("--rules", opt.rules_path, "Rules file overriding the bundled constants");

    auto* pipeline_cmd = app.add_subcommand("pipeline", "Full end-to-end run with persisted stages");
    pipeline_cmd->add_option("dataset", dataset_path)->required();
    add_common_flags(pipeline_cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(dataset_path);
        if (features_cmd->parsed()) return cmd_features(dataset_path, opt);
        if (rank_cmd->parsed()) return cmd_rank(dataset_path, opt);
        if (sweep_cmd->parsed()) return cmd_sweep(dataset_path, opt);
        if (train_cmd->parsed()) return cmd_train(dataset_path, model_path, opt);
        if (predict_cmd->parsed()) return cmd_predict(model_path, dataset_path);
        if (evaluate_cmd->parsed()) return cmd_evaluate(dataset_path, opt);
        if (baseline_cmd->parsed()) return cmd_baseline(dataset_path, method, opt);
        if (pipeline_cmd->parsed()) return cmd_pipeline(dataset_path, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
