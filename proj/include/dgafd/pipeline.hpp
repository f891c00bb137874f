#pragma once

#include <optional>
#include <string>

#include "dgafd/eval.hpp"
#include "dgafd/model_io.hpp"

namespace dgafd {

struct PipelineConfig {
    EvalConfig eval;
    bool run_sweep = true;  // false: use eval.window as-is
    std::string rules_path;  // empty: bundled defaults
};

struct PipelineResult {
    MetricsReport report;
    ModelArtifact artifact;
    std::optional<SweepResult> sweep;
    SkewnessRanking ranking;
    FeatureWindow window;
    std::string report_text;
};

/// Derived matrices of one dataset, cached stage by stage.
struct StageOutputs {
    Eigen::MatrixXd features;       // N x 37
    SkewnessRanking ranking;
    FeatureWindow window;
    Eigen::MatrixXd windowed;       // N x width, columns in rank order
    TransformResult imf;
};

/// features -> rank -> window -> EMD for a fixed window choice.
StageOutputs prepare_stages(const Dataset& dataset, const EvalConfig& config, int window);

/// Full run: ingest -> features -> rank -> (sweep) -> window -> EMD -> split
/// -> hierarchical train -> evaluate -> baseline comparison. When `out_dir`
/// is non-empty all stage outputs are persisted beneath it.
PipelineResult run_pipeline(const std::string& dataset_path, const PipelineConfig& config,
                            const std::string& out_dir);

/// Same, starting from an already-parsed dataset.
PipelineResult run_pipeline(const Dataset& dataset, const PipelineConfig& config,
                            const std::string& out_dir);

std::string render_report(const Dataset& dataset, const PipelineConfig& config,
                          const PipelineResult& result);

}  // namespace dgafd
