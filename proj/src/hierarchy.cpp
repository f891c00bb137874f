#include "dgafd/hierarchy.hpp"

#include <set>
#include <string>
#include <vector>

#include "dgafd/errors.hpp"

namespace dgafd {

namespace {

struct BranchRows {
    std::vector<int> rows;
    std::vector<int> local_labels;  // 0..2 within the superclass
};

BranchRows collect_branch(std::span<const FaultClass> labels, SuperClass super) {
    BranchRows b;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (super_class_of(labels[i]) == super) {
            b.rows.push_back(static_cast<int>(i));
            b.local_labels.push_back(branch_index_of(labels[i]));
        }
    }
    return b;
}

void require_trainable(const BranchRows& branch, SuperClass super) {
    const std::set<int> distinct(branch.local_labels.begin(), branch.local_labels.end());
    if (distinct.size() < 2) {
        throw MissingBranchData(std::string(to_string(super)) +
                                " branch holds fewer than two distinct classes (" +
                                std::to_string(distinct.size()) + ")");
    }
}

BoostedEnsemble train_branch(const Eigen::Ref<const Eigen::MatrixXd>& X, const BranchRows& branch,
                             const TrainConfig& config) {
    Eigen::MatrixXd subset(static_cast<Eigen::Index>(branch.rows.size()), X.cols());
    for (std::size_t k = 0; k < branch.rows.size(); ++k) {
        subset.row(static_cast<Eigen::Index>(k)) = X.row(branch.rows[k]);
    }
    return train(subset, branch.local_labels, 3, config);
}

}  // namespace

HierarchicalModel train_hierarchy(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                  std::span<const FaultClass> labels, const TrainConfig& config) {
    if (static_cast<std::size_t>(X.rows()) != labels.size()) {
        throw LengthMismatch("row count " + std::to_string(X.rows()) + " != label count " +
                             std::to_string(labels.size()));
    }
    const BranchRows discharge = collect_branch(labels, SuperClass::Discharge);
    const BranchRows thermal = collect_branch(labels, SuperClass::Thermal);
    require_trainable(discharge, SuperClass::Discharge);
    require_trainable(thermal, SuperClass::Thermal);

    HierarchicalModel model;
    model.feature_count = static_cast<int>(X.cols());
    model.discharge_branch = train_branch(X, discharge, config);
    model.thermal_branch = train_branch(X, thermal, config);

    std::vector<int> super_labels(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        super_labels[i] = static_cast<int>(super_class_of(labels[i]));
    }
    model.root = train(X, super_labels, 2, config);
    return model;
}

HierarchicalPrediction predict_hierarchy(const HierarchicalModel& model,
                                         const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    if (x.size() != model.feature_count) {
        throw DimensionMismatch("expected " + std::to_string(model.feature_count) +
                                " features, got " + std::to_string(x.size()));
    }
    HierarchicalPrediction out;
    const Prediction root = predict(model.root, x);
    out.root_probs = root.probs;
    out.super_class = static_cast<SuperClass>(root.cls);

    const BoostedEnsemble& branch =
        out.super_class == SuperClass::Discharge ? model.discharge_branch : model.thermal_branch;
    const Prediction leaf = predict(branch, x);
    out.branch_probs = leaf.probs;
    out.fault = fault_from_branch(out.super_class, leaf.cls);
    out.confidence = root.probs[root.cls] * leaf.probs[leaf.cls];
    return out;
}

}  // namespace dgafd
