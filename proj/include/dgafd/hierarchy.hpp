#pragma once

#include <Eigen/Dense>
#include <span>

#include "dgafd/boosting.hpp"
#include "dgafd/fault.hpp"

namespace dgafd {

/// Two-level scheme: a 2-class root separates Discharge from Thermal, then a
/// 3-class branch resolves {PD, D1, D2} or {T1, T2, T3}. All three models
/// share the same feature space.
struct HierarchicalModel {
    BoostedEnsemble root;
    BoostedEnsemble discharge_branch;
    BoostedEnsemble thermal_branch;
    int feature_count = 12;
};

/// Root trained on superclass labels over all rows; each branch trained only
/// on the rows of its superclass. Throws MissingBranchData when a branch
/// subset holds fewer than two distinct classes.
HierarchicalModel train_hierarchy(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                  std::span<const FaultClass> labels, const TrainConfig& config);

struct HierarchicalPrediction {
    FaultClass fault = FaultClass::PD;
    SuperClass super_class = SuperClass::Discharge;
    Eigen::Vector2d root_probs;
    Eigen::Vector3d branch_probs;
    double confidence = 0.0;  // root prob x branch prob of the chosen path
};

/// Hard routing: argmax at the root picks the branch, the branch picks the
/// fault; the result always lies inside the root-chosen superclass.
HierarchicalPrediction predict_hierarchy(const HierarchicalModel& model,
                                         const Eigen::Ref<const Eigen::RowVectorXd>& x);

}  // namespace dgafd
