#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dgafd {

struct TrainConfig {
    int rounds = 100;
    int max_depth = 4;
    double learning_rate = 0.3;
    double l2_lambda = 1.0;
    double min_split_gain = 0.0;  // gamma
    double min_child_hessian = 1.0;
    std::uint64_t seed = 0;  // reserved for subsampling; exact training ignores it
};

/// One tree node: interior nodes route x[feature] < threshold to the left
/// child, >= threshold to the right; leaves carry an additive weight.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double weight = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double value(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
        int i = 0;
        while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
            const TreeNode& n = nodes[static_cast<std::size_t>(i)];
            i = x[n.feature] < n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(i)].weight;
    }
};

/// Softmax-boosted forest: `trees[round][class]`, scores start at base_score
/// and accumulate learning_rate * leaf weight per round.
struct BoostedEnsemble {
    int n_classes = 0;
    int n_features = 0;
    double learning_rate = 0.3;
    double base_score = 0.0;
    std::vector<std::vector<Tree>> trees;
    std::vector<double> train_loss;  // mean multiclass log-loss after each round
};

/// Numerically stable softmax (max subtraction); output sums to 1.
Eigen::VectorXd softmax_probabilities(const Eigen::Ref<const Eigen::VectorXd>& logits);

/// Per-class first/second order statistics of softmax cross-entropy:
/// g_c = p_c - [c == true_class], h_c = p_c * (1 - p_c).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gradients_multiclass(
    const Eigen::Ref<const Eigen::VectorXd>& probs, int true_class);

/// Exact greedy regression tree on (g, h): every split candidate is the
/// midpoint between consecutive distinct sorted feature values, gain is the
/// second-order reduction minus min_split_gain, leaves use -G/(H+lambda).
/// Ties keep the lowest feature index, then the lowest threshold.
Tree grow_tree(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& g,
               const Eigen::Ref<const Eigen::VectorXd>& h, const TrainConfig& config);

/// Trains `rounds` x `n_classes` trees. Throws SingleClassData when the
/// labels hold fewer than two distinct classes.
BoostedEnsemble train(const Eigen::Ref<const Eigen::MatrixXd>& X, std::span<const int> labels,
                      int n_classes, const TrainConfig& config);

struct Prediction {
    Eigen::VectorXd probs;
    int cls = 0;
};

Eigen::VectorXd decision_scores(const BoostedEnsemble& model,
                                const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Class probabilities and argmax class (lowest index on ties).
/// Throws DimensionMismatch when x disagrees with the training width.
Prediction predict(const BoostedEnsemble& model, const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Mean softmax cross-entropy of the model on (X, labels).
double multiclass_log_loss(const BoostedEnsemble& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                           std::span<const int> labels);

}  // namespace dgafd
