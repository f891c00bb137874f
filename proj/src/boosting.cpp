#include "dgafd/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "dgafd/errors.hpp"

namespace dgafd {

namespace {

struct SplitCandidate {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

double structure_score(double G, double H, double lambda) { return G * G / (H + lambda); }

// Best split over the rows in `rows`, exact greedy over every feature and
// every midpoint between consecutive distinct sorted values.
SplitCandidate best_split(const Eigen::Ref<const Eigen::MatrixXd>& X,
                          const Eigen::Ref<const Eigen::VectorXd>& g,
                          const Eigen::Ref<const Eigen::VectorXd>& h, const std::vector<int>& rows,
                          const TrainConfig& cfg) {
    SplitCandidate best;
    double G = 0.0, H = 0.0;
    for (int r : rows) {
        G += g[r];
        H += h[r];
    }
    const double parent_score = structure_score(G, H, cfg.l2_lambda);

    std::vector<int> order(rows);
    for (int f = 0; f < X.cols(); ++f) {
        std::sort(order.begin(), order.end(), [&](int a, int b) { return X(a, f) < X(b, f); });
        double GL = 0.0, HL = 0.0;
        for (std::size_t k = 1; k < order.size(); ++k) {
            const int prev = order[k - 1];
            GL += g[prev];
            HL += h[prev];
            const double lo = X(prev, f);
            const double hi = X(order[k], f);
            if (lo == hi) continue;
            const double HR = H - HL;
            if (HL < cfg.min_child_hessian || HR < cfg.min_child_hessian) continue;
            const double GR = G - GL;
            const double gain = 0.5 * (structure_score(GL, HL, cfg.l2_lambda) +
                                       structure_score(GR, HR, cfg.l2_lambda) - parent_score) -
                                cfg.min_split_gain;
            if (!best.found || gain > best.gain) {
                best = {true, f, lo + (hi - lo) / 2.0, gain};
            }
        }
    }
    return best;
}

int build_node(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& g,
               const Eigen::Ref<const Eigen::VectorXd>& h, std::vector<int>&& rows, int depth,
               const TrainConfig& cfg, Tree& tree) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    SplitCandidate split;
    if (depth < cfg.max_depth && rows.size() > 1) {
        split = best_split(X, g, h, rows, cfg);
    }
    if (!split.found || split.gain <= 0.0) {
        double G = 0.0, H = 0.0;
        for (int r : rows) {
            G += g[r];
            H += h[r];
        }
        tree.nodes[static_cast<std::size_t>(id)].weight = -G / (H + cfg.l2_lambda);
        return id;
    }

    std::vector<int> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (int r : rows) {
        (X(r, split.feature) < split.threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = build_node(X, g, h, std::move(left_rows), depth + 1, cfg, tree);
    const int right = build_node(X, g, h, std::move(right_rows), depth + 1, cfg, tree);
    TreeNode& n = tree.nodes[static_cast<std::size_t>(id)];
    n.feature = split.feature;
    n.threshold = split.threshold;
    n.left = left;
    n.right = right;
    return id;
}

}  // namespace

Eigen::VectorXd softmax_probabilities(const Eigen::Ref<const Eigen::VectorXd>& logits) {
    const double peak = logits.maxCoeff();
    Eigen::VectorXd p = (logits.array() - peak).exp();
    p /= p.sum();
    return p;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gradients_multiclass(
    const Eigen::Ref<const Eigen::VectorXd>& probs, int true_class) {
    Eigen::VectorXd g = probs;
    g[true_class] -= 1.0;
    Eigen::VectorXd h = probs.array() * (1.0 - probs.array());
    return {std::move(g), std::move(h)};
}

Tree grow_tree(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& g,
               const Eigen::Ref<const Eigen::VectorXd>& h, const TrainConfig& config) {
    Tree tree;
    std::vector<int> rows(static_cast<std::size_t>(X.rows()));
    std::iota(rows.begin(), rows.end(), 0);
    build_node(X, g, h, std::move(rows), 0, config, tree);
    return tree;
}

BoostedEnsemble train(const Eigen::Ref<const Eigen::MatrixXd>& X, std::span<const int> labels,
                      int n_classes, const TrainConfig& config) {
    const Eigen::Index M = X.rows();
    if (static_cast<std::size_t>(M) != labels.size()) {
        throw LengthMismatch("row count " + std::to_string(M) + " != label count " +
                             std::to_string(labels.size()));
    }
    if (std::set<int>(labels.begin(), labels.end()).size() < 2) {
        throw SingleClassData("training data holds fewer than two distinct classes");
    }
    for (int label : labels) {
        if (label < 0 || label >= n_classes) {
            throw Error("label " + std::to_string(label) + " outside 0.." +
                        std::to_string(n_classes - 1));
        }
    }

    BoostedEnsemble model;
    model.n_classes = n_classes;
    model.n_features = static_cast<int>(X.cols());
    model.learning_rate = config.learning_rate;
    model.base_score = 0.0;
    model.trees.reserve(static_cast<std::size_t>(config.rounds));
    model.train_loss.reserve(static_cast<std::size_t>(config.rounds));

    Eigen::MatrixXd logits = Eigen::MatrixXd::Constant(M, n_classes, model.base_score);
    Eigen::MatrixXd probs(M, n_classes);
    Eigen::VectorXd g(M), h(M);

    for (int round = 0; round < config.rounds; ++round) {
        for (Eigen::Index i = 0; i < M; ++i) {
            probs.row(i) = softmax_probabilities(logits.row(i).transpose()).transpose();
        }
        std::vector<Tree> round_trees;
        round_trees.reserve(static_cast<std::size_t>(n_classes));
        for (int c = 0; c < n_classes; ++c) {
            for (Eigen::Index i = 0; i < M; ++i) {
                const double p = probs(i, c);
                g[i] = p - (labels[static_cast<std::size_t>(i)] == c ? 1.0 : 0.0);
                h[i] = p * (1.0 - p);
            }
            Tree tree = grow_tree(X, g, h, config);
            for (Eigen::Index i = 0; i < M; ++i) {
                logits(i, c) += config.learning_rate * tree.value(X.row(i));
            }
            round_trees.push_back(std::move(tree));
        }
        model.trees.push_back(std::move(round_trees));

        double loss = 0.0;
        for (Eigen::Index i = 0; i < M; ++i) {
            const Eigen::VectorXd p = softmax_probabilities(logits.row(i).transpose());
            loss -= std::log(std::max(p[labels[static_cast<std::size_t>(i)]], 1e-300));
        }
        model.train_loss.push_back(loss / static_cast<double>(M));
    }
    return model;
}

Eigen::VectorXd decision_scores(const BoostedEnsemble& model,
                                const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    Eigen::VectorXd scores = Eigen::VectorXd::Constant(model.n_classes, model.base_score);
    for (const auto& round_trees : model.trees) {
        for (int c = 0; c < model.n_classes; ++c) {
            scores[c] += model.learning_rate * round_trees[static_cast<std::size_t>(c)].value(x);
        }
    }
    return scores;
}

Prediction predict(const BoostedEnsemble& model, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    if (x.size() != model.n_features) {
        throw DimensionMismatch("expected " + std::to_string(model.n_features) + " features, got " +
                                std::to_string(x.size()));
    }
    Prediction out;
    out.probs = softmax_probabilities(decision_scores(model, x));
    out.cls = 0;
    for (int c = 1; c < model.n_classes; ++c) {
        if (out.probs[c] > out.probs[out.cls]) out.cls = c;
    }
    return out;
}

double multiclass_log_loss(const BoostedEnsemble& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                           std::span<const int> labels) {
    double loss = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Prediction p = predict(model, X.row(i));
        loss -= std::log(std::max(p.probs[labels[static_cast<std::size_t>(i)]], 1e-300));
    }
    return loss / static_cast<double>(X.rows());
}

}  // namespace dgafd
