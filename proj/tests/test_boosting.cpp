#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dgafd/boosting.hpp"
#include "dgafd/errors.hpp"
#include "dgafd/random.hpp"

using namespace dgafd;

namespace {

struct OracleSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// brute-force enumeration of every (feature, midpoint) candidate; ties keep
// the lowest feature then the lowest threshold
OracleSplit exhaustive_best_split(const Eigen::MatrixXd& X, const Eigen::VectorXd& g,
                                  const Eigen::VectorXd& h, const TrainConfig& cfg) {
    OracleSplit best;
    const double G = g.sum();
    const double H = h.sum();
    for (int f = 0; f < X.cols(); ++f) {
        std::vector<double> values(static_cast<std::size_t>(X.rows()));
        for (Eigen::Index i = 0; i < X.rows(); ++i) values[static_cast<std::size_t>(i)] = X(i, f);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t k = 1; k < values.size(); ++k) {
            const double thr = values[k - 1] + (values[k] - values[k - 1]) / 2.0;
            double GL = 0.0, HL = 0.0;
            for (Eigen::Index i = 0; i < X.rows(); ++i) {
                if (X(i, f) < thr) {
                    GL += g[i];
                    HL += h[i];
                }
            }
            const double GR = G - GL;
            const double HR = H - HL;
            if (HL < cfg.min_child_hessian || HR < cfg.min_child_hessian) continue;
            const double gain = 0.5 * (GL * GL / (HL + cfg.l2_lambda) + GR * GR / (HR + cfg.l2_lambda) -
                                       G * G / (H + cfg.l2_lambda)) -
                                cfg.min_split_gain;
            if (!best.found || gain > best.gain) best = {true, f, thr, gain};
        }
    }
    return best;
}

// rows reaching each leaf, for the leaf-weight identity
void collect_leaf_stats(const Tree& tree, const Eigen::MatrixXd& X, const Eigen::VectorXd& g,
                        const Eigen::VectorXd& h, std::vector<double>& G, std::vector<double>& H) {
    G.assign(tree.nodes.size(), 0.0);
    H.assign(tree.nodes.size(), 0.0);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        int node = 0;
        while (!tree.nodes[static_cast<std::size_t>(node)].is_leaf()) {
            const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
            node = X(i, n.feature) < n.threshold ? n.left : n.right;
        }
        G[static_cast<std::size_t>(node)] += g[i];
        H[static_cast<std::size_t>(node)] += h[i];
    }
}

// two interleaved but linearly separable point clouds
void separable_two_class(std::mt19937_64& gen, Eigen::MatrixXd& X, std::vector<int>& y) {
    const int per_class = 50;
    X.resize(2 * per_class, 2);
    y.resize(2 * per_class);
    for (int i = 0; i < per_class; ++i) {
        X(2 * i, 0) = rng::uniform01(gen);
        X(2 * i, 1) = rng::uniform01(gen);
        y[static_cast<std::size_t>(2 * i)] = 0;
        X(2 * i + 1, 0) = 2.0 + rng::uniform01(gen);
        X(2 * i + 1, 1) = rng::uniform01(gen);
        y[static_cast<std::size_t>(2 * i + 1)] = 1;
    }
}

}  // namespace

TEST_CASE("softmax of equal logits is uniform") {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(6);
    const Eigen::VectorXd p = softmax_probabilities(z);
    for (int c = 0; c < 6; ++c) CHECK(p[c] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("softmax survives large logits") {
    Eigen::VectorXd z(2);
    z << 1000.0, 0.0;
    const Eigen::VectorXd p = softmax_probabilities(z);
    CHECK(std::isfinite(p[0]));
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("softmax closed form: [ln2, 0] -> [2/3, 1/3]") {
    Eigen::VectorXd z(2);
    z << std::log(2.0), 0.0;
    const Eigen::VectorXd p = softmax_probabilities(z);
    CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("multiclass gradients") {
    Eigen::VectorXd uniform = Eigen::VectorXd::Constant(6, 1.0 / 6.0);
    const auto [g, h] = gradients_multiclass(uniform, 0);
    CHECK(g[0] == doctest::Approx(-5.0 / 6.0).epsilon(1e-12));
    for (int c = 1; c < 6; ++c) CHECK(g[c] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    for (int c = 0; c < 6; ++c) CHECK(h[c] == doctest::Approx(5.0 / 36.0).epsilon(1e-12));

    Eigen::VectorXd onehot(3);
    onehot << 0.0, 1.0, 0.0;
    const auto [g2, h2] = gradients_multiclass(onehot, 1);
    CHECK(g2.cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd p(2);
    p << 2.0 / 3.0, 1.0 / 3.0;
    const auto [g3, h3] = gradients_multiclass(p, 1);
    CHECK(g3[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(g3[1] == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(h3[0] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(h3[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("single sample collapses to the leaf formula") {
    Eigen::MatrixXd X(1, 1);
    X << 0.0;
    Eigen::VectorXd g(1), h(1);
    g << 0.5;
    h << 0.25;
    TrainConfig cfg;
    const Tree t = grow_tree(X, g, h, cfg);
    REQUIRE(t.nodes.size() == 1);
    CHECK(t.nodes[0].weight == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("equal gradients admit no useful split") {
    Eigen::MatrixXd X(6, 1);
    X << 1, 2, 3, 4, 5, 6;
    Eigen::VectorXd g = Eigen::VectorXd::Constant(6, 0.3);
    Eigen::VectorXd h = Eigen::VectorXd::Constant(6, 0.5);
    TrainConfig cfg;
    cfg.min_child_hessian = 0.0;
    const Tree t = grow_tree(X, g, h, cfg);
    CHECK(t.nodes.size() == 1);
    CHECK(t.nodes[0].is_leaf());
}

TEST_CASE("4-sample toy split equals the 3-candidate enumeration") {
    Eigen::MatrixXd X(4, 1);
    X << 0.0, 1.0, 2.0, 3.0;
    Eigen::VectorXd g(4), h(4);
    g << -1.0, -0.8, 0.9, 1.1;
    h << 0.25, 0.25, 0.25, 0.25;
    TrainConfig cfg;
    cfg.min_child_hessian = 0.0;
    const OracleSplit oracle = exhaustive_best_split(X, g, h, cfg);
    REQUIRE(oracle.found);
    const Tree t = grow_tree(X, g, h, cfg);
    REQUIRE(!t.nodes[0].is_leaf());
    CHECK(t.nodes[0].feature == oracle.feature);
    CHECK(t.nodes[0].threshold == oracle.threshold);
    CHECK(oracle.threshold == 1.5);  // between the negative and positive gradients
}

TEST_CASE("root split matches exhaustive enumeration on random small data") {
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        const int rows = 2 + static_cast<int>(rng::below(gen, 19));
        const int cols = 1 + static_cast<int>(rng::below(gen, 3));
        Eigen::MatrixXd X(rows, cols);
        Eigen::VectorXd g(rows), h(rows);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                // small value alphabet forces duplicates and tie-breaks
                X(i, j) = static_cast<double>(rng::below(gen, 6));
            }
            g[i] = rng::uniform01(gen) * 2.0 - 1.0;
            h[i] = 0.05 + rng::uniform01(gen);
        }
        TrainConfig cfg;
        cfg.min_child_hessian = 0.0;
        cfg.max_depth = 1;
        const OracleSplit oracle = exhaustive_best_split(X, g, h, cfg);
        const Tree t = grow_tree(X, g, h, cfg);
        if (!oracle.found || oracle.gain <= 0.0) {
            CHECK(t.nodes[0].is_leaf());
        } else {
            REQUIRE(!t.nodes[0].is_leaf());
            CHECK(t.nodes[0].feature == oracle.feature);
            CHECK(t.nodes[0].threshold == doctest::Approx(oracle.threshold).epsilon(1e-15));
        }
    }
}

TEST_CASE("every leaf satisfies weight = -G/(H+lambda)") {
    std::mt19937_64 gen(103);
    for (int trial = 0; trial < 20; ++trial) {
        const int rows = 30;
        Eigen::MatrixXd X(rows, 3);
        Eigen::VectorXd g(rows), h(rows);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < 3; ++j) X(i, j) = rng::uniform01(gen);
            g[i] = rng::uniform01(gen) * 2.0 - 1.0;
            h[i] = 0.05 + rng::uniform01(gen);
        }
        TrainConfig cfg;
        cfg.min_child_hessian = 0.0;
        const Tree t = grow_tree(X, g, h, cfg);
        std::vector<double> G, H;
        collect_leaf_stats(t, X, g, h, G, H);
        for (std::size_t n = 0; n < t.nodes.size(); ++n) {
            if (!t.nodes[n].is_leaf()) continue;
            CHECK(t.nodes[n].weight ==
                  doctest::Approx(-G[n] / (H[n] + cfg.l2_lambda)).epsilon(1e-12));
        }
    }
}

TEST_CASE("training reaches 100% on a separable two-class set") {
    std::mt19937_64 gen(107);
    Eigen::MatrixXd X;
    std::vector<int> y;
    separable_two_class(gen, X, y);
    TrainConfig cfg;
    cfg.rounds = 200;
    const BoostedEnsemble model = train(X, y, 2, cfg);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        CHECK(predict(model, X.row(i)).cls == y[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("training twice gives identical predictions") {
    std::mt19937_64 gen(109);
    Eigen::MatrixXd X;
    std::vector<int> y;
    separable_two_class(gen, X, y);
    TrainConfig cfg;
    cfg.rounds = 20;
    const BoostedEnsemble a = train(X, y, 2, cfg);
    const BoostedEnsemble b = train(X, y, 2, cfg);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::RowVectorXd probe(2);
        probe << rng::uniform01(gen) * 3.0, rng::uniform01(gen);
        const Prediction pa = predict(a, probe);
        const Prediction pb = predict(b, probe);
        CHECK((pa.probs.array() == pb.probs.array()).all());
        CHECK(pa.cls == pb.cls);
    }
}

TEST_CASE("one round at depth one behaves like a softmax-updated stump") {
    Eigen::MatrixXd X(4, 1);
    X << 0.0, 1.0, 10.0, 11.0;
    const std::vector<int> y = {0, 0, 1, 1};
    TrainConfig cfg;
    cfg.rounds = 1;
    cfg.max_depth = 1;
    cfg.min_child_hessian = 0.0;  // total hessian is 1.0 here

    const BoostedEnsemble model = train(X, y, 2, cfg);
    REQUIRE(model.trees.size() == 1);

    // hand-computed single boosting step from uniform probabilities:
    // p = 1/2 for both classes; class 0: g = p - 1[y=0], h = 1/4.
    // stump splits at 5.5; left leaf g sum = -1, h sum = 0.5
    // -> weight = 1/1.5 = 2/3; right leaf = -2/3 (signs flip per side/class)
    const double w = 1.0 / 1.5;
    const double eta = cfg.learning_rate;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double side = X(i, 0) < 5.5 ? 1.0 : -1.0;
        Eigen::VectorXd logits(2);
        logits << eta * side * w, -eta * side * w;
        const Eigen::VectorXd expected = softmax_probabilities(logits);
        const Prediction p = predict(model, X.row(i));
        CHECK(p.probs[0] == doctest::Approx(expected[0]).epsilon(1e-12));
        CHECK(p.probs[1] == doctest::Approx(expected[1]).epsilon(1e-12));
        CHECK(p.cls == y[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("training log-loss is non-increasing") {
    std::mt19937_64 gen(113);
    Eigen::MatrixXd X;
    std::vector<int> y;
    separable_two_class(gen, X, y);
    TrainConfig cfg;
    cfg.rounds = 100;
    const BoostedEnsemble model = train(X, y, 2, cfg);
    REQUIRE(model.train_loss.size() == 100);
    for (std::size_t r = 1; r < model.train_loss.size(); ++r) {
        CHECK(model.train_loss[r] <= model.train_loss[r - 1] + 1e-9);
    }
}

TEST_CASE("single-class data is rejected") {
    Eigen::MatrixXd X(3, 1);
    X << 1, 2, 3;
    const std::vector<int> y = {1, 1, 1};
    CHECK_THROWS_AS(train(X, y, 2, TrainConfig{}), SingleClassData);
}

TEST_CASE("empty ensemble predicts uniformly with class 0") {
    BoostedEnsemble model;
    model.n_classes = 6;
    model.n_features = 3;
    Eigen::RowVectorXd x(3);
    x << 1.0, 2.0, 3.0;
    const Prediction p = predict(model, x);
    CHECK(p.cls == 0);
    for (int c = 0; c < 6; ++c) CHECK(p.probs[c] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("prediction rejects the wrong feature count") {
    BoostedEnsemble model;
    model.n_classes = 2;
    model.n_features = 4;
    Eigen::RowVectorXd x(3);
    x << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(predict(model, x), DimensionMismatch);
}

TEST_CASE("probabilities sum to one") {
    std::mt19937_64 gen(127);
    Eigen::MatrixXd X;
    std::vector<int> y;
    separable_two_class(gen, X, y);
    TrainConfig cfg;
    cfg.rounds = 15;
    const BoostedEnsemble model = train(X, y, 2, cfg);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::RowVectorXd probe(2);
        probe << rng::uniform01(gen) * 4.0 - 1.0, rng::uniform01(gen) * 4.0 - 1.0;
        CHECK(predict(model, probe).probs.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("permuting training rows leaves predictions unchanged") {
    std::mt19937_64 gen(131);
    Eigen::MatrixXd X(40, 2);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) {
        X(i, 0) = static_cast<double>(rng::below(gen, 8));
        X(i, 1) = static_cast<double>(rng::below(gen, 8));
        y[static_cast<std::size_t>(i)] = static_cast<int>(rng::below(gen, 3));
    }
    TrainConfig cfg;
    cfg.rounds = 10;

    std::vector<int> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    rng::shuffle(perm, gen);
    Eigen::MatrixXd Xp(40, 2);
    std::vector<int> yp(40);
    for (int i = 0; i < 40; ++i) {
        Xp.row(i) = X.row(perm[static_cast<std::size_t>(i)]);
        yp[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }

    const BoostedEnsemble a = train(X, y, 3, cfg);
    const BoostedEnsemble b = train(Xp, yp, 3, cfg);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::RowVectorXd probe(2);
        probe << rng::uniform01(gen) * 8.0, rng::uniform01(gen) * 8.0;
        const Prediction pa = predict(a, probe);
        const Prediction pb = predict(b, probe);
        CHECK(pa.cls == pb.cls);
        CHECK((pa.probs - pb.probs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
