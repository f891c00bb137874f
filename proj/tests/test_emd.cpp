#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "dgafd/emd.hpp"
#include "dgafd/errors.hpp"
#include "dgafd/random.hpp"

using namespace dgafd;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Eigen::VectorXd da = a.array() - a.mean();
    const Eigen::VectorXd db = b.array() - b.mean();
    const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
    return denom > 0.0 ? da.dot(db) / denom : 0.0;
}

// smooth random signal: a handful of sinusoids with random phase
Eigen::VectorXd random_smooth_signal(std::mt19937_64& gen, int n) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    const int components = 2 + static_cast<int>(rng::below(gen, 3));
    for (int c = 0; c < components; ++c) {
        const double periods = 2.0 + rng::uniform01(gen) * 10.0;
        const double amp = 0.3 + rng::uniform01(gen);
        const double phase = rng::uniform01(gen) * 2.0 * std::numbers::pi;
        for (int i = 0; i < n; ++i) {
            y[i] += amp * std::sin(2.0 * std::numbers::pi * periods * i / n + phase);
        }
    }
    return y;
}

int count_zero_crossings(const Eigen::VectorXd& y) {
    int crossings = 0;
    double prev = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) continue;
        if (prev != 0.0 && (prev > 0.0) != (y[i] > 0.0)) ++crossings;
        prev = y[i];
    }
    return crossings;
}

}  // namespace

TEST_CASE("extrema of simple shapes") {
    const Extrema a = find_extrema(vec({0, 1, 0}));
    CHECK(a.maxima == std::vector<int>{1});
    CHECK(a.minima.empty());

    const Extrema b = find_extrema(vec({1, 2, 3, 4}));
    CHECK(b.maxima.empty());
    CHECK(b.minima.empty());

    const Extrema c = find_extrema(vec({0, 1, 0, -1, 0, 1, 0}));
    CHECK(c.maxima == std::vector<int>{1, 5});
    CHECK(c.minima == std::vector<int>{3});
}

TEST_CASE("plateau contributes its floor midpoint") {
    const Extrema a = find_extrema(vec({0, 2, 2, 2, 0}));
    CHECK(a.maxima == std::vector<int>{2});

    const Extrema b = find_extrema(vec({3, 1, 1, 3}));
    CHECK(b.minima == std::vector<int>{1});  // midpoint of indices 1..2 rounds down

    // plateau touching the boundary is not interior
    const Extrema c = find_extrema(vec({2, 2, 0, 2}));
    CHECK(c.maxima.empty());
    CHECK(c.minima == std::vector<int>{2});
}

TEST_CASE("envelopes interpolate their knots and need two extrema per side") {
    std::mt19937_64 gen(5);
    const Eigen::VectorXd y = random_smooth_signal(gen, 64);
    const Extrema ext = find_extrema(y);
    REQUIRE(ext.maxima.size() >= 2);
    REQUIRE(ext.minima.size() >= 2);
    const EnvelopePair env = cubic_envelopes(y, ext.maxima, ext.minima);
    for (int i : ext.maxima) CHECK(env.upper[i] == doctest::Approx(y[i]).epsilon(1e-12));
    for (int i : ext.minima) CHECK(env.lower[i] == doctest::Approx(y[i]).epsilon(1e-12));

    CHECK_THROWS_AS(cubic_envelopes(vec({1, 1, 1, 1, 1}), {}, {}), InsufficientExtrema);
}

TEST_CASE("envelope mean of a dense sinusoid is small") {
    const int n = 256;
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = std::sin(2.0 * std::numbers::pi * 8.0 * i / n);
    const Extrema ext = find_extrema(y);
    const EnvelopePair env = cubic_envelopes(y, ext.maxima, ext.minima);
    const Eigen::VectorXd mean = (env.upper + env.lower) / 2.0;
    const double mean_rms = std::sqrt(mean.squaredNorm() / n);
    const double signal_rms = std::sqrt(y.squaredNorm() / n);
    CHECK(mean_rms < 0.05 * signal_rms);
}

TEST_CASE("envelopes bracket the signal at extremum knots") {
    // equality at own knots is exact; the cross-side inequality can be
    // violated by spline undershoot between irregularly spaced extrema, so
    // it is asserted as a rate over many smooth signals
    std::mt19937_64 gen(17);
    long checks = 0, violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::VectorXd y = random_smooth_signal(gen, 96);
        const Extrema ext = find_extrema(y);
        if (ext.maxima.size() < 2 || ext.minima.size() < 2) continue;
        const EnvelopePair env = cubic_envelopes(y, ext.maxima, ext.minima);
        for (int i : ext.maxima) {
            CHECK(env.upper[i] == doctest::Approx(y[i]).epsilon(1e-12));
            ++checks;
            if (env.lower[i] > y[i] + 1e-9) ++violations;
        }
        for (int i : ext.minima) {
            CHECK(env.lower[i] == doctest::Approx(y[i]).epsilon(1e-12));
            ++checks;
            if (env.upper[i] < y[i] - 1e-9) ++violations;
        }
    }
    MESSAGE("sandwich violations: ", violations, "/", checks);
    CHECK(violations * 100 <= checks);  // at most 1% undershoot
}

TEST_CASE("monotone input is degenerate: imf = input, residue = 0") {
    const Eigen::VectorXd y = vec({1, 2, 3, 4, 5});
    const SiftResult r = sift_imf1(y);
    CHECK(r.degenerate);
    CHECK(r.iterations == 0);
    CHECK((r.imf.array() == y.array()).all());
    CHECK((r.residue.array() == 0.0).all());
}

TEST_CASE("imf plus residue reconstructs the input") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 16 + static_cast<int>(rng::below(gen, 497));
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) y[i] = rng::uniform01(gen) * 20.0 - 10.0;
        const SiftResult r = sift_imf1(y);
        const double tol = 1e-9 * std::max(1.0, y.cwiseAbs().maxCoeff());
        CHECK((y - (r.imf + r.residue)).cwiseAbs().maxCoeff() <= tol);
    }
}

TEST_CASE("sifting separates a fast sinusoid from a slow trend") {
    const int n = 256;
    Eigen::VectorXd fast(n), trend(n);
    for (int i = 0; i < n; ++i) {
        fast[i] = std::sin(2.0 * std::numbers::pi * 16.0 * i / n);
        trend[i] = 4.0 * i / n;
    }
    const SiftResult r = sift_imf1(fast + trend);
    REQUIRE(!r.degenerate);
    CHECK(pearson(r.imf, fast) > 0.9);
    CHECK(pearson(r.residue, trend) > 0.9);
}

TEST_CASE("imf extrema and zero-crossing counts differ by at most one (approximate)") {
    std::mt19937_64 gen(31);
    int satisfied = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 48 + static_cast<int>(rng::below(gen, 200));
        const Eigen::VectorXd y = random_smooth_signal(gen, n);
        const SiftResult r = sift_imf1(y);
        if (r.degenerate) continue;
        const Extrema ext = find_extrema(r.imf);
        const int extrema = static_cast<int>(ext.maxima.size() + ext.minima.size());
        const int crossings = count_zero_crossings(r.imf);
        if (std::abs(extrema - crossings) <= 1) ++satisfied;
    }
    // report-and-assert: the oscillation property is approximate on short signals
    MESSAGE("oscillation property satisfied on ", satisfied, "/", trials, " signals");
    CHECK(satisfied >= 950);
}

TEST_CASE("sifting is deterministic") {
    std::mt19937_64 gen(41);
    const Eigen::VectorXd y = random_smooth_signal(gen, 128);
    const SiftResult a = sift_imf1(y);
    const SiftResult b = sift_imf1(y);
    CHECK((a.imf.array() == b.imf.array()).all());
    CHECK((a.residue.array() == b.residue.array()).all());
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("matrix transform keeps shape and passes degenerate columns through") {
    std::mt19937_64 gen(43);
    Eigen::MatrixXd m(40, 5);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng::uniform01(gen);
    }
    m.col(2) = Eigen::VectorXd::LinSpaced(40, 0.0, 1.0);  // monotone -> degenerate

    const TransformResult r = transform_matrix(m, EmdAxis::Column);
    CHECK(r.values.rows() == m.rows());
    CHECK(r.values.cols() == m.cols());
    CHECK(r.degenerate.size() == 5);
    CHECK(r.degenerate[2]);
    CHECK((r.values.col(2).array() == m.col(2).array()).all());

    // column-wise reconstruction: residue = input - imf by construction
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const SiftResult s = sift_imf1(m.col(j));
        CHECK((r.values.col(j) - s.imf).cwiseAbs().maxCoeff() <= 1e-12);
        const double tol = 1e-9 * std::max(1.0, m.col(j).cwiseAbs().maxCoeff());
        CHECK((m.col(j) - (s.imf + s.residue)).cwiseAbs().maxCoeff() <= tol);
    }

    const TransformResult rows = transform_matrix(m, EmdAxis::Row);
    CHECK(rows.values.rows() == m.rows());
    CHECK(rows.degenerate.size() == 40);
}

TEST_CASE("short signals are flagged degenerate rather than erroring") {
    Eigen::MatrixXd m(3, 4);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
    const TransformResult r = transform_matrix(m, EmdAxis::Column);
    for (bool f : r.degenerate) CHECK(f);
    CHECK((r.values.array() == m.array()).all());
}
