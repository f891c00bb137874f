#include "dgafd/emd.hpp"

#include <utility>

#include "dgafd/errors.hpp"
#include "dgafd/spline.hpp"

namespace dgafd {

namespace {

// Run-length view of the signal: plateaus collapse to one candidate whose
// index is the floor midpoint of the run.
struct Run {
    double value;
    int first;
    int last;
};

std::vector<Run> runs_of(const Eigen::Ref<const Eigen::VectorXd>& y) {
    std::vector<Run> runs;
    const int n = static_cast<int>(y.size());
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || y[i] != y[start]) {
            runs.push_back({y[start], start, i - 1});
            start = i;
        }
    }
    return runs;
}

// Envelope through the given extremum indices, with the two extrema nearest
// each endpoint mirrored outside [0, n-1] before fitting.
Eigen::VectorXd spline_envelope(const Eigen::Ref<const Eigen::VectorXd>& y,
                                const std::vector<int>& idx) {
    const int n = static_cast<int>(y.size());
    const std::size_t m = idx.size();

    Eigen::VectorXd xs(m + 4), ys(m + 4);
    // mirror about x = 0: indices i0 < i1 map to -i1 < -i0
    xs[0] = -static_cast<double>(idx[1]);
    ys[0] = y[idx[1]];
    xs[1] = -static_cast<double>(idx[0]);
    ys[1] = y[idx[0]];
    for (std::size_t k = 0; k < m; ++k) {
        xs[static_cast<Eigen::Index>(k + 2)] = static_cast<double>(idx[k]);
        ys[static_cast<Eigen::Index>(k + 2)] = y[idx[k]];
    }
    // mirror about x = n-1: indices j1 < j0 map to 2(n-1)-j0 < 2(n-1)-j1
    const int j0 = idx[m - 1];
    const int j1 = idx[m - 2];
    xs[static_cast<Eigen::Index>(m + 2)] = static_cast<double>(2 * (n - 1) - j0);
    ys[static_cast<Eigen::Index>(m + 2)] = y[j0];
    xs[static_cast<Eigen::Index>(m + 3)] = static_cast<double>(2 * (n - 1) - j1);
    ys[static_cast<Eigen::Index>(m + 3)] = y[j1];

    const auto spline = CubicSpline<double>::fit(std::move(xs), std::move(ys));
    Eigen::VectorXd env(n);
    for (int i = 0; i < n; ++i) env[i] = spline(static_cast<double>(i));
    return env;
}

}  // namespace

Extrema find_extrema(const Eigen::Ref<const Eigen::VectorXd>& signal) {
    Extrema out;
    const auto runs = runs_of(signal);
    for (std::size_t k = 1; k + 1 < runs.size(); ++k) {
        const Run& r = runs[k];
        const double prev = runs[k - 1].value;
        const double next = runs[k + 1].value;
        const int mid = (r.first + r.last) / 2;
        if (prev < r.value && next < r.value) out.maxima.push_back(mid);
        if (prev > r.value && next > r.value) out.minima.push_back(mid);
    }
    return out;
}

EnvelopePair cubic_envelopes(const Eigen::Ref<const Eigen::VectorXd>& signal,
                             const std::vector<int>& maxima, const std::vector<int>& minima) {
    if (maxima.size() < 2 || minima.size() < 2) {
        throw InsufficientExtrema("envelopes need >= 2 maxima and >= 2 minima, got " +
                                  std::to_string(maxima.size()) + " maxima / " +
                                  std::to_string(minima.size()) + " minima");
    }
    return {spline_envelope(signal, maxima), spline_envelope(signal, minima)};
}

SiftResult sift_imf1(const Eigen::Ref<const Eigen::VectorXd>& signal, const SiftConfig& config) {
    SiftResult result;
    const auto start = find_extrema(signal);
    if (signal.size() < 4 || static_cast<int>(start.maxima.size()) < config.min_extrema ||
        static_cast<int>(start.minima.size()) < config.min_extrema) {
        result.imf = signal;
        result.residue = Eigen::VectorXd::Zero(signal.size());
        result.degenerate = true;
        return result;
    }

    Eigen::VectorXd h = signal;
    for (int iter = 1; iter <= config.max_sift_iterations; ++iter) {
        const Extrema ext = iter == 1 ? start : find_extrema(h);
        if (static_cast<int>(ext.maxima.size()) < config.min_extrema ||
            static_cast<int>(ext.minima.size()) < config.min_extrema) {
            break;  // no further sifting possible; keep the current h
        }
        const EnvelopePair env = cubic_envelopes(h, ext.maxima, ext.minima);
        const Eigen::VectorXd mean = (env.upper + env.lower) / 2.0;
        const double denom = h.squaredNorm();
        const double sd = denom > 0.0 ? mean.squaredNorm() / denom : 0.0;
        h -= mean;
        result.iterations = iter;
        if (sd < config.sd_threshold) break;
    }
    result.imf = std::move(h);
    result.residue = signal - result.imf;
    return result;
}

TransformResult transform_matrix(const Eigen::Ref<const Eigen::MatrixXd>& features, EmdAxis axis,
                                 const SiftConfig& config) {
    TransformResult out;
    out.axis = axis;
    out.values = features;
    if (axis == EmdAxis::Column) {
        out.degenerate.resize(static_cast<std::size_t>(features.cols()), false);
        for (Eigen::Index j = 0; j < features.cols(); ++j) {
            const SiftResult r = sift_imf1(features.col(j), config);
            out.values.col(j) = r.imf;
            out.degenerate[static_cast<std::size_t>(j)] = r.degenerate;
        }
    } else {
        out.degenerate.resize(static_cast<std::size_t>(features.rows()), false);
        for (Eigen::Index i = 0; i < features.rows(); ++i) {
            const SiftResult r = sift_imf1(features.row(i).transpose(), config);
            out.values.row(i) = r.imf.transpose();
            out.degenerate[static_cast<std::size_t>(i)] = r.degenerate;
        }
    }
    return out;
}

}  // namespace dgafd
