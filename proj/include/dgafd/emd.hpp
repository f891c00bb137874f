#pragma once

#include <Eigen/Dense>
#include <vector>

namespace dgafd {

/// Sifting controls. Boundary handling is always mirror extension of the two
/// extrema nearest each endpoint; sifting stops when the ratio-of-sums
/// criterion sum((h_prev-h_cur)^2) / sum(h_prev^2) drops below sd_threshold
/// or after max_sift_iterations passes.
struct SiftConfig {
    double sd_threshold = 0.3;
    int max_sift_iterations = 50;
    int min_extrema = 2;  // required maxima count and minima count
};

struct Extrema {
    std::vector<int> maxima;
    std::vector<int> minima;
};

/// Strict interior local extrema; a flat plateau of equal values contributes
/// its midpoint index (rounded down). Endpoints never qualify.
Extrema find_extrema(const Eigen::Ref<const Eigen::VectorXd>& signal);

struct EnvelopePair {
    Eigen::VectorXd upper;
    Eigen::VectorXd lower;
};

/// Natural cubic spline envelopes through the maxima (upper) and minima
/// (lower), each extended by mirroring the two nearest extrema about both
/// endpoints. Throws InsufficientExtrema with fewer than 2 maxima or minima.
EnvelopePair cubic_envelopes(const Eigen::Ref<const Eigen::VectorXd>& signal,
                             const std::vector<int>& maxima, const std::vector<int>& minima);

struct SiftResult {
    Eigen::VectorXd imf;
    Eigen::VectorXd residue;
    int iterations = 0;
    bool degenerate = false;
};

/// First intrinsic mode function of the signal. Inputs with fewer than 2
/// maxima or 2 minima come back flagged degenerate with imf == input and a
/// zero residue; otherwise imf + residue reconstructs the input exactly.
SiftResult sift_imf1(const Eigen::Ref<const Eigen::VectorXd>& signal, const SiftConfig& config = {});

enum class EmdAxis { Column, Row };

struct TransformResult {
    Eigen::MatrixXd values;
    std::vector<bool> degenerate;  // one flag per column (Column axis) or row (Row axis)
    EmdAxis axis = EmdAxis::Column;
};

/// Replaces each column (or row) of `features` with its IMF1. Degenerate
/// signals pass through unchanged and are flagged.
TransformResult transform_matrix(const Eigen::Ref<const Eigen::MatrixXd>& features,
                                 EmdAxis axis = EmdAxis::Column, const SiftConfig& config = {});

}  // namespace dgafd
