#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>

namespace dgafd {

/// Natural cubic spline through strictly increasing knots: zero second
/// derivative at both ends, exact interpolation at the knots. Two knots
/// degenerate to linear interpolation.
template <typename Scalar>
class CubicSpline {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    static CubicSpline fit(Vector knots_x, Vector knots_y) {
        assert(knots_x.size() == knots_y.size());
        assert(knots_x.size() >= 2);
        CubicSpline s;
        s.x_ = std::move(knots_x);
        s.y_ = std::move(knots_y);
        s.m_ = solve_second_derivatives(s.x_, s.y_);
        return s;
    }

    /// Evaluates the spline; outside the knot range the end segment's cubic
    /// is extended.
    Scalar operator()(Scalar x) const {
        const Eigen::Index n = x_.size();
        // segment i covers [x_[i], x_[i+1]]
        Eigen::Index i = std::upper_bound(x_.data(), x_.data() + n, x) - x_.data();
        i = std::clamp<Eigen::Index>(i - 1, 0, n - 2);
        const Scalar h = x_[i + 1] - x_[i];
        const Scalar a = x_[i + 1] - x;
        const Scalar b = x - x_[i];
        return m_[i] * a * a * a / (6 * h) + m_[i + 1] * b * b * b / (6 * h) +
               (y_[i] / h - m_[i] * h / 6) * a + (y_[i + 1] / h - m_[i + 1] * h / 6) * b;
    }

    const Vector& knots_x() const { return x_; }
    const Vector& knots_y() const { return y_; }

private:
    // Tridiagonal (Thomas) solve for the interior second derivatives; the
    // natural boundary pins both end values to zero.
    static Vector solve_second_derivatives(const Vector& x, const Vector& y) {
        const Eigen::Index n = x.size();
        Vector m = Vector::Zero(n);
        if (n < 3) return m;

        const Eigen::Index k = n - 2;  // unknowns m[1..n-2]
        Vector diag(k), rhs(k), sub(k), sup(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            const Scalar h0 = x[i + 1] - x[i];
            const Scalar h1 = x[i + 2] - x[i + 1];
            sub[i] = h0;
            diag[i] = 2 * (h0 + h1);
            sup[i] = h1;
            rhs[i] = 6 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
        }
        // forward sweep
        for (Eigen::Index i = 1; i < k; ++i) {
            const Scalar w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m[k] = rhs[k - 1] / diag[k - 1];
        for (Eigen::Index i = k - 2; i >= 0; --i) {
            m[i + 1] = (rhs[i] - sup[i] * m[i + 2]) / diag[i];
        }
        return m;
    }

    Vector x_, y_, m_;
};

}  // namespace dgafd
