#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace maslov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Principal value in (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

// Thin QR with a positive real diagonal in R, so the orthonormal factor spans
// the same column space and det(R) > 0.  Returns sum(log R_jj) through
// `log_det_r` when requested.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> orthonormalize(
    const Eigen::MatrixBase<Derived>& f, double* log_det_r = nullptr) {
    using Scalar = typename Derived::Scalar;
    using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Eigen::Index rows = f.rows();
    const Eigen::Index cols = f.cols();
    Eigen::HouseholderQR<M> qr(f.derived());
    M q = qr.householderQ() * M::Identity(rows, cols);
    const M& r = qr.matrixQR();
    double acc = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Scalar d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0) {
            q.col(j) *= d / mag;
            acc += std::log(mag);
        } else {
            acc = -std::numeric_limits<double>::infinity();
        }
    }
    if (log_det_r) *log_det_r = acc;
    return q;
}

}  // namespace maslov
