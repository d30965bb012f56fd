#pragma once

// Transport of frames under U' = JB(x; lambda) U with periodic
// re-orthonormalization.  Shared by the real flow and the Evans function.

#include <cmath>

#include "maslov/linalg.hpp"
#include "maslov/models.hpp"
#include "maslov/ode.hpp"

namespace maslov::detail {

template <typename Scalar>
using FrameMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
FrameMat<Scalar> frame_rhs(const WaveModel& m, Scalar lambda, double x, const FrameMat<Scalar>& u) {
    const Eigen::Index n = m.n;
    FrameMat<Scalar> d(u.rows(), u.cols());
    d.topRows(n) = u.bottomRows(n);
    const Mat q = m.potential(x);
    d.bottomRows(n).noalias() = lambda * u.topRows(n);
    d.bottomRows(n).noalias() -= q.template cast<Scalar>() * u.topRows(n);
    return d;
}

inline ode::Tolerances flow_tolerances(double rtol, double atol) {
    ode::Tolerances t;
    t.rtol = rtol;
    t.atol = atol;
    return t;
}

// One integration from x0 to x1 followed by orthonormalization; adds the log
// of det R to *log_acc when given.
template <typename Scalar>
FrameMat<Scalar> advance_frame(const WaveModel& m, Scalar lambda, double x0, double x1, const FrameMat<Scalar>& u0,
                               const ode::Tolerances& tol, double* log_acc = nullptr,
                               double* step_hint = nullptr) {
    auto rhs = [&](double x, const FrameMat<Scalar>& u) { return frame_rhs<Scalar>(m, lambda, x, u); };
    const FrameMat<Scalar> u1 = ode::integrate<FrameMat<Scalar>>(
        rhs, x0, x1, u0, tol, [](const ode::DenseStep<FrameMat<Scalar>>&) { return true; }, nullptr, step_hint);
    double ld = 0.0;
    FrameMat<Scalar> q = orthonormalize(u1, &ld);
    if (log_acc) *log_acc += ld;
    return q;
}

// x0 -> x1 (either direction) in chunks of at most `every`.
template <typename Scalar>
FrameMat<Scalar> transport_frame(const WaveModel& m, Scalar lambda, double x0, double x1, FrameMat<Scalar> u,
                                 double every, const ode::Tolerances& tol, double* log_acc = nullptr) {
    const double span = x1 - x0;
    const int chunks = std::max(1, static_cast<int>(std::ceil(std::abs(span) / every - 1e-9)));
    double hint = 0.0;
    for (int k = 0; k < chunks; ++k) {
        const double a = x0 + span * k / chunks;
        const double b = (k + 1 == chunks) ? x1 : x0 + span * (k + 1) / chunks;
        u = advance_frame<Scalar>(m, lambda, a, b, u, tol, log_acc, &hint);
    }
    return u;
}

}  // namespace maslov::detail
