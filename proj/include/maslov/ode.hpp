#pragma once

// Dormand-Prince 5(4) with the 4th-order continuous extension.
//
// The state is any fixed- or dynamic-size Eigen dense object (vector or matrix,
// real or complex).  Integration may run backward (t1 < t0).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <type_traits>

#include "maslov/errors.hpp"

namespace maslov::ode {

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.0;  // 0: unbounded
    long max_steps = 2'000'000;
};

// One accepted step with dense output over [t0, t1].
template <typename State>
class DenseStep {
public:
    double t0 = 0.0;
    double t1 = 0.0;

    State operator()(double t) const {
        const double h = t1 - t0;
        const double s = (h == 0.0) ? 0.0 : (t - t0) / h;
        const double s1 = 1.0 - s;
        return r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
    }

    const State& start() const { return r1; }
    State end() const { return r1 + r2; }

    State r1, r2, r3, r4, r5;
};

namespace detail {

template <typename Scalar>
double magnitude(const Scalar& v) {
    return std::abs(v);
}

template <typename State>
double error_norm(const State& err, const State& y0, const State& y1, const Tolerances& tol) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            const double sc =
                tol.atol + tol.rtol * std::max(magnitude(y0(i, j)), magnitude(y1(i, j)));
            worst = std::max(worst, magnitude(err(i, j)) / sc);
        }
    }
    return worst;
}

template <typename State>
bool all_finite(const State& y) {
    for (Eigen::Index j = 0; j < y.cols(); ++j)
        for (Eigen::Index i = 0; i < y.rows(); ++i)
            if (!std::isfinite(std::abs(y(i, j)))) return false;
    return true;
}

}  // namespace detail

// rhs(t, y) -> dy/dt.  observer(const DenseStep&) is called after each accepted
// step and may return false to stop early.  Returns the state at the last
// accepted time; `t_reached` receives that time.  `step_hint`, when given and
// positive, seeds the first step and receives the next proposed step, so
// chained calls over adjacent intervals skip the start-up phase.
template <typename State, typename Rhs, typename Observer>
State integrate(Rhs&& rhs, double t0, double t1, State y, const Tolerances& tol, Observer&& observer,
                double* t_reached = nullptr, double* step_hint = nullptr) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    const double span = t1 - t0;
    if (t_reached) *t_reached = t0;
    if (span == 0.0) return y;
    const double dir = span > 0 ? 1.0 : -1.0;

    double t = t0;
    State k1 = rhs(t, y);
    // Crude initial step: keep the first Euler increment a small fraction of |y|.
    double h;
    {
        const double ny = std::max(y.norm(), 1e-8);
        const double nf = std::max(k1.norm(), 1e-12);
        h = std::min(std::abs(span), 0.01 * ny / nf);
        h = std::max(h, 1e-10 * std::abs(span));
        if (step_hint && *step_hint > 0) h = std::min(*step_hint, std::abs(span));
        if (tol.max_step > 0) h = std::min(h, tol.max_step);
    }
    double h_free = h;  // last proposal not clipped at t1

    double err_prev = 1e-4;
    long steps = 0;
    DenseStep<State> step;
    while (dir * (t1 - t) > 0) {
        if (++steps > tol.max_steps) {
            std::ostringstream msg;
            msg << "integrator exceeded " << tol.max_steps << " steps at t=" << t;
            throw NumericalError(msg.str());
        }
        if (dir * (t + dir * h - t1) > 0) h = std::abs(t1 - t);
        else h_free = h;
        const double hs = dir * h;

        State k2 = rhs(t + c2 * hs, State(y + hs * (a21 * k1)));
        State k3 = rhs(t + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
        State k4 = rhs(t + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
        State k5 = rhs(t + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        State k6 = rhs(t + hs, State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        State y1 = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        State k7 = rhs(t + hs, y1);
        State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double en = detail::error_norm(err, y, y1, tol);
        if (!std::isfinite(en) || !detail::all_finite(y1)) {
            h *= 0.2;
            if (h < 1e-14 * std::max(1.0, std::abs(t))) {
                std::ostringstream msg;
                msg << "integrator produced non-finite state near t=" << t;
                throw NumericalError(msg.str());
            }
            continue;
        }
        if (en <= 1.0) {
            step.t0 = t;
            step.t1 = t + hs;
            step.r1 = y;
            step.r2 = y1 - y;
            step.r3 = hs * k1 - step.r2;
            step.r4 = step.r2 - hs * k7 - step.r3;
            step.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

            t = (dir * (t1 - (t + hs)) <= 0) ? t1 : t + hs;
            step.t1 = t;
            y = std::move(y1);
            k1 = std::move(k7);
            if (t_reached) *t_reached = t;
            if (!observer(step)) {
                if (step_hint) *step_hint = std::max(h, h_free);
                return y;
            }

            // PI step-size control.
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            fac = std::clamp(fac, 0.2, 10.0);
            h *= fac;
            err_prev = std::max(en, 1e-4);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(en, -1.0 / 5));
            if (h < 1e-14 * std::max(1.0, std::abs(t))) {
                std::ostringstream msg;
                msg << "integrator step size underflow at t=" << t;
                throw NumericalError(msg.str());
            }
        }
        if (tol.max_step > 0) h = std::min(h, tol.max_step);
    }
    if (step_hint) *step_hint = std::max(h, h_free);
    return y;
}

template <typename State, typename Rhs>
State integrate(Rhs&& rhs, double t0, double t1, State y, const Tolerances& tol) {
    return integrate<State>(std::forward<Rhs>(rhs), t0, t1, std::move(y), tol,
                            [](const DenseStep<State>&) { return true; });
}

}  // namespace maslov::ode
