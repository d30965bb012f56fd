#include "maslov/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "maslov/errors.hpp"
#include "maslov/linalg.hpp"
#include "maslov/ode.hpp"

namespace maslov {

namespace {

using Angle = Eigen::Matrix<double, 1, 1>;

ode::Tolerances angle_tolerances(double rtol) {
    ode::Tolerances t;
    t.rtol = rtol;
    t.atol = rtol;
    return t;
}

// Integrates theta over [a, b]; `on_step` sees every accepted dense step.
template <typename OnStep>
double integrate_angle(const ScalarProblem& prob, double lambda, double rtol, OnStep&& on_step) {
    auto rhs = [&](double x, const Angle& th) {
        Angle d;
        d(0) = prufer_rhs(prob, x, th(0), lambda);
        return d;
    };
    Angle th0;
    th0(0) = 0.0;
    try {
        const Angle end = ode::integrate<Angle>(rhs, prob.a(), prob.b(), th0, angle_tolerances(rtol),
                                                [&](const ode::DenseStep<Angle>& s) {
                                                    on_step(s);
                                                    return true;
                                                });
        return end(0);
    } catch (const NumericalError& e) {
        std::ostringstream msg;
        msg << "prufer_flow at lambda=" << lambda << ": " << e.what();
        throw NumericalError(msg.str());
    }
}

double theta_end(const ScalarProblem& prob, double lambda, double rtol) {
    return integrate_angle(prob, lambda, rtol, [](const ode::DenseStep<Angle>&) {});
}

double distance_to_pi_lattice(double theta) {
    return std::abs(theta - kPi * std::round(theta / kPi));
}

}  // namespace

ScalarProblem::ScalarProblem(std::function<double(double)> q, double a, double b)
    : q_(std::move(q)), a_(a), b_(b) {
    if (!(a_ < b_)) throw InputError("ScalarProblem: interval must satisfy a < b");
    if (!q_) throw InputError("ScalarProblem: missing coefficient");
    constexpr int kSamples = 2000;
    const double dx = (b_ - a_) / kSamples;
    std::vector<double> v(kSamples + 1);
    double scale = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = i == kSamples ? b_ : a_ + i * dx;
        v[static_cast<std::size_t>(i)] = q_(x);
        if (!std::isfinite(v[static_cast<std::size_t>(i)])) {
            std::ostringstream msg;
            msg << "ScalarProblem: q is not finite at x=" << x;
            throw InputError(msg.str());
        }
        scale = std::max(scale, std::abs(v[static_cast<std::size_t>(i)]));
    }
    // A difference that survives repeated halving of the interval is a jump.
    const double notable = 1e-3 * (1.0 + scale);
    for (int i = 0; i < kSamples; ++i) {
        const double d0 = std::abs(v[static_cast<std::size_t>(i) + 1] - v[static_cast<std::size_t>(i)]);
        if (d0 <= notable) continue;
        double lo = a_ + i * dx, hi = lo + dx;
        double qlo = v[static_cast<std::size_t>(i)], qhi = v[static_cast<std::size_t>(i) + 1];
        for (int k = 0; k < 50 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(lo)); ++k) {
            const double mid = 0.5 * (lo + hi);
            const double qm = q_(mid);
            if (std::abs(qm - qlo) >= std::abs(qhi - qm)) {
                hi = mid;
                qhi = qm;
            } else {
                lo = mid;
                qlo = qm;
            }
        }
        if (std::abs(qhi - qlo) > 0.5 * d0) {
            std::ostringstream msg;
            msg << "ScalarProblem: q jumps by " << qhi - qlo << " near x=" << lo << " (q must be continuous)";
            throw InputError(msg.str());
        }
    }
}

ScalarProblem ScalarProblem::from_samples(std::vector<double> x, std::vector<double> q, Interpolation kind,
                                          double a, double b) {
    Interpolant f(std::move(x), std::move(q), kind);
    return {[f = std::move(f)](double t) { return f(t); }, a, b};
}

double prufer_rhs(const ScalarProblem& prob, double x, double theta, double lambda) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return c * c + (prob.q(x) - lambda) * s * s;
}

PruferTrajectory prufer_flow(const ScalarProblem& prob, double lambda, double rtol) {
    if (!(rtol > 0)) throw InputError("prufer_flow: rtol must be positive");
    PruferTrajectory out;
    out.lambda = lambda;
    out.samples.emplace_back(prob.a(), 0.0);
    out.theta_end = integrate_angle(prob, lambda, rtol, [&](const ode::DenseStep<Angle>& s) {
        out.samples.emplace_back(s.t1, s.end()(0));
    });
    return out;
}

int count_eigenvalues_above(const ScalarProblem& prob, double lambda_star, const PruferTolerances& tol) {
    const double th = theta_end(prob, lambda_star, tol.rtol);
    if (distance_to_pi_lattice(th) < tol.resonance_tol) {
        std::ostringstream msg;
        msg << "lambda_star=" << lambda_star << " is (numerically) a Dirichlet eigenvalue: theta(b)=" << th;
        throw ResonanceError(msg.str());
    }
    return static_cast<int>(std::floor(th / kPi));
}

std::vector<double> find_eigenvalues(const ScalarProblem& prob, int how_many, const PruferTolerances& tol) {
    if (how_many < 1) throw InputError("find_eigenvalues: how_many must be >= 1");
    double qmin = prob.q(prob.a());
    double qmax = qmin;
    constexpr int kSamples = 4000;
    for (int i = 0; i <= kSamples; ++i) {
        const double v = prob.q(prob.a() + (prob.b() - prob.a()) * i / kSamples);
        qmin = std::min(qmin, v);
        qmax = std::max(qmax, v);
    }
    const double len = prob.b() - prob.a();

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(how_many));
    for (int j = 0; j < how_many; ++j) {
        const double target = (j + 1) * kPi;
        // theta cannot pass pi/2 when q - lambda < 0 everywhere; with
        // q - lambda >= c > 0 it gains at least pi per pi / sqrt(c) of length.
        double hi = qmax + 1.0;
        const double need = (j + 1) * kPi / len;
        double lo = qmin - 1.25 * need * need - 1.0;
        if (!out.empty()) hi = std::min(hi, out.back());
        double th_hi = theta_end(prob, hi, tol.rtol);
        double th_lo = theta_end(prob, lo, tol.rtol);
        if (!(th_lo > target && th_hi < target)) {
            std::ostringstream msg;
            msg << "find_eigenvalues: bracket [" << lo << ", " << hi << "] does not straddle theta(b)="
                << target << " (got " << th_lo << ", " << th_hi << ")";
            throw NumericalError(msg.str());
        }
        double mid = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (lo + hi);
            const double th = theta_end(prob, mid, tol.rtol);
            if (std::abs(th - target) < tol.angle_tol) break;
            if (th > target) lo = mid;
            else hi = mid;
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
                mid = 0.5 * (lo + hi);
                break;
            }
        }
        out.push_back(mid);
    }
    return out;
}

std::vector<double> conjugate_points(const ScalarProblem& prob, double lambda_star, const PruferTolerances& tol) {
    std::vector<double> pts;
    const double th_end = integrate_angle(prob, lambda_star, tol.rtol, [&](const ode::DenseStep<Angle>& s) {
        const double th0 = s.start()(0);
        const double th1 = s.end()(0);
        // theta' = 1 at multiples of pi, so lattice crossings only go upward.
        for (int j = static_cast<int>(std::floor(th0 / kPi)) + 1; j * kPi <= th1; ++j) {
            if (j < 1) continue;
            const double target = j * kPi;
            double lo = s.t0;
            double hi = s.t1;
            for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                if (s(mid)(0) < target) lo = mid;
                else hi = mid;
            }
            pts.push_back(0.5 * (lo + hi));
        }
    });
    if (distance_to_pi_lattice(th_end) < tol.resonance_tol) {
        std::ostringstream msg;
        msg << "lambda_star=" << lambda_star << " is (numerically) a Dirichlet eigenvalue: theta(b)=" << th_end;
        throw ResonanceError(msg.str());
    }
    // A crossing landing exactly on b belongs to the resonance case above.
    while (!pts.empty() && pts.back() >= prob.b()) pts.pop_back();
    return pts;
}

int eigenfunction_zero_count(const ScalarProblem& prob, double lambda_k, const PruferTolerances& tol) {
    const double delta = 1e-7 * std::max(1.0, std::abs(lambda_k));
    const double below = theta_end(prob, lambda_k - delta, tol.rtol);
    const double above = theta_end(prob, lambda_k + delta, tol.rtol);
    const int n_below = static_cast<int>(std::floor(below / kPi));
    const int n_above = static_cast<int>(std::floor(above / kPi));
    if (n_below != n_above + 1) {
        std::ostringstream msg;
        msg << "eigenfunction_zero_count: lambda=" << lambda_k
            << " is not an eigenvalue (eigenvalue counts across +-" << delta << " are " << n_below << ", "
            << n_above << ")";
        throw InputError(msg.str());
    }
    return n_above;
}

}  // namespace maslov
