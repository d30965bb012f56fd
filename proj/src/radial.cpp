#include "maslov/radial.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "maslov/errors.hpp"
#include "maslov/linalg.hpp"
#include "maslov/ode.hpp"

namespace maslov {

ModeSystem mode_system(int d, int l) {
    if (d < 2) throw InputError("mode_system: d must be >= 2");
    if (l < 0) throw InputError("mode_system: l must be >= 0");
    ModeSystem s;
    s.d = d;
    s.l = l;
    s.exponents = {static_cast<double>(l), -static_cast<double>(l + d - 2)};
    s.laplace_beltrami_eigenvalue = -static_cast<double>(l) * (l + d - 2);
    s.double_root = (d == 2 && l == 0);
    s.non_decaying = (l == 0);
    return s;
}

std::pair<double, double> mode_exponents(int d, int l) { return mode_system(d, l).exponents; }

Eigen::Matrix2d radial_system_matrix(int d, int l, double s) {
    if (!(s > 0)) throw InputError("radial_system_matrix: s must be positive");
    if (d < 2 || l < 0) throw InputError("radial_system_matrix: need d >= 2, l >= 0");
    Eigen::Matrix2d a;
    a << 0.0, 1.0, static_cast<double>(l) * (l + d - 2) / (s * s), -static_cast<double>(d - 1) / s;
    return a;
}

Eigen::Matrix2d rescaled_system_matrix(int d, int l) {
    if (d < 2 || l < 0) throw InputError("rescaled_system_matrix: need d >= 2, l >= 0");
    Eigen::Matrix2d a;
    a << 0.0, 1.0, static_cast<double>(l) * (l + d - 2), -static_cast<double>(d - 2);
    return a;
}

DichotomyProjection dichotomy(int d, int l) {
    const ModeSystem s = mode_system(d, l);
    if (s.double_root) throw InputError("dichotomy: d=2, l=0 has a double exponent (log r mode)");
    DichotomyProjection p;
    p.unstable_rate = s.exponents.first;
    p.stable_rate = s.exponents.second;
    p.unstable_direction = Eigen::Vector2d(1.0, p.unstable_rate).normalized();
    p.stable_direction = Eigen::Vector2d(1.0, p.stable_rate).normalized();
    return p;
}

ModeTrajectory evolve_mode(int d, int l, const Eigen::Vector2d& init, double tau0, double tau1) {
    if (d < 3) throw InputError("evolve_mode: d must be >= 3 for a strict dichotomy");
    if (!(tau1 - tau0 >= 5.0)) throw InputError("evolve_mode: tau range must span at least 5");
    if (!(init.norm() > 0)) throw InputError("evolve_mode: zero initial vector");
    const DichotomyProjection p = dichotomy(d, l);
    const Eigen::Matrix2d a = rescaled_system_matrix(d, l);

    const Eigen::Vector2d u = init.normalized();
    const double off_stable = std::min((u - p.stable_direction).norm(), (u + p.stable_direction).norm());
    ModeTrajectory tr;
    tr.backward = off_stable < 1e-8;

    ode::Tolerances tol;
    tol.rtol = 1e-12;
    tol.atol = 1e-300;
    const double start = tr.backward ? tau1 : tau0;
    const double stop = tr.backward ? tau0 : tau1;
    tr.tau.push_back(start);
    tr.state.push_back(init);
    ode::integrate<Eigen::Vector2d>([&](double, const Eigen::Vector2d& y) -> Eigen::Vector2d { return a * y; },
                                    start, stop, init, tol, [&](const ode::DenseStep<Eigen::Vector2d>& s) {
                                        // Dense samples, ten per step.
                                        for (int k = 1; k <= 10; ++k) {
                                            const double t = s.t0 + (s.t1 - s.t0) * k / 10.0;
                                            tr.tau.push_back(t);
                                            tr.state.push_back(s(t));
                                        }
                                        return true;
                                    });
    if (tr.backward) {
        std::reverse(tr.tau.begin(), tr.tau.end());
        std::reverse(tr.state.begin(), tr.state.end());
    }

    // Least squares of log |y| against tau over the second half of the range.
    const double mid = 0.5 * (tau0 + tau1);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < tr.tau.size(); ++i) {
        const bool take = tr.backward ? tr.tau[i] <= mid : tr.tau[i] >= mid;
        if (!take) continue;
        const double x = tr.tau[i];
        const double y = std::log(tr.state[i].norm());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw NumericalError("evolve_mode: too few samples for the fit");
    tr.fitted_rate = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return tr;
}

namespace {

double factorial_ratio(int l, int m) {
    // (l - m)! / (l + m)!
    double r = 1.0;
    for (int k = l - m + 1; k <= l + m; ++k) r /= k;
    return r;
}

// Associated Legendre P_l^m(x), m >= 0, without the Condon-Shortley phase.
double legendre(int l, int m, double x) {
    const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 1.0;
    for (int k = 1; k <= m; ++k) pmm *= (2.0 * k - 1.0) * sx;
    if (l == m) return pmm;
    double pm1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pm1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = ((2.0 * ll - 1.0) * x * pm1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pm1;
        pm1 = pll;
    }
    return pll;
}

}  // namespace

double spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || l > kMaxHarmonicDegree) {
        std::ostringstream msg;
        msg << "spherical harmonic degree " << l << " outside the implemented range 0.." << kMaxHarmonicDegree;
        throw InputError(msg.str());
    }
    if (std::abs(m) > l) throw InputError("spherical harmonic order must satisfy |m| <= l");
    const int am = std::abs(m);
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * factorial_ratio(l, am));
    const double p = legendre(l, am, std::cos(theta));
    if (m == 0) return norm * p;
    const double ang = m > 0 ? std::cos(am * phi) : std::sin(am * phi);
    return std::sqrt(2.0) * norm * p * ang;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw InputError("gauss_legendre: n must be >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

Eigen::MatrixXd harmonic_gram(int l_max, int n_theta, int n_phi) {
    if (l_max < 0 || l_max > kMaxHarmonicDegree) throw InputError("harmonic_gram: l_max outside 0..8");
    std::vector<std::pair<int, int>> idx;
    for (int l = 0; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m) idx.emplace_back(l, m);
    std::vector<double> x, w;
    gauss_legendre(n_theta, x, w);
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd vals(k);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::acos(x[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * j / n_phi;
            for (int a = 0; a < k; ++a)
                vals(a) = spherical_harmonic(idx[static_cast<std::size_t>(a)].first,
                                             idx[static_cast<std::size_t>(a)].second, theta, phi);
            g += (w[static_cast<std::size_t>(i)] * 2.0 * kPi / n_phi) * vals * vals.transpose();
        }
    }
    return g;
}

namespace {

double evaluate(const HarmonicCoefficients& coeffs, double r, double theta, double phi) {
    double u = 0.0;
    for (const auto& [lm, ab] : coeffs) {
        const int l = lm.first;
        u += (ab.first * std::pow(r, l) + ab.second * std::pow(r, -(l + 1))) *
             spherical_harmonic(l, lm.second, theta, phi);
    }
    return u;
}

void check_coefficients(const HarmonicCoefficients& coeffs) {
    for (const auto& [lm, ab] : coeffs) {
        if (lm.first < 0 || lm.first > kMaxHarmonicDegree || std::abs(lm.second) > lm.first) {
            std::ostringstream msg;
            msg << "harmonic (" << lm.first << ", " << lm.second << ") outside the implemented table (l <= "
                << kMaxHarmonicDegree << ", |m| <= l)";
            throw InputError(msg.str());
        }
    }
}

}  // namespace

std::vector<double> reconstruct_solution(const HarmonicCoefficients& coeffs, double r,
                                         const std::vector<Direction>& dirs) {
    check_coefficients(coeffs);
    if (!(r > 0)) throw InputError("reconstruct_solution: r must be positive");
    std::vector<double> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) out.push_back(evaluate(coeffs, r, d.theta, d.phi));
    return out;
}

double harmonic_residual(const HarmonicCoefficients& coeffs, double r, const std::vector<Direction>& dirs,
                         double h) {
    check_coefficients(coeffs);
    if (!(r > h)) throw InputError("harmonic_residual: r must exceed h");
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& d : dirs) {
        if (!(d.theta > 2 * h && d.theta < kPi - 2 * h)) throw InputError("harmonic_residual: direction too close to a pole");
        auto u = [&](double rr, double th, double ph) { return evaluate(coeffs, rr, th, ph); };
        const double u0 = u(r, d.theta, d.phi);
        const double urr = (u(r + h, d.theta, d.phi) - 2 * u0 + u(r - h, d.theta, d.phi)) / (h * h);
        const double ur = (u(r + h, d.theta, d.phi) - u(r - h, d.theta, d.phi)) / (2 * h);
        const double utt = (u(r, d.theta + h, d.phi) - 2 * u0 + u(r, d.theta - h, d.phi)) / (h * h);
        const double ut = (u(r, d.theta + h, d.phi) - u(r, d.theta - h, d.phi)) / (2 * h);
        const double upp = (u(r, d.theta, d.phi + h) - 2 * u0 + u(r, d.theta, d.phi - h)) / (h * h);
        const double st = std::sin(d.theta);
        const double lap =
            urr + 2.0 / r * ur + (utt + std::cos(d.theta) / st * ut + upp / (st * st)) / (r * r);
        worst = std::max(worst, std::abs(lap));
        scale = std::max(scale, std::abs(u0) / (r * r));
    }
    // A constant solution has no natural scale; fall back to absolute.
    return scale > 0 ? worst / scale : worst;
}

std::vector<int> cylinder_spectrum(int k_max) {
    if (k_max < 0) throw InputError("cylinder_spectrum: k_max must be >= 0");
    std::set<int> out;
    for (int k = -k_max; k <= k_max; ++k) {
        Eigen::Matrix2d a;
        a << 0.0, 1.0, static_cast<double>(k) * k, 0.0;
        const Eigen::Vector2cd ev = a.eigenvalues();
        for (int i = 0; i < 2; ++i) {
            const double v = ev(i).real();
            const long r = std::lround(v);
            if (std::abs(v - r) > 1e-9 || std::abs(ev(i).imag()) > 1e-9)
                throw NumericalError("cylinder_spectrum: non-integer eigenvalue");
            out.insert(static_cast<int>(r));
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace maslov
