#include "maslov/model_suite.hpp"

#include <cmath>

#include "maslov/fd_oracle.hpp"
#include "maslov/flow.hpp"

namespace maslov {

namespace {

struct ScalarPulse {
    double a, b;
    int p;

    double amplitude() const { return std::pow((p + 1) * a / (2.0 * b), 1.0 / (p - 1)); }
    double k() const { return (p - 1) * std::sqrt(a) / 2.0; }
    double phi(double x) const { return amplitude() * std::pow(1.0 / std::cosh(k() * x), 2.0 / (p - 1)); }
    double phi_x(double x) const { return -2.0 / (p - 1) * k() * std::tanh(k() * x) * phi(x); }
    double g(double u) const { return -0.5 * a * u * u + b * std::pow(u, p + 1) / (p + 1); }
    double g2(double u) const { return -a + p * b * std::pow(u, p - 1); }
    double decay() const { return (p - 1) * std::sqrt(a); }
};

ScalarPulse draw_pulse(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(0.5, 1.5), ub(0.5, 2.0);
    std::bernoulli_distribution cubic(0.5);
    return {ua(rng), ub(rng), cubic(rng) ? 3 : 2};
}

Mat rotation(double angle) {
    Mat r(2, 2);
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
}

Mat random_orthogonal(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    return orthonormalize(a);
}

double bump(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

}  // namespace

WaveModel random_pulse_model(std::mt19937_64& rng, int index) {
    std::bernoulli_distribution two(0.5);
    const std::string name = "random_pulse_" + std::to_string(index);
    if (!two(rng)) {
        const ScalarPulse s = draw_pulse(rng);
        auto hess = [s](const Vec& u) { return Mat::Constant(1, 1, s.g2(u(0))); };
        auto g = [s](const Vec& u) { return s.g(u(0)); };
        auto phi = [s](double x) { return Vec::Constant(1, s.phi(x)); };
        auto phi_x = [s](double x) { return Vec::Constant(1, s.phi_x(x)); };
        const Mat qinf = Mat::Constant(1, 1, -s.a);
        WaveModel m = model_from_profile(name, 1, hess, g, phi, phi_x, qinf, qinf, s.decay(), WaveKind::Pulse);
        validate_model(m);
        return m;
    }
    const ScalarPulse s1 = draw_pulse(rng);
    const ScalarPulse s2 = draw_pulse(rng);
    std::uniform_real_distribution<double> ang(0.0, kPi), shift(-2.0, 2.0);
    const Mat r = rotation(ang(rng));
    const double sh = shift(rng);
    // G(u) = G1((R^T u)_0) + G2((R^T u)_1); the second pulse is centred at sh.
    auto hess = [s1, s2, r](const Vec& u) {
        const Vec v = r.transpose() * u;
        Mat d = Mat::Zero(2, 2);
        d(0, 0) = s1.g2(v(0));
        d(1, 1) = s2.g2(v(1));
        return Mat(r * d * r.transpose());
    };
    auto g = [s1, s2, r](const Vec& u) {
        const Vec v = r.transpose() * u;
        return s1.g(v(0)) + s2.g(v(1));
    };
    auto phi = [s1, s2, r, sh](double x) {
        Vec v(2);
        v << s1.phi(x), s2.phi(x - sh);
        return Vec(r * v);
    };
    auto phi_x = [s1, s2, r, sh](double x) {
        Vec v(2);
        v << s1.phi_x(x), s2.phi_x(x - sh);
        return Vec(r * v);
    };
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = -s1.a;
    d(1, 1) = -s2.a;
    const Mat qinf = r * d * r.transpose();
    const Mat qsym = 0.5 * (qinf + qinf.transpose());
    WaveModel m = model_from_profile(name, 2, hess, g, phi, phi_x, qsym, qsym, std::min(s1.decay(), s2.decay()),
                                     WaveKind::Pulse);
    // Exact symmetry of Q(x).
    m.potential = [inner = m.potential](double x) {
        const Mat q = inner(x);
        return Mat(0.5 * (q + q.transpose()));
    };
    validate_model(m);
    return m;
}

WaveModel random_bump_model(std::mt19937_64& rng, int index) {
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_real_distribution<double> depth(0.3, 2.0), amp(-1.0, 3.0), centre(-3.0, 3.0), width(1.0, 4.0);
    std::uniform_int_distribution<int> count(1, 2);
    const int n = dim(rng);
    const Mat o = random_orthogonal(rng, n);
    Vec diag(n);
    for (int i = 0; i < n; ++i) diag(i) = -depth(rng);
    Mat qinf = o * diag.asDiagonal() * o.transpose();
    qinf = Mat(0.5 * (qinf + qinf.transpose()));

    struct Bump {
        Mat s;
        double c, w;
    };
    std::vector<Bump> bumps;
    const int nb = count(rng);
    for (int k = 0; k < nb; ++k) {
        const Mat ob = random_orthogonal(rng, n);
        Vec ev(n);
        for (int i = 0; i < n; ++i) ev(i) = amp(rng);
        Mat s = ob * ev.asDiagonal() * ob.transpose();
        s = Mat(0.5 * (s + s.transpose()));
        const double c = centre(rng);
        const double w = width(rng);
        bumps.push_back({s, c, w});
    }
    WaveModel m;
    m.name = "random_bump_" + std::to_string(index);
    m.n = n;
    m.q_minus = qinf;
    m.q_plus = qinf;
    m.kind = WaveKind::Custom;
    m.decay_rate = 1.0;
    m.potential = [qinf, bumps](double x) {
        Mat q = qinf;
        for (const auto& b : bumps) q += bump((x - b.c) / b.w) * b.s;
        return q;
    };
    validate_model(m);
    return m;
}

std::vector<WaveModel> randomized_suite(const SuiteOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::vector<WaveModel> out;
    for (int i = 0; i < opts.pulses; ++i) out.push_back(random_pulse_model(rng, i));
    for (int i = 0; i < opts.bumps; ++i) {
        for (;;) {
            WaveModel m = random_bump_model(rng, i);
            const double L = resolve_truncation(m, FlowOptions{});
            std::vector<double> ev = oracle_eigenvalues(discretize(m, L, 0.05));
            bool ok = true;
            for (std::size_t k = 0; k < ev.size() && ev[k] > opts.lambda_star - opts.min_gap; ++k) {
                if (std::abs(ev[k] - opts.lambda_star) < opts.min_gap) ok = false;
                if (k > 0 && ev[k - 1] - ev[k] < opts.min_gap) ok = false;
            }
            if (ok) {
                out.push_back(std::move(m));
                break;
            }
        }
    }
    return out;
}

}  // namespace maslov
