#include "maslov/evans.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "frame_transport.hpp"
#include "maslov/errors.hpp"
#include "maslov/fd_oracle.hpp"
#include "maslov/parallel.hpp"

namespace maslov {

namespace {

template <typename Scalar>
struct EvansPair {
    detail::FrameMat<Scalar> u;  // orthonormal, at x0
    detail::FrameMat<Scalar> s;
    cplx log_scale{0.0, 0.0};
};

template <typename Scalar>
detail::FrameMat<Scalar> initial_frame(const Mat& q, Scalar lambda, double sign, double L, cplx& log_scale) {
    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    const Eigen::Index n = q.rows();
    detail::FrameMat<Scalar> f(2 * n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Vec v = es.eigenvectors().col(i);
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        if (v(big) < 0) v = -v;
        const cplx mu = std::sqrt(cplx(lambda) - es.eigenvalues()(i));
        if (!(mu.real() > 1e-8)) {
            std::ostringstream msg;
            msg << "lambda=" << cplx(lambda) << " lies in the essential spectrum (eigenvalue " << es.eigenvalues()(i)
                << " of the asymptotic potential)";
            throw InputError(msg.str());
        }
        Scalar mus;
        if constexpr (std::is_same_v<Scalar, double>) mus = mu.real();
        else mus = mu;
        f.col(i).head(n) = v.cast<Scalar>();
        f.col(i).tail(n) = sign * mus * v.cast<Scalar>();
        log_scale -= mu * L;
    }
    return f;
}

template <typename Scalar>
EvansPair<Scalar> evans_pair(const WaveModel& m, Scalar lambda, const FlowOptions& opts) {
    const double L = resolve_truncation(m, opts);
    const double x0 = opts.match_point;
    if (!(std::abs(x0) < L)) throw InputError("match_point must lie inside (-L, L)");
    const ode::Tolerances tol = detail::flow_tolerances(opts.rtol, opts.atol);
    EvansPair<Scalar> p;
    double log_r = 0.0;
    double ld = 0.0;
    auto u = orthonormalize(initial_frame<Scalar>(m.q_minus, lambda, 1.0, L, p.log_scale), &ld);
    log_r += ld;
    auto s = orthonormalize(initial_frame<Scalar>(m.q_plus, lambda, -1.0, L, p.log_scale), &ld);
    log_r += ld;
    p.u = detail::transport_frame<Scalar>(m, lambda, -L, x0, u, opts.renorm_every, tol, &log_r);
    p.s = detail::transport_frame<Scalar>(m, lambda, L, x0, s, opts.renorm_every, tol, &log_r);
    p.log_scale += log_r;
    return p;
}

template <typename Scalar>
detail::FrameMat<Scalar> joined(const EvansPair<Scalar>& p) {
    detail::FrameMat<Scalar> w(p.u.rows(), p.u.cols() + p.s.cols());
    w << p.u, p.s;
    return w;
}

struct Samples {
    std::vector<double> s;
    std::vector<cplx> v;
};

WindingResult wind(const WaveModel& m, const std::function<cplx(double)>& point, int initial,
                   const FlowOptions& opts) {
    if (initial < 8) throw InputError("contour needs at least 8 samples");
    Samples smp;
    for (int i = 0; i < initial; ++i) smp.s.push_back(static_cast<double>(i) / initial);
    smp.v.resize(smp.s.size());
    parallel_for(initial, [&](int i) {
        smp.v[static_cast<std::size_t>(i)] = evans_at(m, point(smp.s[static_cast<std::size_t>(i)]), opts).value;
    });

    WindingResult out;
    auto step = [&](std::size_t i) {
        const std::size_t j = (i + 1) % smp.v.size();
        return std::arg(smp.v[j] / smp.v[i]);
    };
    for (;;) {
        std::vector<double> mids;
        for (std::size_t i = 0; i < smp.v.size(); ++i) {
            if (std::abs(step(i)) >= kPi / 2) {
                const double a = smp.s[i];
                const double b = (i + 1 < smp.s.size()) ? smp.s[i + 1] : 1.0;
                mids.push_back(0.5 * (a + b));
            }
        }
        if (mids.empty()) break;
        if (out.refinement_rounds == kMaxRefinementRounds)
            throw UnderResolvedError("winding_number: phase steps still >= pi/2 after " +
                                     std::to_string(kMaxRefinementRounds) + " refinement rounds");
        ++out.refinement_rounds;
        std::vector<cplx> mv(mids.size());
        parallel_for(static_cast<int>(mids.size()), [&](int i) {
            mv[static_cast<std::size_t>(i)] = evans_at(m, point(mids[static_cast<std::size_t>(i)]), opts).value;
        });
        Samples merged;
        std::size_t k = 0;
        for (std::size_t i = 0; i < smp.s.size(); ++i) {
            merged.s.push_back(smp.s[i]);
            merged.v.push_back(smp.v[i]);
            const double b = (i + 1 < smp.s.size()) ? smp.s[i + 1] : 1.0;
            if (k < mids.size() && mids[k] > smp.s[i] && mids[k] < b) {
                merged.s.push_back(mids[k]);
                merged.v.push_back(mv[k]);
                ++k;
            }
        }
        smp = std::move(merged);
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const cplx& v : smp.v) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    out.evaluations = static_cast<int>(smp.v.size());
    out.min_relative_modulus = hi > 0 ? lo / hi : 0.0;
    if (!(out.min_relative_modulus >= kZeroMargin)) {
        std::ostringstream msg;
        msg << "winding_number: |E| drops to " << out.min_relative_modulus
            << " of its maximum on the contour (eigenvalue on or near the contour)";
        throw ResonanceError(msg.str());
    }
    double total = 0.0;
    for (std::size_t i = 0; i < smp.v.size(); ++i) total += step(i);
    out.raw = total / (2.0 * kPi);
    out.winding = static_cast<int>(std::lround(out.raw));
    if (std::abs(out.raw - out.winding) >= 0.1) {
        std::ostringstream msg;
        msg << "winding_number: total phase " << out.raw << " turns is not close to an integer";
        throw UnderResolvedError(msg.str());
    }
    return out;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double& fmin) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if (fc < fd) {
        fmin = fc;
        return c;
    }
    fmin = fd;
    return d;
}

}  // namespace

cplx Contour::point(double s) const {
    const double u = 2.0 * s - 1.0;
    const double ang = kPi + kPi * (u < 0 ? -1.0 : 1.0) * std::pow(std::abs(u), grading);
    return center + radius * std::polar(1.0, ang);
}

EvansValue evans_at(const WaveModel& m, cplx lambda, const FlowOptions& opts) {
    const EvansPair<cplx> p = evans_pair<cplx>(m, lambda, opts);
    const cplx det = joined(p).determinant();
    const cplx value = det * std::exp(p.log_scale);
    if (!std::isfinite(std::abs(value))) throw NumericalError("Evans function overflow");
    return {lambda, value};
}

double evans_normalized(const WaveModel& m, double lambda, const FlowOptions& opts, int* kernel_dim) {
    const EvansPair<double> p = evans_pair<double>(m, lambda, opts);
    const Mat w = joined(p);
    if (kernel_dim) {
        const Vec sv = Eigen::JacobiSVD<Mat>(w).singularValues();
        *kernel_dim = static_cast<int>((sv.array() < 1e-6).count());
    }
    return w.determinant();
}

WindingResult winding_number(const WaveModel& m, const Contour& c, const FlowOptions& opts) {
    if (!(c.radius > 0)) throw InputError("contour radius must be positive");
    if (!(c.grading >= 1.0)) throw InputError("contour grading must be >= 1");
    return wind(m, [&c](double s) { return c.point(s); }, c.samples, opts);
}

WindingResult winding_number(const WaveModel& m, std::span<const cplx> vertices, int per_edge,
                             const FlowOptions& opts) {
    if (vertices.size() < 3) throw InputError("polygon contour needs at least 3 vertices");
    if (per_edge < 2) throw InputError("polygon contour needs at least 2 samples per edge");
    const std::vector<cplx> v(vertices.begin(), vertices.end());
    const std::size_t k = v.size();
    auto point = [v, k](double s) {
        const double t = s * static_cast<double>(k);
        const std::size_t e = std::min(k - 1, static_cast<std::size_t>(t));
        const double f = t - static_cast<double>(e);
        return v[e] + f * (v[(e + 1) % k] - v[e]);
    };
    return wind(m, point, static_cast<int>(k) * per_edge, opts);
}

Contour enclosing_contour(const WaveModel& m, const FlowOptions& opts, int samples, double grading) {
    const double lo = opts.epsilon_shift;
    const double hi = std::max(lambda_max_bound(m, opts), lo + 1.0);
    Contour c;
    c.center = cplx(0.5 * (lo + hi), 0.0);
    c.radius = 0.5 * (hi - lo);
    c.samples = samples;
    c.grading = grading;
    return c;
}

std::vector<RealEvansZero> evans_real_zeros(const WaveModel& m, double lo, double hi, const FlowOptions& opts,
                                            double spacing) {
    if (!(lo < hi)) throw InputError("evans_real_zeros: need lo < hi");
    const int cells = std::max(32, static_cast<int>(std::ceil((hi - lo) / spacing)));
    std::vector<double> lam(static_cast<std::size_t>(cells + 1));
    std::vector<double> val(lam.size());
    for (int k = 0; k <= cells; ++k) lam[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / cells;
    parallel_for(cells + 1, [&](int k) {
        val[static_cast<std::size_t>(k)] = evans_normalized(m, lam[static_cast<std::size_t>(k)], opts);
    });

    auto f = [&](double l) { return evans_normalized(m, l, opts); };
    std::vector<RealEvansZero> zeros;
    auto finish = [&](double at) {
        RealEvansZero z;
        z.lambda = at;
        z.value = evans_normalized(m, at, opts, &z.kernel_dim);
        z.kernel_dim = std::max(z.kernel_dim, 1);
        zeros.push_back(z);
    };
    for (int k = 0; k < cells; ++k) {
        double a = lam[static_cast<std::size_t>(k)];
        double b = lam[static_cast<std::size_t>(k + 1)];
        double fa = val[static_cast<std::size_t>(k)];
        const double fb = val[static_cast<std::size_t>(k + 1)];
        if (fa == 0.0) {
            finish(a);
            continue;
        }
        if ((fa < 0) != (fb < 0) && fb != 0.0) {
            while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0) == (fa < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            finish(0.5 * (a + b));
        }
    }
    // Even-order zeros leave no sign change: look at interior local minima.
    for (int k = 1; k < cells; ++k) {
        const double l = std::abs(val[static_cast<std::size_t>(k - 1)]);
        const double c = std::abs(val[static_cast<std::size_t>(k)]);
        const double r = std::abs(val[static_cast<std::size_t>(k + 1)]);
        const bool same_sign = (val[static_cast<std::size_t>(k - 1)] < 0) == (val[static_cast<std::size_t>(k)] < 0) &&
                               (val[static_cast<std::size_t>(k)] < 0) == (val[static_cast<std::size_t>(k + 1)] < 0);
        if (!(c < l && c < r && same_sign)) continue;
        double fmin = 0.0;
        const double at = golden_min([&](double x) { return std::abs(f(x)); }, lam[static_cast<std::size_t>(k - 1)],
                                     lam[static_cast<std::size_t>(k + 1)], fmin);
        if (fmin < 1e-8) finish(at);
    }
    std::sort(zeros.begin(), zeros.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; });
    std::vector<RealEvansZero> out;
    for (const auto& z : zeros) {
        if (!out.empty() && std::abs(out.back().lambda - z.lambda) < 1e-7) continue;
        out.push_back(z);
    }
    return out;
}

SpectralReport compare_counts(const WaveModel& m, const FlowOptions& opts, const CountChannels& channels) {
    CountChannels all = channels;
    all.winding = true;
    all.oracle = true;
    return count_unstable_eigenvalues(m, opts, all);
}

}  // namespace maslov
