#include "maslov/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frame_transport.hpp"
#include "maslov/errors.hpp"
#include "maslov/evans.hpp"
#include "maslov/fd_oracle.hpp"

namespace maslov {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void check_options(const FlowOptions& o) {
    if (!(o.rtol > 0) || !(o.atol > 0)) throw InputError("rtol and atol must be positive");
    if (!(o.renorm_every > 0)) throw InputError("renorm_every must be positive");
    if (!(o.crossing_tol > 0)) throw InputError("crossing_tol must be positive");
}

double det_a(const LagrangianFrame& f) { return f.a().determinant(); }

FrameSample make_sample(double x, const Mat& q) {
    FrameSample s;
    s.x = x;
    s.frame = LagrangianFrame::from_stacked(q);
    s.phases = w_phases(s.frame);
    return s;
}

// Number of W crossings (with multiplicity) between two frames.
int crossings_between(const std::vector<double>& from, const std::vector<double>& to, double tol) {
    int c = 0;
    for (const auto& e : step_crossings(from, to, 0.0, 1.0, tol)) c += e.multiplicity;
    return c;
}

std::vector<CrossingEvent> refine_step(const WaveModel& m, double lambda, const FrameSample& start, double x_end,
                                       std::vector<CrossingEvent> events, const FlowOptions& opts) {
    const ode::Tolerances tol = detail::flow_tolerances(opts.rtol, opts.atol);
    int target = 0;
    std::vector<CrossingEvent> out;
    const Mat u0 = start.frame.stacked();
    for (CrossingEvent e : events) {
        target += e.multiplicity;
        double lo = start.x;
        double hi = x_end;
        while (hi - lo > 1e-11 * std::max(1.0, std::abs(hi))) {
            const double mid = 0.5 * (lo + hi);
            const Mat u = detail::advance_frame<double>(m, lambda, start.x, mid, u0, tol);
            const std::vector<double> ph = w_phases(LagrangianFrame::from_stacked(u));
            if (crossings_between(start.phases, ph, opts.crossing_tol) >= target) hi = mid;
            else lo = mid;
        }
        e.param = 0.5 * (lo + hi);
        // Count every eigenvalue of W sitting at -1 at the refined point.
        const Mat u = detail::advance_frame<double>(m, lambda, start.x, e.param, u0, tol);
        int at_minus_one = 0;
        for (double p : w_phases(LagrangianFrame::from_stacked(u)))
            if (std::abs(wrap_angle(p + kPi)) <= 1e-6) ++at_minus_one;
        e.multiplicity = std::max(e.multiplicity, std::min(at_minus_one, m.n));
        out.push_back(e);
    }
    return merge_events(std::move(out), 1e-9);
}

ConjugateScan scan_once(const WaveModel& m, double lambda, const FlowOptions& opts) {
    ConjugateScan scan;
    scan.path = evolve_unstable_frame(m, lambda, opts);
    const auto& s = scan.path.samples;
    for (const auto& smp : s) scan.det_a.push_back(det_a(smp.frame));

    std::vector<int> cumulative(s.size(), 0);
    for (std::size_t k = 1; k < s.size(); ++k) {
        auto ev = step_crossings(s[k - 1].phases, s[k].phases, s[k - 1].x, s[k].x, opts.crossing_tol);
        int mult = 0;
        for (const auto& e : ev) mult += e.multiplicity;
        cumulative[k] = cumulative[k - 1] + mult;
        if (!ev.empty()) {
            for (const auto& e : refine_step(m, lambda, s[k - 1], s[k].x, std::move(ev), opts))
                scan.events.push_back(e);
        }
        if ((scan.det_a[k - 1] > 0) != (scan.det_a[k] > 0)) ++scan.det_sign_changes;
    }

    // det A changes sign exactly at odd-dimensional intersections; compare at
    // samples where det A is clearly away from zero.
    const double sign0 = scan.det_a.front() > 0 ? 1.0 : -1.0;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (std::abs(scan.det_a[k]) < 1e-6) continue;
        const double expected = (cumulative[k] % 2 == 0) ? sign0 : -sign0;
        if ((scan.det_a[k] > 0 ? 1.0 : -1.0) != expected) {
            std::ostringstream msg;
            msg << "conjugate point detection: det A sign at x=" << s[k].x << " disagrees with " << cumulative[k]
                << " W crossings so far";
            throw UnderResolvedError(msg.str());
        }
    }
    return scan;
}

}  // namespace

double resolve_truncation(const WaveModel& m, const FlowOptions& opts) {
    const double L = opts.truncation > 0 ? opts.truncation : std::max(20.0, std::ceil(20.0 / m.decay_rate));
    if (!(std::exp(-m.decay_rate * L) < 1e-8)) {
        std::ostringstream msg;
        msg << "truncation L=" << L << " too short for decay_rate " << m.decay_rate
            << " (need exp(-decay_rate L) < 1e-8)";
        throw InputError(msg.str());
    }
    return L;
}

Mat system_matrix(const WaveModel& m, double x, double lambda) {
    const int n = m.n;
    Mat a = Mat::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = Mat::Identity(n, n);
    a.bottomLeftCorner(n, n) = lambda * Mat::Identity(n, n) - m.potential(x);
    return a;
}

CMat system_matrix(const WaveModel& m, double x, cplx lambda) {
    const int n = m.n;
    CMat a = CMat::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = CMat::Identity(n, n);
    a.bottomLeftCorner(n, n) = lambda * CMat::Identity(n, n) - m.potential(x).cast<cplx>();
    return a;
}

AsymptoticSplitting asymptotic_splitting(const WaveModel& m, double lambda, Side side) {
    const Mat& q = side == Side::Minus ? m.q_minus : m.q_plus;
    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    const int n = m.n;
    AsymptoticSplitting out;
    out.unstable.resize(2 * n, n);
    out.stable.resize(2 * n, n);
    out.rates.resize(n);
    for (int i = 0; i < n; ++i) {
        const double gap = lambda - es.eigenvalues()(i);
        if (!(gap > 0)) {
            std::ostringstream msg;
            msg << "lambda=" << lambda << " is not above the essential spectrum: eigenvalue " << es.eigenvalues()(i)
                << " of q_" << (side == Side::Minus ? "minus" : "plus");
            throw InputError(msg.str());
        }
        Vec v = es.eigenvectors().col(i);
        Eigen::Index big = 0;
        v.cwiseAbs().maxCoeff(&big);
        if (v(big) < 0) v = -v;
        const double mu = std::sqrt(gap);
        out.rates(i) = mu;
        out.unstable.col(i) << v, mu * v;
        out.stable.col(i) << v, -mu * v;
    }
    return out;
}

FramePath evolve_unstable_frame(const WaveModel& m, double lambda, const FlowOptions& opts) {
    check_options(opts);
    const double L = resolve_truncation(m, opts);
    const ode::Tolerances tol = detail::flow_tolerances(opts.rtol, opts.atol);

    FramePath path;
    path.lambda = lambda;
    Mat u = orthonormalize(asymptotic_splitting(m, lambda, Side::Minus).unstable);
    path.samples.push_back(make_sample(-L, u));

    double x = -L;
    double hint = 0.0;
    while (x < L) {
        double step = std::min(opts.renorm_every, L - x);
        for (;;) {
            const double xe = (step >= L - x) ? L : x + step;
            double trial_hint = hint;
            Mat next = detail::advance_frame<double>(m, lambda, x, xe, u, tol, nullptr, &trial_hint);
            FrameSample smp = make_sample(xe, next);
            if (max_phase_step(path.samples.back().phases, smp.phases) >= kPi / 4 && step > 1e-6) {
                step *= 0.5;
                continue;
            }
            const double resid = check_lagrangian(smp.frame, 1.0).asymmetry;
            path.max_lagrangian_residual = std::max(path.max_lagrangian_residual, resid);
            if (resid > 10.0 * SymplecticTolerances{}.lagr_tol) {
                std::ostringstream msg;
                msg << "Lagrangian drift " << resid << " at x=" << xe << ", lambda=" << lambda;
                throw NumericalError(msg.str());
            }
            u = std::move(next);
            x = xe;
            hint = trial_hint;
            path.samples.push_back(std::move(smp));
            break;
        }
    }
    return path;
}

ConjugateScan scan_conjugate_points(const WaveModel& m, double lambda_star, const FlowOptions& opts) {
    try {
        return scan_once(m, lambda_star, opts);
    } catch (const UnderResolvedError&) {
        FlowOptions finer = opts;
        finer.renorm_every *= 0.5;
        finer.rtol *= 0.5;
        ConjugateScan scan = scan_once(m, lambda_star, finer);
        scan.retried = true;
        return scan;
    }
}

std::vector<CrossingEvent> detect_conjugate_points(const WaveModel& m, double lambda_star, const FlowOptions& opts) {
    return scan_conjugate_points(m, lambda_star, opts).events;
}

double lambda_max_bound(const WaveModel& m, const FlowOptions& opts) {
    const double L = resolve_truncation(m, opts);
    double sup = -std::numeric_limits<double>::infinity();
    const int samples = 4000;
    for (int k = 0; k <= samples; ++k) {
        const double x = -L + 2.0 * L * k / samples;
        Eigen::SelfAdjointEigenSolver<Mat> es(m.potential(x), Eigen::EigenvaluesOnly);
        sup = std::max(sup, es.eigenvalues().maxCoeff());
    }
    return 1.0 + sup;
}

SquareReport maslov_square(const WaveModel& m, double lambda_star, const FlowOptions& opts) {
    SquareReport rep;
    rep.lambda_star = lambda_star;
    // Any value above the bound works for the right edge; keep the square
    // non-degenerate when the bound falls below lambda_star.
    rep.lambda_inf = std::max(lambda_max_bound(m, opts), lambda_star + 1.0);
    rep.truncation = resolve_truncation(m, opts);

    // Left edge.
    rep.left_events = detect_conjugate_points(m, lambda_star, opts);
    const int left = signed_count(rep.left_events);

    // Top edge.
    int evans_mult = 0;
    for (const RealEvansZero& z : evans_real_zeros(m, lambda_star, rep.lambda_inf, opts)) {
        const double delta = 1e-5 * std::max(1.0, std::abs(z.lambda));
        const int below = signed_count(detect_conjugate_points(m, z.lambda - delta, opts));
        const int above = signed_count(detect_conjugate_points(m, z.lambda + delta, opts));
        const int jump = above - below;
        evans_mult += z.kernel_dim;
        if (jump == 0) {
            rep.diagnostics.push_back("top: Evans zero at lambda=" + num(z.lambda) +
                                      " without a change in the conjugate-point count");
            continue;
        }
        if (std::abs(jump) != z.kernel_dim)
            rep.diagnostics.push_back("top: at lambda=" + num(z.lambda) + " the conjugate-point count jumps by " +
                                      std::to_string(jump) + " but the Evans kernel has dimension " +
                                      std::to_string(z.kernel_dim));
        rep.top_events.push_back({z.lambda, std::abs(jump), jump > 0 ? 1 : -1});
    }

    // Right edge, traversed with x decreasing.
    for (CrossingEvent e : detect_conjugate_points(m, rep.lambda_inf, opts)) {
        e.direction = -e.direction;
        rep.right_events.push_back(e);
    }
    std::reverse(rep.right_events.begin(), rep.right_events.end());

    // Bottom edge at x = -L, lambda decreasing: the plane is the asymptotic
    // unstable plane.
    {
        const int samples = 200;
        std::vector<LagrangianFrame> frames;
        std::vector<double> params;
        for (int k = 0; k <= samples; ++k) {
            const double lam = rep.lambda_inf - (rep.lambda_inf - lambda_star) * k / samples;
            frames.push_back(LagrangianFrame::from_stacked(asymptotic_splitting(m, lam, Side::Minus).unstable));
            params.push_back(lam);
            if (dirichlet_intersection_dim(frames.back(), opts.crossing_tol) != 0)
                rep.diagnostics.push_back("bottom: Dirichlet intersection at lambda=" + num(lam));
        }
        rep.bottom_events = path_maslov_index(frames, params, opts.crossing_tol).events;
    }

    rep.net_index = left + signed_count(rep.top_events) + signed_count(rep.right_events) +
                    signed_count(rep.bottom_events);
    int top_count = 0;
    for (const auto& e : rep.top_events) top_count += e.multiplicity;
    int left_count = 0;
    for (const auto& e : rep.left_events) left_count += e.multiplicity;

    if (rep.net_index != 0) rep.diagnostics.push_back("net Maslov index " + std::to_string(rep.net_index) + " != 0");
    if (!rep.right_events.empty()) rep.diagnostics.push_back("right edge has conjugate points at lambda_inf");
    if (!rep.bottom_events.empty()) rep.diagnostics.push_back("bottom edge has crossings");
    if (left_count != top_count)
        rep.diagnostics.push_back("left count " + std::to_string(left_count) + " != top count " +
                                  std::to_string(top_count));
    if (evans_mult != top_count)
        rep.diagnostics.push_back("Evans zeros (with multiplicity) " + std::to_string(evans_mult) +
                                  " != top count " + std::to_string(top_count));
    rep.consistent = rep.diagnostics.empty();
    return rep;
}

SpectralReport count_unstable_eigenvalues(const WaveModel& m, const FlowOptions& opts, const CountChannels& channels) {
    const EssentialSpectrumCheck ess = check_essential_stability(m);
    if (!ess.stable)
        throw InputError("essential spectrum is unstable: largest eigenvalue of q_minus/q_plus is " +
                         num(ess.max_eig_qinf));
    SpectralReport rep;
    rep.model = m.name;
    rep.lambda_star = opts.epsilon_shift;
    rep.conjugate_points = detect_conjugate_points(m, opts.epsilon_shift, opts);
    for (const auto& e : rep.conjugate_points) rep.conjugate_count += e.multiplicity;
    for (const auto& e : rep.conjugate_points)
        if (e.direction != 1) rep.diagnostics.push_back("conjugate point at x=" + num(e.param) + " has direction -1");

    if (m.kind == WaveKind::Pulse && rep.conjugate_count < 1) {
        rep.pulse_check_passed = false;
        rep.diagnostics.push_back("pulse with no unstable eigenvalue");
    }
    if (channels.winding) {
        const Contour c = enclosing_contour(m, opts, channels.contour_samples, channels.contour_grading);
        const WindingResult w = winding_number(m, c, opts);
        rep.winding_count = w.winding;
        rep.winding_refinement_rounds = w.refinement_rounds;
        if (w.winding != rep.conjugate_count) rep.agree = false;
    }
    if (channels.oracle) {
        rep.oracle_count = oracle_count_above(m, resolve_truncation(m, opts), channels.oracle_h, opts.epsilon_shift);
        if (*rep.oracle_count != rep.conjugate_count) rep.agree = false;
    }
    if (!rep.agree) rep.diagnostics.push_back("counting channels disagree");
    return rep;
}

}  // namespace maslov
