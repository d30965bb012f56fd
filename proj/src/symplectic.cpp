#include "maslov/symplectic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "maslov/errors.hpp"

namespace maslov {

LagrangianFrame::LagrangianFrame(Mat a, Mat b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() < 1 || a_.rows() != a_.cols() || b_.rows() != a_.rows() || b_.cols() != a_.cols())
        throw InputError("LagrangianFrame: A and B must be square n x n blocks of equal size, n >= 1");
}

LagrangianFrame LagrangianFrame::from_stacked(const Mat& stacked) {
    const Eigen::Index n = stacked.cols();
    if (stacked.rows() != 2 * n) throw InputError("LagrangianFrame: stacked frame must be 2n x n");
    return {stacked.topRows(n), stacked.bottomRows(n)};
}

Mat LagrangianFrame::stacked() const {
    Mat f(2 * a_.rows(), a_.cols());
    f << a_, b_;
    return f;
}

LagrangianFrame LagrangianFrame::orthonormalized() const {
    return from_stacked(orthonormalize(stacked()));
}

LagrangianFrame LagrangianFrame::right_multiplied(const Mat& r) const {
    if (r.rows() != a_.cols() || r.cols() != a_.cols())
        throw InputError("LagrangianFrame: right factor must be n x n");
    return {a_ * r, b_ * r};
}

LagrangianCheck check_lagrangian(const LagrangianFrame& frame, double tol, double rank_tol) {
    LagrangianCheck out;
    const Mat f = frame.stacked();
    Eigen::JacobiSVD<Mat> svd(f);
    const Vec& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double floor = rank_tol * std::max(1.0, smax);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= floor) ++out.rank_defect;
    out.smallest_singular_value = sv.size() ? sv(sv.size() - 1) : 0.0;

    const Mat skew = frame.a().transpose() * frame.b() - frame.b().transpose() * frame.a();
    out.asymmetry = skew.size() ? Eigen::JacobiSVD<Mat>(skew).singularValues()(0) : 0.0;
    out.passed = out.rank_defect == 0 && out.asymmetry <= tol;
    return out;
}

CVec UnitaryReduction::eigenvalues() const {
    Eigen::ComplexEigenSolver<CMat> es(w, false);
    return es.eigenvalues();
}

UnitaryReduction unitary_reduction(const LagrangianFrame& frame, double unit_tol) {
    const LagrangianFrame q = frame.orthonormalized();
    const int n = q.dim();
    const cplx i(0.0, 1.0);
    const CMat z = q.a().cast<cplx>() + i * q.b().cast<cplx>();
    const CMat zbar = q.a().cast<cplx>() - i * q.b().cast<cplx>();

    // W Z = Zbar, solved as Z^T W^T = Zbar^T.
    Eigen::PartialPivLU<CMat> lu(z.transpose());
    if (!(lu.rcond() > 1e-12))
        throw NumericalError("unitary_reduction: A + iB is singular; the frame is not Lagrangian");
    CMat w = lu.solve(zbar.transpose()).transpose();

    const double defect = (w * w.adjoint() - CMat::Identity(n, n)).norm();
    if (!(defect <= unit_tol)) {
        std::ostringstream msg;
        msg << "unitary_reduction: W is not unitary (||W W* - I|| = " << defect
            << "); the frame is not Lagrangian";
        throw NumericalError(msg.str());
    }
    return {std::move(w), frame};
}

int dirichlet_intersection_dim(const LagrangianFrame& frame, double tol) {
    const UnitaryReduction red = unitary_reduction(frame);
    const CVec ev = red.eigenvalues();
    int via_w = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (std::abs(ev(k) + 1.0) <= tol) ++via_w;

    // For an orthonormal Lagrangian frame, |w + 1| over the spectrum of W equals
    // twice the singular values of A.
    const LagrangianFrame q = frame.orthonormalized();
    const Vec sa = Eigen::JacobiSVD<Mat>(q.a()).singularValues();
    int via_a = 0;
    for (Eigen::Index k = 0; k < sa.size(); ++k)
        if (2.0 * sa(k) <= tol) ++via_a;

    if (via_w != via_a) {
        std::ostringstream msg;
        msg << "dirichlet_intersection_dim: ker(W+I) gives " << via_w << " but rank defect of A gives "
            << via_a << " (ill-conditioned near tolerance " << tol << ")";
        throw InconsistencyError(msg.str());
    }
    return via_w;
}

double maslov_angle(const LagrangianFrame& frame) {
    const UnitaryReduction red = unitary_reduction(frame);
    double th = std::arg(red.w.determinant());
    if (th < 0) th += 2.0 * kPi;
    if (th >= 2.0 * kPi) th -= 2.0 * kPi;
    return th;
}

std::vector<double> w_phases(const LagrangianFrame& frame) {
    const CVec ev = unitary_reduction(frame).eigenvalues();
    std::vector<double> out(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index k = 0; k < ev.size(); ++k) out[static_cast<std::size_t>(k)] = std::arg(ev(k));
    return out;
}

namespace {

// Matched pairs (from, signed motion).  Eigenvalues on the circle are matched
// by the cyclic shift of the sorted orders with least total squared chord.
std::vector<std::pair<double, double>> match_phases(std::span<const double> from, std::span<const double> to) {
    if (from.size() != to.size()) throw InputError("phase sets of different sizes");
    std::vector<double> a(from.begin(), from.end());
    std::vector<double> b(to.begin(), to.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size();
    std::size_t best_shift = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s) {
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = wrap_angle(b[(i + s) % n] - a[i]);
            cost += 2.0 - 2.0 * std::cos(d);
        }
        if (cost < best) {
            best = cost;
            best_shift = s;
        }
    }
    std::vector<std::pair<double, double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {a[i], wrap_angle(b[(i + best_shift) % n] - a[i])};
    return out;
}

int zone(double psi, double tol) {
    if (psi < -tol) return -1;
    if (psi > tol) return 1;
    return 0;
}

}  // namespace

double max_phase_step(std::span<const double> phases_from, std::span<const double> phases_to) {
    double worst = 0.0;
    for (const auto& [start, move] : match_phases(phases_from, phases_to))
        worst = std::max(worst, std::abs(move));
    return worst;
}

std::vector<CrossingEvent> step_crossings(std::span<const double> phases_from,
                                          std::span<const double> phases_to, double t_from,
                                          double t_to, double tol) {
    std::vector<CrossingEvent> events;
    for (const auto& [start, move] : match_phases(phases_from, phases_to)) {
        if (std::abs(move) >= kPi / 2) {
            std::ostringstream msg;
            msg << "W-eigenvalue moved " << std::abs(move) << " rad between parameters " << t_from
                << " and " << t_to << "; refine the path sampling";
            throw UnderResolvedError(msg.str());
        }
        // psi = arg(-w): -1 sits at psi = 0.
        const double ps = wrap_angle(start + kPi);
        const double pe = ps + move;
        const int zs = zone(ps, tol);
        const int ze = zone(pe, tol);
        int dir = 0;
        double at = t_to;
        if (zs == -1 && ze == 1) {
            dir = 1;
            at = t_from + (t_to - t_from) * (-ps) / (pe - ps);
        } else if (zs == 1 && ze == -1) {
            dir = -1;
            at = t_from + (t_to - t_from) * (-ps) / (pe - ps);
        } else if (zs != 0 && ze == 0) {
            dir = -zs;
        }
        if (dir != 0) events.push_back({at, 1, dir});
    }
    return merge_events(std::move(events), 0.0);
}

std::vector<CrossingEvent> merge_events(std::vector<CrossingEvent> events, double tol) {
    std::stable_sort(events.begin(), events.end(),
                     [](const CrossingEvent& x, const CrossingEvent& y) { return x.param < y.param; });
    std::vector<CrossingEvent> out;
    for (const CrossingEvent& e : events) {
        bool merged = false;
        for (auto it = out.rbegin(); it != out.rend() && std::abs(it->param - e.param) <= tol; ++it) {
            if (it->direction == e.direction) {
                it->multiplicity += e.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(e);
    }
    return out;
}

int signed_count(std::span<const CrossingEvent> events) {
    return std::accumulate(events.begin(), events.end(), 0,
                           [](int acc, const CrossingEvent& e) { return acc + e.direction * e.multiplicity; });
}

MaslovIndexResult path_maslov_index(std::span<const LagrangianFrame> path, std::span<const double> params,
                                    double tol) {
    if (path.size() != params.size()) throw InputError("path_maslov_index: one parameter per frame required");
    MaslovIndexResult out;
    if (path.size() < 2) return out;
    std::vector<double> prev = w_phases(path[0]);
    for (std::size_t k = 1; k < path.size(); ++k) {
        std::vector<double> next = w_phases(path[k]);
        for (const CrossingEvent& e : step_crossings(prev, next, params[k - 1], params[k], tol))
            out.events.push_back(e);
        prev = std::move(next);
    }
    out.index = signed_count(out.events);
    return out;
}

MaslovIndexResult path_maslov_index(std::span<const LagrangianFrame> path, double tol) {
    std::vector<double> params(path.size());
    std::iota(params.begin(), params.end(), 0.0);
    return path_maslov_index(path, params, tol);
}

}  // namespace maslov
