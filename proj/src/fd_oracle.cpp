#include "maslov/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maslov/errors.hpp"

namespace maslov {

Discretization discretize(const MatrixFn& q, int n, double a, double b, double h) {
    if (!(h > 0) || h > 0.05) throw InputError("discretize: h must lie in (0, 0.05]");
    if (!(a < b)) throw InputError("discretize: need a < b");
    const long intervals = std::lround((b - a) / h);
    const long points = intervals - 1;
    if (points < 1) throw InputError("discretize: grid has no interior points");
    if (points * n > kMaxOracleUnknowns) {
        std::ostringstream msg;
        msg << "discretize: " << points * n << " unknowns exceed the limit " << kMaxOracleUnknowns;
        throw InputError(msg.str());
    }
    Discretization d;
    d.a = a;
    d.b = b;
    d.h = (b - a) / static_cast<double>(intervals);
    d.n = n;
    const int size = static_cast<int>(points * n);
    d.matrix = SymmetricBandMatrix(size, n);
    const double inv = 1.0 / (d.h * d.h);
    for (long i = 0; i < points; ++i) {
        const double x = a + static_cast<double>(i + 1) * d.h;
        d.grid.push_back(x);
        const Mat qx = q(x);
        const int base = static_cast<int>(i * n);
        for (int r = 0; r < n; ++r) {
            // Lower triangle only; symmetry is structural.
            for (int c = 0; c <= r; ++c) {
                const double v = c == r ? qx(r, r) - 2.0 * inv : 0.5 * (qx(r, c) + qx(c, r));
                d.matrix.set(base + r, base + c, v);
            }
            if (i + 1 < points) d.matrix.set(base + n + r, base + r, inv);
        }
    }
    return d;
}

Discretization discretize(const WaveModel& m, double L, double h) {
    if (!(L > 0)) throw InputError("discretize: L must be positive");
    return discretize(m.potential, m.n, -L, L, h);
}

std::vector<double> oracle_eigenvalues(const Discretization& d) {
    std::vector<double> ev = symmetric_eigenvalues(d.matrix);
    std::reverse(ev.begin(), ev.end());
    return ev;
}

namespace {

double nearest(const std::vector<double>& ev, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : ev)
        if (std::abs(v - x) < std::abs(best - x)) best = v;
    return best;
}

}  // namespace

OracleCount oracle_count(const WaveModel& m, double L, double h, double lambda_star) {
    const Discretization d = discretize(m, L, h);
    const std::vector<double> ev = oracle_eigenvalues(d);

    OracleCount out;
    const double closest = nearest(ev, lambda_star);
    out.separation = std::abs(closest - lambda_star);
    // Error constant of the eigenvalue nearest lambda_star from the 2h grid.
    const std::vector<double> coarse = oracle_eigenvalues(discretize(m, L, 2.0 * h));
    const double c = std::abs(closest - nearest(coarse, closest)) / (3.0 * h * h);
    out.required_separation = std::max(10.0 * h * h * c, 1e-12 * (1.0 + std::abs(lambda_star)));
    if (out.separation <= out.required_separation) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "oracle: lambda_star=" << lambda_star << " lies within " << out.separation
            << " of a discrete eigenvalue (required separation " << out.required_separation << ")";
        throw ResonanceError(msg.str());
    }

    const int n = d.n;
    for (double lam : ev) {
        if (lam <= lambda_star) break;
        const Vec v = inverse_iteration(d.matrix, lam);
        double inner = 0.0;
        for (std::size_t i = 0; i < d.grid.size(); ++i)
            if (std::abs(d.grid[i]) <= 0.5 * L)
                inner += v.segment(static_cast<Eigen::Index>(i) * n, n).squaredNorm();
        if (inner > 0.5) out.counted.push_back(lam);
        else out.boundary_modes.push_back(lam);
    }
    out.count = static_cast<int>(out.counted.size());
    return out;
}

int oracle_count_above(const WaveModel& m, double L, double h, double lambda_star) {
    return oracle_count(m, L, h, lambda_star).count;
}

}  // namespace maslov
