#include "maslov/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maslov/errors.hpp"

namespace maslov {

SymmetricBandMatrix::SymmetricBandMatrix(int size, int half_bandwidth, int storage_width)
    : n_(size), m_(half_bandwidth), w_(storage_width < 0 ? half_bandwidth : storage_width) {
    if (n_ < 1 || m_ < 0 || w_ < m_) throw InputError("SymmetricBandMatrix: bad dimensions");
    data_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(w_ + 1), 0.0);
}

double SymmetricBandMatrix::get(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > w_) return 0.0;
    return data_[static_cast<std::size_t>(j) * (w_ + 1) + (i - j)];
}

void SymmetricBandMatrix::set(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    if (i - j > w_) throw NumericalError("SymmetricBandMatrix: write outside storage band");
    ref(i, j) = v;
}

Mat SymmetricBandMatrix::dense() const {
    Mat d = Mat::Zero(n_, n_);
    for (int j = 0; j < n_; ++j)
        for (int i = j; i < std::min(n_, j + w_ + 1); ++i) d(i, j) = d(j, i) = get(i, j);
    return d;
}

double SymmetricBandMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Tridiagonal band_to_tridiagonal(const SymmetricBandMatrix& in) {
    const int n = in.size();
    const int m = in.half_bandwidth();
    SymmetricBandMatrix a(n, m, m + 1);
    for (int j = 0; j < n; ++j)
        for (int i = j; i < std::min(n, j + m + 1); ++i) a.set(i, j, in.get(i, j));

    // Rotation in the plane (p, p + 1) applied as G^T A G.
    auto rotate = [&](int p, double c, double s) {
        const int q = p + 1;
        const int w = a.storage_width();
        const int lo = std::max(0, p - w);
        const int hi = std::min(n - 1, q + w);
        for (int r = lo; r <= hi; ++r) {
            if (r == p || r == q) continue;
            const double arp = a.get(r, p);
            const double arq = a.get(r, q);
            const double np = c * arp - s * arq;
            const double nq = s * arp + c * arq;
            if (std::abs(r - p) <= w) a.set(r, p, np);
            if (std::abs(r - q) <= w) a.set(r, q, nq);
        }
        const double app = a.get(p, p);
        const double aqq = a.get(q, q);
        const double apq = a.get(p, q);
        a.set(p, p, c * c * app - 2 * c * s * apq + s * s * aqq);
        a.set(q, q, s * s * app + 2 * c * s * apq + c * c * aqq);
        a.set(q, p, c * s * (app - aqq) + (c * c - s * s) * apq);
    };

    for (int k = m; k >= 2; --k) {
        for (int j = 0; j + k < n; ++j) {
            int i = j + k;
            int col = j;
            while (i < n) {
                const double target = a.get(i, col);
                if (target != 0.0) {
                    const double other = a.get(i - 1, col);
                    const double r = std::hypot(other, target);
                    rotate(i - 1, other / r, -target / r);
                    a.set(i, col, 0.0);
                }
                col = i - 1;
                i += k;
            }
        }
    }

    Tridiagonal t;
    t.diag.resize(static_cast<std::size_t>(n));
    t.off.resize(static_cast<std::size_t>(std::max(0, n - 1)));
    for (int i = 0; i < n; ++i) t.diag[static_cast<std::size_t>(i)] = a.get(i, i);
    for (int i = 0; i + 1 < n; ++i) t.off[static_cast<std::size_t>(i)] = a.get(i + 1, i);
    return t;
}

namespace {

// Implicit QL on (d, e) with e[i] coupling i and i + 1 stored as e[i + 1] on
// entry, following the EISPACK tql2 layout.  z (optional, n x n) accumulates
// the rotations.
void tql(std::vector<double>& d, std::vector<double>& e, Mat* z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(n - 1)] = 0.0;

    auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
    auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };
    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(D(l)) + std::abs(E(l)));
        int m = l;
        while (m < n) {
            if (std::abs(E(m)) <= eps * tst1) break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 60) throw NumericalError("tridiagonal QL failed to converge");
                double g = D(l);
                double p = (D(l + 1) - g) / (2.0 * E(l));
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                D(l) = E(l) / (p + r);
                D(l + 1) = E(l) * (p + r);
                const double dl1 = D(l + 1);
                double h = g - D(l);
                for (int i = l + 2; i < n; ++i) D(i) -= h;
                f += h;

                p = D(m);
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = E(l + 1);
                double s = 0.0, s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * E(i);
                    h = c * p;
                    r = std::sqrt(p * p + E(i) * E(i));
                    E(i + 1) = s * r;
                    s = E(i) / r;
                    c = p / r;
                    p = c * D(i) - s * g;
                    D(i + 1) = h + s * (c * g + s * D(i));
                    if (z) {
                        for (int k = 0; k < n; ++k) {
                            h = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * h;
                            (*z)(k, i) = c * (*z)(k, i) - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * E(l) / dl1;
                E(l) = s * p;
                D(l) = c * p;
            } while (std::abs(E(l)) > eps * tst1);
        }
        D(l) += f;
        E(l) = 0.0;
    }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t) {
    std::vector<double> d = t.diag;
    std::vector<double> e(d.size(), 0.0);
    for (std::size_t i = 0; i < t.off.size(); ++i) e[i + 1] = t.off[i];
    tql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

SymmetricEigen symmetric_eigen(const Mat& a) {
    if (a.rows() != a.cols()) throw InputError("symmetric_eigen: matrix must be square");
    const int n = static_cast<int>(a.rows());
    Mat v = 0.5 * (a + a.transpose());
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
    auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
    auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };

    // Householder reduction to tridiagonal form (EISPACK tred2 layout).
    for (int j = 0; j < n; ++j) D(j) = v(n - 1, j);
    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::abs(D(k));
        if (scale == 0.0) {
            E(i) = D(i - 1);
            for (int j = 0; j < i; ++j) {
                D(j) = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                D(k) /= scale;
                h += D(k) * D(k);
            }
            double f = D(i - 1);
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            E(i) = scale * g;
            h -= f * g;
            D(i - 1) = f - g;
            for (int j = 0; j < i; ++j) E(j) = 0.0;
            for (int j = 0; j < i; ++j) {
                f = D(j);
                v(j, i) = f;
                g = E(j) + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * D(k);
                    E(k) += v(k, j) * f;
                }
                E(j) = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                E(j) /= h;
                f += E(j) * D(j);
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j) E(j) -= hh * D(j);
            for (int j = 0; j < i; ++j) {
                f = D(j);
                g = E(j);
                for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * E(k) + g * D(k));
                D(j) = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        D(i) = h;
    }
    for (int i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = D(i + 1);
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) D(k) = v(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (int k = 0; k <= i; ++k) v(k, j) -= g * D(k);
            }
        }
        for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        D(j) = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    E(0) = 0.0;

    tql(d, e, &v);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return D(x) < D(y); });
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        out.values(k) = D(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(const SymmetricBandMatrix& a) {
    return tridiagonal_eigenvalues(band_to_tridiagonal(a));
}

int count_below(const Mat& a, double sigma) {
    const int n = static_cast<int>(a.rows());
    Mat w = a - sigma * Mat::Identity(n, n);
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(1.0, a.cwiseAbs().maxCoeff());
    int neg = 0;
    // Right-looking LDL^T without pivoting; a zero pivot is nudged by `tiny`.
    for (int k = 0; k < n; ++k) {
        double d = w(k, k);
        if (std::abs(d) < tiny) d = -tiny;
        if (d < 0) ++neg;
        if (k + 1 < n) {
            const Vec col = w.col(k).tail(n - k - 1);
            w.bottomRightCorner(n - k - 1, n - k - 1).noalias() -= col * col.transpose() / d;
        }
    }
    return neg;
}

int count_below(const SymmetricBandMatrix& a, double sigma) {
    const int n = a.size();
    const int m = a.half_bandwidth();
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(1.0, a.max_abs());
    // Working copy of the band of A - sigma I; elimination creates no fill.
    SymmetricBandMatrix w(n, m);
    for (int j = 0; j < n; ++j)
        for (int i = j; i < std::min(n, j + m + 1); ++i) w.set(i, j, a.get(i, j) - (i == j ? sigma : 0.0));
    int neg = 0;
    for (int k = 0; k < n; ++k) {
        double d = w.get(k, k);
        if (std::abs(d) < tiny) d = -tiny;
        if (d < 0) ++neg;
        const int end = std::min(n - 1, k + m);
        for (int i = k + 1; i <= end; ++i) {
            const double lik = w.get(i, k) / d;
            for (int j = k + 1; j <= i; ++j) w.set(i, j, w.get(i, j) - lik * w.get(j, k));
        }
    }
    return neg;
}

std::vector<double> bisection_eigenvalues(const Mat& a, double tol) {
    const int n = static_cast<int>(a.rows());
    // Gershgorin bounds.
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
        lo = std::min(lo, a(i, i) - r);
        hi = std::max(hi, a(i, i) + r);
    }
    lo -= 1.0;
    hi += 1.0;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // k-th smallest: smallest sigma with count_below(sigma) > k.
        double l = lo, h = hi;
        while (h - l > tol) {
            const double mid = 0.5 * (l + h);
            if (count_below(a, mid) > k) h = mid;
            else l = mid;
        }
        out[static_cast<std::size_t>(k)] = 0.5 * (l + h);
    }
    return out;
}

Vec inverse_iteration(const SymmetricBandMatrix& a, double lambda, int iterations) {
    const int n = a.size();
    const int m = a.half_bandwidth();
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(1.0, a.max_abs());

    // LDL^T of A - lambda I in place: w(i, j) holds L (i > j) and D (i == j).
    SymmetricBandMatrix w(n, m);
    for (int j = 0; j < n; ++j)
        for (int i = j; i < std::min(n, j + m + 1); ++i) w.set(i, j, a.get(i, j) - (i == j ? lambda : 0.0));
    for (int k = 0; k < n; ++k) {
        double d = w.get(k, k);
        if (std::abs(d) < tiny) d = tiny;
        w.set(k, k, d);
        const int end = std::min(n - 1, k + m);
        for (int i = k + 1; i <= end; ++i) {
            const double lik = w.get(i, k) / d;
            for (int j = k + 1; j <= i; ++j) w.set(i, j, w.get(i, j) - lik * w.get(j, k));
        }
        for (int i = k + 1; i <= end; ++i) w.set(i, k, w.get(i, k) / d);
    }

    Vec x = Vec::Ones(n);
    for (int i = 0; i < n; ++i) x(i) += 0.01 * std::sin(1.7 * i);
    x.normalize();
    for (int it = 0; it < iterations; ++it) {
        // L y = x
        for (int i = 0; i < n; ++i)
            for (int j = std::max(0, i - m); j < i; ++j) x(i) -= w.get(i, j) * x(j);
        for (int i = 0; i < n; ++i) x(i) /= w.get(i, i);
        // L^T z = y
        for (int i = n - 1; i >= 0; --i)
            for (int j = i + 1; j <= std::min(n - 1, i + m); ++j) x(i) -= w.get(j, i) * x(j);
        const double nrm = x.norm();
        if (!(nrm > 0) || !std::isfinite(nrm)) throw NumericalError("inverse iteration broke down");
        x /= nrm;
    }
    return x;
}

}  // namespace maslov
