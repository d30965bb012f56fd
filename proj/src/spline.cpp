#include "maslov/spline.hpp"

#include <algorithm>

#include "maslov/errors.hpp"

namespace maslov {

Interpolant::Interpolant(std::vector<double> x, std::vector<double> y, Interpolation kind)
    : x_(std::move(x)), y_(std::move(y)), kind_(kind) {
    if (x_.size() != y_.size()) throw InputError("interpolant: x and y sizes differ");
    const std::size_t need = kind_ == Interpolation::Cubic ? 4 : 2;
    if (x_.size() < need)
        throw InputError("interpolant: " + std::string(kind_ == Interpolation::Cubic ? "cubic" : "linear") +
                         " interpolation needs at least " + std::to_string(need) + " samples, got " +
                         std::to_string(x_.size()));
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw InputError("interpolant: sample abscissae must be strictly increasing");

    if (kind_ == Interpolation::Cubic) {
        // Tridiagonal solve for the natural spline moments.
        const std::size_t n = x_.size();
        m_.assign(n, 0.0);
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            const double diag = 2.0 * (h0 + h1);
            const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
            const double denom = diag - h0 * c[i - 1];
            c[i] = h1 / denom;
            d[i] = (rhs - h0 * d[i - 1]) / denom;
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = d[i] - c[i] * m_[i + 1];
            if (i == 1) break;
        }
    }
}

double Interpolant::operator()(double t) const {
    if (t <= x_.front()) return y_.front();
    if (t >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - t) / h;
    const double b = (t - x_[i]) / h;
    if (kind_ == Interpolation::Linear) return a * y_[i] + b * y_[i + 1];
    return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

}  // namespace maslov
