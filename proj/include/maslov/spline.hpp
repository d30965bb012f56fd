#pragma once

#include <span>
#include <vector>

namespace maslov {

enum class Interpolation { Linear, Cubic };

// Interpolant through strictly increasing knots.  Cubic is the natural spline
// (zero second derivative at both ends) and needs at least four knots.
// Evaluation outside the knot range holds the end value.
class Interpolant {
public:
    Interpolant() = default;
    Interpolant(std::vector<double> x, std::vector<double> y, Interpolation kind);

    double operator()(double t) const;
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
    Interpolation kind_ = Interpolation::Linear;
};

}  // namespace maslov
