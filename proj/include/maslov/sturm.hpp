#pragma once

// Scalar Dirichlet problems  lambda v = v'' + q(x) v  on (a, b), v(a) = v(b) = 0,
// through the Pruefer angle  v = r sin(theta), v' = r cos(theta):
//     theta' = cos^2(theta) + (q(x) - lambda) sin^2(theta),   theta(a) = 0.
// The radius equation decouples and is never integrated.

#include <functional>
#include <utility>
#include <vector>

#include "maslov/spline.hpp"

namespace maslov {

class ScalarProblem {
public:
    // Throws InputError if a >= b or q is not finite / has unbounded
    // finite differences on a sampling of [a, b].
    ScalarProblem(std::function<double(double)> q, double a, double b);

    // Sampled coefficient; cubic needs at least four samples.
    static ScalarProblem from_samples(std::vector<double> x, std::vector<double> q, Interpolation kind,
                                      double a, double b);

    double q(double x) const { return q_(x); }
    double a() const { return a_; }
    double b() const { return b_; }

private:
    std::function<double(double)> q_;
    double a_;
    double b_;
};

struct PruferTrajectory {
    double lambda = 0.0;
    std::vector<std::pair<double, double>> samples;  // (x, theta) at accepted steps
    double theta_end = 0.0;
};

struct PruferTolerances {
    double rtol = 1e-11;
    double angle_tol = 1e-9;
    double resonance_tol = 1e-7;
};

PruferTrajectory prufer_flow(const ScalarProblem& prob, double lambda, double rtol);

// Right-hand side of the angle equation.
double prufer_rhs(const ScalarProblem& prob, double x, double theta, double lambda);

// floor(theta(b; lambda_star) / pi).  Throws ResonanceError when theta(b) lies
// within resonance_tol of a multiple of pi.
int count_eigenvalues_above(const ScalarProblem& prob, double lambda_star, const PruferTolerances& tol = {});

// Largest k eigenvalues in descending order, each by bisection on
// theta(b; lambda) = (j + 1) pi.  Bisection stops at angle_tol or when the
// bracket has collapsed to a few ulps (theta(b; .) can be a near step function
// on long intervals).  Throws NumericalError if the bracket does not straddle.
std::vector<double> find_eigenvalues(const ScalarProblem& prob, int how_many, const PruferTolerances& tol = {});

// x-values in (a, b) where theta(x; lambda_star) crosses j pi, j = 1, 2, ...
std::vector<double> conjugate_points(const ScalarProblem& prob, double lambda_star, const PruferTolerances& tol = {});

// Interior zeros of the eigenfunction for eigenvalue lambda_k.  lambda_k is
// accepted when the count of eigenvalues above changes by exactly one across
// [lambda_k - delta, lambda_k + delta]; otherwise InputError.
int eigenfunction_zero_count(const ScalarProblem& prob, double lambda_k, const PruferTolerances& tol = {});

}  // namespace maslov
