#pragma once

// Spatial dynamics in the radius for Laplace's equation in R^d.  On the
// spherical-harmonic mode l the pair (f, g = f_s) obeys
//     (f, g)' = [[0, 1], [l(l+d-2)/s^2, -(d-1)/s]] (f, g),
// and with s = exp(tau), (f, h = s g) obeys the constant system
//     (f, h)_tau = [[0, 1], [l(l+d-2), -(d-2)]] (f, h)
// with exponents l and -(l+d-2).

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace maslov {

struct ModeSystem {
    int d = 3;
    int l = 0;
    std::pair<double, double> exponents;  // (unstable, stable) = (l, -(l+d-2))
    double laplace_beltrami_eigenvalue = 0.0;  // -l(l+d-2)
    bool double_root = false;                  // d = 2, l = 0
    // l = 0: the upper exponent is zero, so that bundle neither grows nor decays.
    bool non_decaying = false;
};

// InputError unless d >= 2 and l >= 0.
ModeSystem mode_system(int d, int l);
std::pair<double, double> mode_exponents(int d, int l);

// InputError unless s > 0.
Eigen::Matrix2d radial_system_matrix(int d, int l, double s);
Eigen::Matrix2d rescaled_system_matrix(int d, int l);

struct DichotomyProjection {
    Eigen::Vector2d stable_direction;
    Eigen::Vector2d unstable_direction;
    double stable_rate = 0.0;
    double unstable_rate = 0.0;
};

// InputError for d = 2, l = 0 (double root, no dichotomy).
DichotomyProjection dichotomy(int d, int l);

struct ModeTrajectory {
    std::vector<double> tau;
    std::vector<Eigen::Vector2d> state;
    double fitted_rate = 0.0;
    bool backward = false;  // integrated from tau1 down to tau0
};

// Integrates the tau system over [tau0, tau1] and fits the log-norm slope by
// least squares over the second half of the range.  An initial vector within
// 1e-8 of the stable direction is integrated backward in tau, where that bundle
// dominates; anything else runs forward.  InputError unless d >= 3 and
// tau1 - tau0 >= 5.
ModeTrajectory evolve_mode(int d, int l, const Eigen::Vector2d& init, double tau0, double tau1);

// Real orthonormal spherical harmonic on S^2; m in [-l, l], l <= 8.
// m > 0 uses cos(m phi), m < 0 uses sin(|m| phi).
double spherical_harmonic(int l, int m, double theta, double phi);
inline constexpr int kMaxHarmonicDegree = 8;

// Gram matrix of all harmonics with l <= l_max under Gauss-Legendre in
// cos(theta) (n_theta nodes) times n_phi uniform azimuths.
Eigen::MatrixXd harmonic_gram(int l_max, int n_theta = 12, int n_phi = 20);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct Direction {
    double theta = 0.0;  // polar
    double phi = 0.0;    // azimuth
};

using HarmonicCoefficients = std::map<std::pair<int, int>, std::pair<double, double>>;

// u(r, .) = sum (a r^l + b r^-(l+1)) Y_lm, d = 3.
std::vector<double> reconstruct_solution(const HarmonicCoefficients& coeffs, double r,
                                         const std::vector<Direction>& dirs);

// max |Delta_h u| / max(|u| / r^2) over the directions, with the second-order
// spherical-coordinate Laplacian at step h.  Directions must keep h away from
// the poles.
double harmonic_residual(const HarmonicCoefficients& coeffs, double r, const std::vector<Direction>& dirs,
                         double h = 1e-3);

// Eigenvalues of [[0, 1], [k^2, 0]] for |k| <= k_max, as a sorted set.
std::vector<int> cylinder_spectrum(int k_max);

}  // namespace maslov
