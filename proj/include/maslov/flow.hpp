#pragma once

// The eigenvalue problem  lambda u = u'' + Q(x) u  as the first-order
// Hamiltonian system  U' = JB(x; lambda) U,  U = (u, u'), with
//     JB = [[0, I], [lambda I - Q(x), 0]],
// the path of unstable planes ell(x; lambda) = E^u_-(x; lambda), its conjugate
// points against the Dirichlet plane, and the Maslov box
// [-L, L] x [lambda_star, lambda_inf].

#include <optional>
#include <string>
#include <vector>

#include "maslov/models.hpp"
#include "maslov/symplectic.hpp"

namespace maslov {

struct FlowOptions {
    double truncation = 0.0;  // L; 0 selects max(20, ceil(20 / decay_rate))
    double rtol = 1e-10;
    double atol = 1e-12;
    double renorm_every = 0.1;
    double crossing_tol = 1e-8;
    double epsilon_shift = 1e-3;
    double match_point = 0.0;  // x0 for the Evans pairing
};

// L from the options or the model; InputError unless exp(-decay_rate L) < 1e-8.
double resolve_truncation(const WaveModel& m, const FlowOptions& opts);

Mat system_matrix(const WaveModel& m, double x, double lambda);
CMat system_matrix(const WaveModel& m, double x, cplx lambda);

enum class Side { Minus, Plus };

struct AsymptoticSplitting {
    Mat unstable;  // columns (v_i, mu_i v_i)
    Mat stable;    // columns (v_i, -mu_i v_i)
    Vec rates;     // mu_i = sqrt(lambda - q_i) > 0
};

// InputError (essential spectrum) unless lambda > every eigenvalue of q_side.
AsymptoticSplitting asymptotic_splitting(const WaveModel& m, double lambda, Side side);

struct FrameSample {
    double x = 0.0;
    LagrangianFrame frame;        // orthonormal
    std::vector<double> phases;   // arguments of the eigenvalues of W
};

struct FramePath {
    double lambda = 0.0;
    std::vector<FrameSample> samples;
    double max_lagrangian_residual = 0.0;
};

// From the unstable frame at x = -L to x = +L, orthonormalized every
// renorm_every (halved locally while W eigenvalues move by pi/4 or more).
// NumericalError if the Lagrangian residual exceeds 1e-7.
FramePath evolve_unstable_frame(const WaveModel& m, double lambda, const FlowOptions& opts);

struct ConjugateScan {
    FramePath path;
    std::vector<double> det_a;            // det of the A block per sample
    std::vector<CrossingEvent> events;    // in x, refined
    int det_sign_changes = 0;
    bool retried = false;
};

// Conjugate points of ell(.; lambda_star) on [-L, L].  Crossings come from W
// eigenphase tracking refined by bisection; every sample step must also show
// the matching parity of det A sign changes.  On disagreement the scan is
// repeated once with renorm_every and rtol halved, then UnderResolvedError.
ConjugateScan scan_conjugate_points(const WaveModel& m, double lambda_star, const FlowOptions& opts);
std::vector<CrossingEvent> detect_conjugate_points(const WaveModel& m, double lambda_star, const FlowOptions& opts);

// 1 + sup over x in [-L, L] of the largest eigenvalue of Q(x), L from opts.
double lambda_max_bound(const WaveModel& m, const FlowOptions& opts = {});

struct SquareReport {
    std::vector<CrossingEvent> left_events;    // x increasing at lambda_star
    std::vector<CrossingEvent> top_events;     // lambda increasing at x = L
    std::vector<CrossingEvent> right_events;   // x decreasing at lambda_inf
    std::vector<CrossingEvent> bottom_events;  // lambda decreasing at x = -L
    int net_index = 0;
    double lambda_star = 0.0;
    double lambda_inf = 0.0;  // max(lambda_max_bound, lambda_star + 1)
    double truncation = 0.0;
    bool consistent = false;
    std::vector<std::string> diagnostics;
};

// Left edge from scan_conjugate_points.  Top edge: zeros of the real Evans
// function on [lambda_star, lambda_inf]; at each zero the direction and
// multiplicity come from the jump of the signed conjugate-point count across
// it.  Right and bottom edges are verified empty.  A nonzero net index or any
// mismatch is reported through `consistent` and `diagnostics`.
SquareReport maslov_square(const WaveModel& m, double lambda_star, const FlowOptions& opts);

struct CountChannels {
    bool winding = false;
    bool oracle = false;
    double oracle_h = 0.01;
    int contour_samples = 256;
    double contour_grading = 3.0;
};

struct SpectralReport {
    std::string model;
    double lambda_star = 0.0;
    int conjugate_count = 0;
    std::vector<CrossingEvent> conjugate_points;
    std::optional<int> winding_count;
    int winding_refinement_rounds = 0;
    std::optional<int> oracle_count;
    bool agree = true;
    // kind = pulse requires at least one unstable eigenvalue.
    bool pulse_check_passed = true;
    std::vector<std::string> diagnostics;
};

// Number of conjugate points at lambda_star = epsilon_shift.  InputError if the
// essential spectrum is unstable.
SpectralReport count_unstable_eigenvalues(const WaveModel& m, const FlowOptions& opts,
                                          const CountChannels& channels = {});

}  // namespace maslov
