#pragma once

// Evans function  E(lambda) = det[ U_-(x0; lambda) | S_+(x0; lambda) ],
// the wedge of the subspaces decaying at -inf and at +inf, and winding counts
// of E around closed contours.
//
// U_- is started at x = -L from columns exp(-mu_i L) (v_i, mu_i v_i) and S_+ at
// x = +L from exp(-mu_i L) (v_i, -mu_i v_i), where (q_i, v_i) are eigenpairs of
// q_-/q_+ with v_i real, unit, largest component positive, and
// mu_i = sqrt(lambda - q_i) on the principal branch.  Both are transported to
// x0 with re-orthonormalization; the discarded triangular factors are
// multiplied back in, so E is the determinant of the actual solutions.

#include <span>
#include <vector>

#include "maslov/flow.hpp"

namespace maslov {

struct Contour {
    cplx center{0.0, 0.0};
    double radius = 1.0;
    int samples = 256;
    // Angle map s in [0, 1) -> pi + pi sign(u) |u|^grading, u = 2s - 1.
    // grading > 1 clusters samples near the leftmost point.
    double grading = 1.0;

    cplx point(double s) const;
};

struct EvansValue {
    cplx lambda;
    cplx value;
};

// InputError when lambda lies in the essential spectrum (some mu_i with
// real part below 1e-8).
EvansValue evans_at(const WaveModel& m, cplx lambda, const FlowOptions& opts);

// Real lambda: det of the orthonormalized pair, in [-1, 1], with the same sign
// as E.  `kernel_dim` receives the number of singular values of the pair below
// 1e-6.
double evans_normalized(const WaveModel& m, double lambda, const FlowOptions& opts, int* kernel_dim = nullptr);

struct WindingResult {
    int winding = 0;
    double raw = 0.0;            // total phase / 2 pi before rounding
    int refinement_rounds = 0;   // bisection rounds until every phase step < pi/2
    int evaluations = 0;
    double min_relative_modulus = 0.0;
};

inline constexpr int kMaxRefinementRounds = 12;
inline constexpr double kZeroMargin = 1e-10;

// Throws ResonanceError if min |E| / max |E| < kZeroMargin on the samples,
// UnderResolvedError if phase steps stay >= pi/2 after kMaxRefinementRounds or
// the rounding residual is >= 0.1, InputError if the contour meets the
// essential spectrum.
WindingResult winding_number(const WaveModel& m, const Contour& c, const FlowOptions& opts);
// Closed polygon through `vertices` (counterclockwise), `per_edge` samples on
// each edge.
WindingResult winding_number(const WaveModel& m, std::span<const cplx> vertices, int per_edge,
                             const FlowOptions& opts);

// Circle through epsilon_shift and max(lambda_inf, epsilon_shift + 1).
Contour enclosing_contour(const WaveModel& m, const FlowOptions& opts, int samples = 256, double grading = 3.0);

struct RealEvansZero {
    double lambda = 0.0;
    int kernel_dim = 0;
    double value = 0.0;  // normalized determinant at lambda
};

// Zeros of the real Evans function on [lo, hi]: sign changes refined by
// bisection plus near-zero local minima of |E| refined by golden section.
std::vector<RealEvansZero> evans_real_zeros(const WaveModel& m, double lo, double hi, const FlowOptions& opts,
                                            double spacing = 0.02);

SpectralReport compare_counts(const WaveModel& m, const FlowOptions& opts, const CountChannels& channels = {});

}  // namespace maslov
