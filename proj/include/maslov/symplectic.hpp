#pragma once

// Lagrangian planes in R^{2n}, the unitary reduction
//     W = (A - iB)(A + iB)^{-1},
// Dirichlet-plane intersections and the Maslov index of sampled paths.
//
// Sign convention: an eigenvalue of W passing through -1 counterclockwise
// (its argument increasing through pi) contributes +1.  With this convention
// conjugate points in x contribute +1 and eigenvalue crossings in lambda
// contribute -1.  Crossings exactly at an endpoint of a path count at the
// terminal endpoint and not at the initial one.

#include <span>
#include <vector>

#include "maslov/linalg.hpp"

namespace maslov {

struct SymplecticTolerances {
    double rank_tol = 1e-10;
    double lagr_tol = 1e-8;
    double unit_tol = 1e-8;
};

// Frame matrix [A; B] whose column span is a Lagrangian plane.  Any two frames
// related by right multiplication with an invertible matrix represent the same
// plane.
class LagrangianFrame {
public:
    LagrangianFrame() = default;
    LagrangianFrame(Mat a, Mat b);

    static LagrangianFrame from_stacked(const Mat& stacked);

    const Mat& a() const { return a_; }
    const Mat& b() const { return b_; }
    int dim() const { return static_cast<int>(a_.rows()); }
    Mat stacked() const;

    // Same plane, orthonormal columns.
    LagrangianFrame orthonormalized() const;
    LagrangianFrame right_multiplied(const Mat& r) const;

private:
    Mat a_;
    Mat b_;
};

struct LagrangianCheck {
    bool passed = false;
    int rank_defect = 0;
    double smallest_singular_value = 0.0;
    // Spectral norm of A^T B - B^T A.
    double asymmetry = 0.0;
};

LagrangianCheck check_lagrangian(const LagrangianFrame& frame, double tol,
                                 double rank_tol = SymplecticTolerances{}.rank_tol);

struct UnitaryReduction {
    CMat w;
    LagrangianFrame source_frame;

    CVec eigenvalues() const;
};

// Throws NumericalError if A + iB is singular after orthonormalization (the
// input was not Lagrangian) or if W fails the unitarity check.
UnitaryReduction unitary_reduction(const LagrangianFrame& frame,
                                   double unit_tol = SymplecticTolerances{}.unit_tol);

// dim(ell cap D) for the Dirichlet plane D = {(0, v)}; computed as dim ker(W + I)
// and as the rank defect of the A block, which must agree.
int dirichlet_intersection_dim(const LagrangianFrame& frame, double tol);

// theta in [0, 2pi) with exp(i theta) = det W.
double maslov_angle(const LagrangianFrame& frame);

// Arguments in (-pi, pi] of the eigenvalues of W.
std::vector<double> w_phases(const LagrangianFrame& frame);

struct CrossingEvent {
    double param = 0.0;
    int multiplicity = 1;
    int direction = 1;
};

struct MaslovIndexResult {
    int index = 0;
    std::vector<CrossingEvent> events;
};

// Signed -1 crossings of W-eigenvalues between two samples.  `phases_*` are
// eigenvalue arguments of W at parameters t0 < t1 (or t0 > t1 for a reversed
// path; only the sample order matters).  Throws UnderResolvedError if the
// matched eigenvalue motion is not below pi/2.
std::vector<CrossingEvent> step_crossings(std::span<const double> phases_from,
                                          std::span<const double> phases_to, double t_from,
                                          double t_to, double tol);

// Largest matched eigenvalue motion (radians) between two samples.
double max_phase_step(std::span<const double> phases_from, std::span<const double> phases_to);

MaslovIndexResult path_maslov_index(std::span<const LagrangianFrame> path, std::span<const double> params,
                                    double tol);
// Parameters default to 0, 1, 2, ...
MaslovIndexResult path_maslov_index(std::span<const LagrangianFrame> path, double tol);

// Merges events of equal direction that share a parameter within `tol`.
std::vector<CrossingEvent> merge_events(std::vector<CrossingEvent> events, double tol);
int signed_count(std::span<const CrossingEvent> events);

}  // namespace maslov
