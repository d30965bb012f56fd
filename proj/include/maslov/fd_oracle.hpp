#pragma once

// Second-order finite differences for L = d^2/dx^2 + Q(x) on [-L, L] with
// Dirichlet ends.  Unknowns are interleaved (point-major), so the matrix is
// banded with half bandwidth n.

#include <vector>

#include "maslov/models.hpp"
#include "maslov/symmetric_eigen.hpp"

namespace maslov {

inline constexpr long kMaxOracleUnknowns = 20000;

struct Discretization {
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    int n = 1;
    std::vector<double> grid;  // interior points
    SymmetricBandMatrix matrix{1, 0};

    int unknowns() const { return matrix.size(); }
};

// Throws InputError when h > 0.05 or n * N exceeds kMaxOracleUnknowns.
Discretization discretize(const WaveModel& m, double L, double h);
Discretization discretize(const MatrixFn& q, int n, double a, double b, double h);

// Descending.
std::vector<double> oracle_eigenvalues(const Discretization& d);

struct OracleCount {
    int count = 0;
    std::vector<double> counted;         // eigenvalues above lambda_star, descending
    std::vector<double> boundary_modes;  // above lambda_star, excluded by the mass test
    double separation = 0.0;             // distance from lambda_star to the spectrum
    double required_separation = 0.0;
};

// Eigenvalues above lambda_star whose eigenvector keeps more than half its
// mass in [-L/2, L/2].  Throws ResonanceError when lambda_star is within
// 10 h^2 C of a discrete eigenvalue, C being the O(h^2) error constant
// estimated from the 2h grid.
OracleCount oracle_count(const WaveModel& m, double L, double h, double lambda_star);
int oracle_count_above(const WaveModel& m, double L, double h, double lambda_star);

}  // namespace maslov
