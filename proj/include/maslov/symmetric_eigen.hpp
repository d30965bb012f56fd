#pragma once

// Symmetric eigensolvers: Householder tridiagonalization with implicit QL
// (dense), Givens band-to-tridiagonal reduction (banded), and an independent
// inertia count for bisection checks.

#include <vector>

#include "maslov/linalg.hpp"

namespace maslov {

// Symmetric matrix stored by its lower band: entry (i, j), 0 <= i - j <= w.
// The stored width may exceed the nominal half bandwidth to hold bulges.
class SymmetricBandMatrix {
public:
    SymmetricBandMatrix(int size, int half_bandwidth, int storage_width = -1);

    int size() const { return n_; }
    int half_bandwidth() const { return m_; }
    int storage_width() const { return w_; }

    double get(int i, int j) const;
    // |i - j| must not exceed storage_width.
    void set(int i, int j, double v);
    Mat dense() const;
    double max_abs() const;

private:
    double& ref(int i, int j) { return data_[static_cast<std::size_t>(j) * (w_ + 1) + (i - j)]; }
    int n_, m_, w_;
    std::vector<double> data_;
};

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i + 1
};

Tridiagonal band_to_tridiagonal(const SymmetricBandMatrix& a);

// Ascending eigenvalues by implicit QL.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t);

struct SymmetricEigen {
    Vec values;   // ascending
    Mat vectors;  // columns
};

SymmetricEigen symmetric_eigen(const Mat& a);
std::vector<double> symmetric_eigenvalues(const SymmetricBandMatrix& a);

// Number of eigenvalues strictly below sigma, from the signs of the pivots of
// an LDL^T factorization of A - sigma I (ratios of leading principal minors).
int count_below(const Mat& a, double sigma);
int count_below(const SymmetricBandMatrix& a, double sigma);

// All eigenvalues (ascending) by bisection on count_below, to absolute
// accuracy `tol`.
std::vector<double> bisection_eigenvalues(const Mat& a, double tol);

// Unit eigenvector for an eigenvalue estimate, by inverse iteration with a
// banded LDL^T solve.
Vec inverse_iteration(const SymmetricBandMatrix& a, double lambda, int iterations = 4);

}  // namespace maslov
