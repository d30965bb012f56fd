#pragma once

// Deterministic randomized gradient models for property tests.
//
// Pulses: rotated, shifted stacks of scalar pulses of u'' - a u + b u^p = 0,
//   phi = A sech^{2/(p-1)}(k x), A = ((p+1) a / (2b))^{1/(p-1)}, k = (p-1) sqrt(a) / 2.
// Bumps: Q(x) = Q_inf + sum of symmetric matrices times smooth compactly
//   supported bumps, Q_inf negative definite.

#include <cstdint>
#include <random>
#include <vector>

#include "maslov/models.hpp"

namespace maslov {

WaveModel random_pulse_model(std::mt19937_64& rng, int index);
WaveModel random_bump_model(std::mt19937_64& rng, int index);

struct SuiteOptions {
    std::uint64_t seed = 20240611;
    int pulses = 25;
    int bumps = 25;
    // Bump models are redrawn while an eigenvalue of the finite-difference
    // oracle (h = 0.05) lies within `min_gap` of lambda_star or of another
    // eigenvalue above lambda_star.
    double lambda_star = 1e-3;
    double min_gap = 0.05;
};

std::vector<WaveModel> randomized_suite(const SuiteOptions& opts = {});

}  // namespace maslov
