#include <doctest.h>

#include <cmath>

#include "maslov/errors.hpp"
#include "maslov/linalg.hpp"
#include "maslov/radial.hpp"

using namespace maslov;

TEST_CASE("radial system matrix") {
    Eigen::Matrix2d e;
    e << 0, 1, 0, -2;
    CHECK((radial_system_matrix(3, 0, 1.0) - e).norm() < 1e-15);
    e << 0, 1, 6, -2;
    CHECK((radial_system_matrix(3, 2, 1.0) - e).norm() < 1e-15);
    e << 0, 1, 1.5, -1;
    CHECK((radial_system_matrix(3, 2, 2.0) - e).norm() < 1e-15);
}

TEST_CASE("mode exponents") {
    CHECK(mode_exponents(3, 2) == std::pair<double, double>(2.0, -3.0));
    CHECK(mode_exponents(3, 0) == std::pair<double, double>(0.0, -1.0));
    const ModeSystem two = mode_system(2, 0);
    CHECK(two.exponents == std::pair<double, double>(0.0, 0.0));
    CHECK(two.double_root);
    CHECK(mode_system(3, 0).non_decaying);
    CHECK_FALSE(mode_system(3, 1).non_decaying);
    CHECK_THROWS_AS(dichotomy(2, 0), InputError);
}

TEST_CASE("indicial identity and spectral gap") {
    for (int d = 3; d <= 5; ++d)
        for (int l = 0; l <= 10; ++l) {
            const auto [mu_u, mu_s] = mode_exponents(d, l);
            for (double mu : {mu_u, mu_s}) CHECK(mu * mu + (d - 2) * mu - l * (l + d - 2) == 0.0);
            CHECK(mu_u - mu_s == 2 * l + d - 2);
            CHECK(mode_system(d, l).laplace_beltrami_eigenvalue == -l * (l + d - 2));
        }
}

TEST_CASE("evolve_mode fitted rates") {
    const DichotomyProjection p = dichotomy(3, 2);
    CHECK(std::abs(evolve_mode(3, 2, p.unstable_direction, 0.0, 10.0).fitted_rate - 2.0) < 1e-3);
    const ModeTrajectory st = evolve_mode(3, 2, p.stable_direction, 0.0, 10.0);
    CHECK(std::abs(st.fitted_rate + 3.0) < 1e-3);
    Eigen::Vector2d generic(0.3, -1.7);
    CHECK(std::abs(evolve_mode(3, 1, generic, 0.0, 10.0).fitted_rate - 1.0) < 1e-3);
    CHECK_THROWS_AS(evolve_mode(3, 1, generic, 0.0, 2.0), InputError);
}

TEST_CASE("spherical harmonics are orthonormal") {
    const Eigen::MatrixXd g = harmonic_gram(8);
    CHECK(g.rows() == 81);
    CHECK((g - Eigen::MatrixXd::Identity(81, 81)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(spherical_harmonic(0, 0, 0.3, 1.1) == doctest::Approx(0.5 / std::sqrt(kPi)));
    CHECK_THROWS_AS(spherical_harmonic(9, 0, 0.1, 0.1), InputError);
}

TEST_CASE("Gauss-Legendre integrates polynomials") {
    std::vector<double> x, w;
    gauss_legendre(6, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 10);
    CHECK(s == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("reconstructed solutions") {
    std::vector<Direction> dirs;
    for (double th = 0.2; th < 3.0; th += 0.4)
        for (double ph = 0.0; ph < 6.0; ph += 0.7) dirs.push_back({th, ph});

    HarmonicCoefficients c0{{{0, 0}, {1.0, 0.0}}};
    const std::vector<double> u0 = reconstruct_solution(c0, 1.7, dirs);
    for (double v : u0) CHECK(v == doctest::Approx(u0[0]));
    CHECK(harmonic_residual(c0, 1.7, dirs) < 1e-8);

    // (1, 0) growing mode: r Y_10 = c z.
    HarmonicCoefficients c1{{{1, 0}, {1.0, 0.0}}};
    const double r = 1.3;
    const std::vector<double> u1 = reconstruct_solution(c1, r, dirs);
    const double cz = std::sqrt(3.0 / (4.0 * kPi));
    for (std::size_t i = 0; i < dirs.size(); ++i) CHECK(u1[i] == doctest::Approx(cz * r * std::cos(dirs[i].theta)));
    CHECK(harmonic_residual(c1, r, dirs) < 1e-6);

    // (2, 0) decaying mode at r = 2.
    HarmonicCoefficients c2{{{2, 0}, {0.0, 1.0}}};
    const std::vector<double> u2 = reconstruct_solution(c2, 2.0, dirs);
    for (std::size_t i = 0; i < dirs.size(); ++i)
        CHECK(u2[i] == doctest::Approx(std::pow(2.0, -3.0) * spherical_harmonic(2, 0, dirs[i].theta, dirs[i].phi)));
    CHECK(harmonic_residual(c2, 2.0, dirs) < 1e-4);
}

TEST_CASE("cylinder spectrum") {
    CHECK(cylinder_spectrum(2) == std::vector<int>{-2, -1, 0, 1, 2});
    CHECK(cylinder_spectrum(0) == std::vector<int>{0});
    const std::vector<int> five = cylinder_spectrum(5);
    CHECK(five.size() == 11);
    for (int k = -5; k <= 5; ++k) CHECK(five[static_cast<std::size_t>(k + 5)] == k);
}
