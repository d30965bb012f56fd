#include <doctest.h>

#include <algorithm>
#include <random>

#include "maslov/symplectic.hpp"

using namespace maslov;

namespace {

Mat m1(double v) { return Mat::Constant(1, 1, v); }

Mat diag2(double a, double b) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

LagrangianFrame rotating(double t) { return LagrangianFrame(m1(std::cos(t)), m1(std::sin(t))); }

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = a + (b - a) * k / n;
    return t;
}

Mat random_matrix(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    return a;
}

}  // namespace

TEST_CASE("check_lagrangian examples") {
    CHECK(check_lagrangian(LagrangianFrame(Mat::Identity(2, 2), Mat::Zero(2, 2)), 1e-8).passed);

    Mat b(2, 2);
    b << 0, 1, -1, 0;
    const LagrangianCheck bad = check_lagrangian(LagrangianFrame(Mat::Identity(2, 2), b), 1e-8);
    CHECK_FALSE(bad.passed);
    CHECK(bad.asymmetry == doctest::Approx(2.0).epsilon(1e-12));

    const LagrangianCheck zero = check_lagrangian(LagrangianFrame(m1(0), m1(0)), 1e-8);
    CHECK_FALSE(zero.passed);
    CHECK(zero.rank_defect == 1);
}

TEST_CASE("unitary_reduction examples") {
    for (double alpha : {0.3, 1.1, 2.5}) {
        const cplx w = unitary_reduction(rotating(alpha)).w(0, 0);
        CHECK(std::abs(w - std::exp(cplx(0, -2 * alpha))) < 1e-12);
    }
    CHECK(std::abs(unitary_reduction(LagrangianFrame(m1(1), m1(0))).w(0, 0) - 1.0) < 1e-14);

    CVec ev = unitary_reduction(LagrangianFrame(diag2(0, 1), diag2(1, 0))).eigenvalues();
    std::vector<double> re{ev(0).real(), ev(1).real()};
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-1.0));
    CHECK(re[1] == doctest::Approx(1.0));
    CHECK(std::abs(ev(0).imag()) < 1e-12);
}

TEST_CASE("dirichlet_intersection_dim examples") {
    CHECK(dirichlet_intersection_dim(LagrangianFrame(Mat::Identity(2, 2), Mat::Zero(2, 2)), 1e-8) == 0);
    CHECK(dirichlet_intersection_dim(LagrangianFrame(Mat::Zero(2, 2), Mat::Identity(2, 2)), 1e-8) == 2);
    CHECK(dirichlet_intersection_dim(LagrangianFrame(diag2(0, 1), diag2(1, 0)), 1e-8) == 1);
}

TEST_CASE("maslov_angle examples") {
    CHECK(maslov_angle(rotating(kPi / 4)) == doctest::Approx(1.5 * kPi));
    CHECK(maslov_angle(LagrangianFrame(m1(1), m1(0))) == doctest::Approx(0.0));
    const double th = maslov_angle(LagrangianFrame(Mat::Zero(2, 2), Mat::Identity(2, 2)));
    CHECK(std::min(th, 2 * kPi - th) < 1e-12);
}

TEST_CASE("path_maslov_index examples") {
    // W = exp(-2it) turns clockwise, so the single crossing at pi/2 counts -1.
    const auto t = grid(0.0, 0.9 * kPi, 90);
    std::vector<LagrangianFrame> path;
    for (double s : t) path.push_back(rotating(s));
    const MaslovIndexResult r = path_maslov_index(path, t, 1e-8);
    CHECK(r.index == -1);
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].param == doctest::Approx(kPi / 2).epsilon(1e-8));

    std::vector<LagrangianFrame> still(20, rotating(0.4));
    const MaslovIndexResult c = path_maslov_index(still, 1e-8);
    CHECK(c.index == 0);
    CHECK(c.events.empty());

    const auto full = grid(0.0, 2 * kPi, 200);
    std::vector<LagrangianFrame> loop;
    for (double s : full) loop.push_back(rotating(s));
    CHECK(std::abs(path_maslov_index(loop, full, 1e-8).index) == 2);
}

TEST_CASE("crossing at a path endpoint is counted at the terminal end only") {
    const auto to_cross = grid(0.0, kPi / 2, 50);
    std::vector<LagrangianFrame> a;
    for (double s : to_cross) a.push_back(rotating(s));
    CHECK(std::abs(path_maslov_index(a, to_cross, 1e-8).index) == 1);

    const auto from_cross = grid(kPi / 2, kPi, 50);
    std::vector<LagrangianFrame> b;
    for (double s : from_cross) b.push_back(rotating(s));
    CHECK(path_maslov_index(b, from_cross, 1e-8).index == 0);
}

TEST_CASE("unitary reduction does not depend on the frame representative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 3;
        Mat s = random_matrix(rng, n);
        s = Mat(0.5 * (s + s.transpose()));
        const LagrangianFrame f(Mat::Identity(n, n), s);
        Mat r = random_matrix(rng, n) + 3.0 * Mat::Identity(n, n);
        const CMat w0 = unitary_reduction(f).w;
        const CMat w1 = unitary_reduction(f.right_multiplied(r)).w;
        CHECK((w0 - w1).norm() < 1e-8);
        CHECK((w0 * w0.adjoint() - CMat::Identity(n, n)).norm() < 1e-8);
    }
}

TEST_CASE("kernel of W + I matches the rank defect of A on random Lagrangian frames") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0.0, kPi);
    std::bernoulli_distribution hit(0.4);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 4;
        // Block-diagonal plane (cos a_i, sin a_i) with some a_i = pi/2, then an
        // orthogonal change of coordinates O (+) O and a random right factor.
        Vec c(n), s(n);
        int expected = 0;
        for (int i = 0; i < n; ++i) {
            double a = ang(rng);
            if (hit(rng)) {
                a = kPi / 2;
                ++expected;
            }
            c(i) = std::cos(a);
            s(i) = std::sin(a);
        }
        Eigen::HouseholderQR<Mat> qr(random_matrix(rng, n));
        const Mat o = qr.householderQ();
        Mat a = o * c.asDiagonal();
        Mat b = o * s.asDiagonal();
        const Mat r = random_matrix(rng, n) + 3.0 * Mat::Identity(n, n);
        const LagrangianFrame f = LagrangianFrame(a, b).right_multiplied(r);
        const int via_w = dirichlet_intersection_dim(f, 1e-8);
        Eigen::JacobiSVD<Mat> svd(f.orthonormalized().a());
        int defect = 0;
        for (int i = 0; i < n; ++i)
            if (svd.singularValues()(i) < 1e-8) ++defect;
        CHECK(via_w == defect);
        CHECK(via_w == expected);
    }
}

TEST_CASE("concatenation adds and reversal negates") {
    const auto t1 = grid(0.1, 1.3, 40);
    const auto t2 = grid(1.3, 4.0, 90);
    std::vector<LagrangianFrame> p1, p2, whole;
    std::vector<double> tw;
    for (double s : t1) p1.push_back(rotating(s));
    for (double s : t2) p2.push_back(rotating(s));
    whole = p1;
    tw = t1;
    for (std::size_t k = 1; k < t2.size(); ++k) {
        whole.push_back(p2[k]);
        tw.push_back(t2[k]);
    }
    const int i1 = path_maslov_index(p1, t1, 1e-8).index;
    const int i2 = path_maslov_index(p2, t2, 1e-8).index;
    CHECK(path_maslov_index(whole, tw, 1e-8).index == i1 + i2);

    std::vector<LagrangianFrame> rev(whole.rbegin(), whole.rend());
    std::vector<double> trev(tw.rbegin(), tw.rend());
    CHECK(path_maslov_index(rev, trev, 1e-8).index == -(i1 + i2));
    CHECK(i1 + i2 == -1);
}

TEST_CASE("multiplicity of a two-dimensional crossing") {
    // A = cos t I, B = sin t I crosses the Dirichlet plane with both eigenvalues at once.
    const auto t = grid(0.2, 2.0, 60);
    std::vector<LagrangianFrame> path;
    for (double s : t) path.push_back(LagrangianFrame(std::cos(s) * Mat::Identity(2, 2), std::sin(s) * Mat::Identity(2, 2)));
    const MaslovIndexResult r = path_maslov_index(path, t, 1e-8);
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].multiplicity == 2);
    CHECK(r.index == -2);
}
