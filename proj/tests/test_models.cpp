#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "maslov/errors.hpp"
#include "maslov/model_suite.hpp"
#include "maslov/models.hpp"

using namespace maslov;
using nlohmann::json;

namespace {

std::string error_of(const json& doc) {
    try {
        from_config(doc);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

double max_diff(const WaveModel& a, const WaveModel& b) {
    double worst = 0.0;
    for (double x = -30.0; x <= 30.0; x += 0.173) worst = std::max(worst, (a.Q(x) - b.Q(x)).cwiseAbs().maxCoeff());
    return worst;
}

json scalar_config() {
    return json{{"n", 1},
                {"kind", "custom"},
                {"decay_rate", 1.0},
                {"q_minus", {{-1.0}}},
                {"q_plus", {{-1.0}}},
                {"potential", {{"kind", "expression"}, {"entries", {{"-1 + 3*sech(x/2)^2"}}}}}};
}

}  // namespace

TEST_CASE("builtins") {
    CHECK(builtin_names().size() == 3);
    CHECK(builtin("scalar_sech_pulse").Q(0.0)(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(builtin("allen_cahn_front").Q(0.0)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    CHECK((builtin("coupled_gradient_demo").Q(0.0) - d).norm() < 1e-15);
    CHECK_THROWS_AS(builtin("nope"), InputError);
    for (const auto& name : builtin_names()) CHECK(model_diagnostics(builtin(name)).empty());
}

TEST_CASE("essential spectrum") {
    const EssentialSpectrumCheck s = check_essential_stability(builtin("scalar_sech_pulse"));
    CHECK(s.stable);
    CHECK(s.max_eig_qinf == doctest::Approx(-1.0));
    CHECK(check_essential_stability(builtin("allen_cahn_front")).stable);
    CHECK(check_essential_stability(builtin("allen_cahn_front")).max_eig_qinf == doctest::Approx(-2.0));
    Mat q = Mat::Zero(2, 2);
    q(0, 0) = -1.0;
    q(1, 1) = 0.5;
    const EssentialSpectrumCheck u = check_essential_stability(constant_model(q));
    CHECK_FALSE(u.stable);
    CHECK(u.max_eig_qinf == doctest::Approx(0.5));
}

TEST_CASE("translation mode residual") {
    CHECK(translation_mode_residual(builtin("scalar_sech_pulse"), -40, 40, 1e-3) < 1e-5);
    CHECK(translation_mode_residual(builtin("allen_cahn_front"), -40, 40, 1e-3) < 1e-5);
    CHECK(translation_mode_residual(builtin("coupled_gradient_demo"), -40, 40, 1e-3) < 1e-5);

    // Profile scaled by 1.1 with the potential rebuilt from it.
    const WaveModel m = builtin("scalar_sech_pulse");
    const WaveModel bad = model_from_profile(
        "corrupted", 1, m.hessian, m.gradient_potential, [m](double x) { return Vec(1.1 * m.profile(x)); },
        [m](double x) { return Vec(1.1 * m.profile_derivative(x)); }, m.q_minus, m.q_plus, 1.0, WaveKind::Pulse);
    CHECK(translation_mode_residual(bad, -40, 40, 1e-3) > 1e-2);
}

TEST_CASE("gradient structure") {
    std::vector<double> xs;
    for (double x = -8.0; x <= 8.0; x += 0.5) xs.push_back(x);
    for (const auto& name : builtin_names()) CHECK(gradient_structure_error(builtin(name), xs) < 1e-6);
}

TEST_CASE("pulse detection") {
    for (const auto& name : builtin_names()) {
        const WaveModel m = builtin(name);
        if (m.kind != WaveKind::Pulse) continue;
        bool sign_change = false;
        double prev = m.profile_derivative(-20.0)(0);
        for (double x = -20.0; x <= 20.0; x += 0.01) {
            const double v = m.profile_derivative(x)(0);
            if (v * prev < 0) sign_change = true;
            prev = v;
        }
        CHECK(sign_change);
    }
    // A pulse whose derivative never changes sign is rejected.
    WaveModel m = builtin("allen_cahn_front");
    m.kind = WaveKind::Pulse;
    m.q_plus = m.q_minus;
    CHECK_FALSE(model_diagnostics(m).empty());
}

TEST_CASE("config round trip") {
    for (const auto& name : builtin_names()) {
        const WaveModel b = builtin(name);
        const WaveModel r = from_config(to_config(b));
        CHECK(max_diff(b, r) < 1e-12);
        CHECK(r.n == b.n);
        CHECK(r.kind == b.kind);
        CHECK((r.q_minus - b.q_minus).norm() == 0.0);
        CHECK((r.q_plus - b.q_plus).norm() == 0.0);
        CHECK(r.has_profile());
    }
    const WaveModel s = from_config(scalar_config());
    CHECK(max_diff(s, builtin("scalar_sech_pulse")) < 1e-12);

    const std::string path = "test_models_roundtrip.json";
    {
        std::ofstream f(path);
        f << to_config(builtin("coupled_gradient_demo")).dump(2);
    }
    CHECK(max_diff(load_config(path), builtin("coupled_gradient_demo")) < 1e-12);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("does/not/exist.json"), InputError);
}

TEST_CASE("config validation names the field") {
    json asym = json{{"n", 2},
                     {"kind", "custom"},
                     {"decay_rate", 1.0},
                     {"q_minus", {{-1.0, 0.0}, {0.0, -1.0}}},
                     {"q_plus", {{-1.0, 0.0}, {0.0, -1.0}}},
                     {"potential", {{"kind", "expression"}, {"entries", json::array({json::array({"-1", "exp(-x^2)"}), json::array({"0", "-1"})})}}}};
    CHECK(error_of(asym).find("symmetry") != std::string::npos);

    json no_qp = scalar_config();
    no_qp.erase("q_plus");
    CHECK(error_of(no_qp).find("q_plus") != std::string::npos);

    json no_decay = scalar_config();
    no_decay.erase("decay_rate");
    CHECK(error_of(no_decay).find("decay_rate") != std::string::npos);

    json few = scalar_config();
    few["potential"] = {{"kind", "samples"}, {"interpolation", "cubic"}, {"x", {-1, 0, 1}}, {"values", {{{-1}}, {{2}}, {{-1}}}}};
    CHECK(error_of(few).find("potential") != std::string::npos);

    json extra = scalar_config();
    extra["colour"] = "red";
    CHECK(error_of(extra).find("colour") != std::string::npos);

    json bad_expr = scalar_config();
    bad_expr["potential"]["entries"] = {{"-1 + 3*sech(x/2"}};
    CHECK_FALSE(error_of(bad_expr).empty());
}

TEST_CASE("sampled potential config") {
    json doc = scalar_config();
    json xs = json::array(), vs = json::array();
    for (int k = -400; k <= 400; ++k) {
        const double x = 0.1 * k;
        const double s = 1.0 / std::cosh(x / 2);
        xs.push_back(x);
        vs.push_back({{-1.0 + 3.0 * s * s}});
    }
    doc["potential"] = {{"kind", "samples"}, {"x", xs}, {"values", vs}};
    const WaveModel m = from_config(doc);
    CHECK(std::abs(m.Q(0.05)(0, 0) - builtin("scalar_sech_pulse").Q(0.05)(0, 0)) < 1e-4);
    // Held at the end value outside the sample range.
    CHECK(m.Q(100.0)(0, 0) == doctest::Approx(m.Q(40.0)(0, 0)));
}

TEST_CASE("randomized suite") {
    SuiteOptions o;
    o.pulses = 4;
    o.bumps = 4;
    const std::vector<WaveModel> a = randomized_suite(o);
    const std::vector<WaveModel> b = randomized_suite(o);
    REQUIRE(a.size() == 8);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(max_diff(a[i], b[i]) == 0.0);
        CHECK(model_diagnostics(a[i]).empty());
        CHECK(check_essential_stability(a[i]).stable);
    }
    for (int i = 0; i < 4; ++i) {
        CHECK(a[static_cast<std::size_t>(i)].kind == WaveKind::Pulse);
        CHECK(translation_mode_residual(a[static_cast<std::size_t>(i)], -30, 30, 1e-3) < 1e-5);
    }
}
