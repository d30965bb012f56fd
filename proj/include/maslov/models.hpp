#pragma once

// Linearizations  L = d^2/dx^2 + Q(x)  about stationary waves of gradient
// reaction-diffusion systems, with Q(x) = Hess G(phi(x)).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maslov/linalg.hpp"

namespace maslov {

enum class WaveKind { Pulse, Front, Custom };

std::string to_string(WaveKind k);
WaveKind wave_kind_from_string(const std::string& s);  // InputError on unknown

using MatrixFn = std::function<Mat(double)>;
using VectorFn = std::function<Vec(double)>;

// Immutable once built; the callables must be re-entrant.
struct WaveModel {
    std::string name;
    int n = 1;
    MatrixFn potential;
    Mat q_minus;
    Mat q_plus;
    VectorFn profile;             // phi, may be empty
    VectorFn profile_derivative;  // phi_x, may be empty
    WaveKind kind = WaveKind::Custom;
    double decay_rate = 1.0;

    // Builtins only: the scalar potential G and its Hessian as functions of u.
    std::function<double(const Vec&)> gradient_potential;
    std::function<Mat(const Vec&)> hessian;

    // Config document the model was built from (or that rebuilds it); null if
    // the model cannot be exported.
    nlohmann::json config;

    Mat Q(double x) const { return potential(x); }
    bool has_profile() const { return static_cast<bool>(profile) && static_cast<bool>(profile_derivative); }
};

// Invariant violations, one message per failed check, each naming the field.
std::vector<std::string> model_diagnostics(const WaveModel& m);
// Throws InputError listing every diagnostic.
void validate_model(const WaveModel& m);

struct EssentialSpectrumCheck {
    bool stable = false;
    double max_eig_qinf = 0.0;
};

EssentialSpectrumCheck check_essential_stability(const WaveModel& m);

// max |phi_xx' + Q phi_x| / max |Q phi_x| with centered second differences of
// phi_x on the grid a + h, ..., b - h.  InputError without a profile.
double translation_mode_residual(const WaveModel& m, double a, double b, double h);

// Largest entry of Q - Hess G(phi) with the Hessian taken by central
// differences (step 1e-4).  InputError for models without G.
double gradient_structure_error(const WaveModel& m, const std::vector<double>& xs);

std::vector<std::string> builtin_names();
WaveModel builtin(const std::string& name);

// Q(x) == q_inf everywhere; no profile.
WaveModel constant_model(const Mat& q_inf);

// Model whose Q is Hess G evaluated along a given profile.
WaveModel model_from_profile(std::string name, int n, std::function<Mat(const Vec&)> hessian,
                             std::function<double(const Vec&)> g, VectorFn phi, VectorFn phi_x, Mat q_minus,
                             Mat q_plus, double decay_rate, WaveKind kind);

// Config schema:
//   { "name": str?, "n": int, "kind": "pulse"|"front"|"custom",
//     "decay_rate": real > 0, "q_minus": [[..]], "q_plus": [[..]],
//     "potential": { "kind": "expression", "entries": [["expr", ..], ..] }
//               | { "kind": "samples", "x": [..], "values": [[[..]]..],
//                   "interpolation": "cubic"|"linear" },
//     "profile": { "phi": ["expr", ..], "phi_x": ["expr", ..] }? }
// A 1x1 matrix may be given as a bare number.  Sampled potentials hold their
// end values outside the sample range.  Unknown keys are rejected.
WaveModel from_config(const nlohmann::json& doc);
nlohmann::json to_config(const WaveModel& m);  // InputError when not exportable
WaveModel load_config(const std::string& path);

}  // namespace maslov
