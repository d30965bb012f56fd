#include "maslov/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "maslov/errors.hpp"
#include "maslov/expression.hpp"
#include "maslov/spline.hpp"

namespace maslov {

namespace {

using nlohmann::json;

double sech(double v) { return 1.0 / std::cosh(v); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double asymmetry(const Mat& q) { return (q - q.transpose()).cwiseAbs().maxCoeff(); }

double max_eig(const Mat& q) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (q + q.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

// Scalar-potential builtins: G, G'' and the profile.
struct ScalarWave {
    std::function<double(double)> g, g2, phi, phi_x;
    std::string q_expr, phi_expr, phi_x_expr;
    double q_inf;
    double decay;
};

ScalarWave sech_wave() {
    ScalarWave w;
    w.g = [](double u) { return -0.5 * u * u + u * u * u / 3.0; };
    w.g2 = [](double u) { return -1.0 + 2.0 * u; };
    w.phi = [](double x) {
        const double s = sech(x / 2);
        return 1.5 * s * s;
    };
    w.phi_x = [](double x) {
        const double s = sech(x / 2);
        return -1.5 * s * s * std::tanh(x / 2);
    };
    w.q_expr = "-1 + 3*sech(x/2)^2";
    w.phi_expr = "1.5*sech(x/2)^2";
    w.phi_x_expr = "-1.5*sech(x/2)^2*tanh(x/2)";
    w.q_inf = -1.0;
    w.decay = 1.0;
    return w;
}

ScalarWave allen_cahn_wave() {
    ScalarWave w;
    const double r2 = std::sqrt(2.0);
    w.g = [](double u) { return 0.5 * u * u - 0.25 * u * u * u * u; };
    w.g2 = [](double u) { return 1.0 - 3.0 * u * u; };
    w.phi = [r2](double x) { return std::tanh(x / r2); };
    w.phi_x = [r2](double x) {
        const double s = sech(x / r2);
        return s * s / r2;
    };
    w.q_expr = "1 - 3*tanh(x/sqrt(2))^2";
    w.phi_expr = "tanh(x/sqrt(2))";
    w.phi_x_expr = "sech(x/sqrt(2))^2/sqrt(2)";
    w.q_inf = -2.0;
    w.decay = r2;
    return w;
}

// Block-diagonal stack of scalar waves.
WaveModel stack(const std::string& name, const std::vector<ScalarWave>& parts, WaveKind kind) {
    const int n = static_cast<int>(parts.size());
    Mat qinf = Mat::Zero(n, n);
    double decay = parts.front().decay;
    for (int i = 0; i < n; ++i) {
        qinf(i, i) = parts[static_cast<std::size_t>(i)].q_inf;
        decay = std::min(decay, parts[static_cast<std::size_t>(i)].decay);
    }
    auto hess = [parts, n](const Vec& u) {
        Mat h = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) h(i, i) = parts[static_cast<std::size_t>(i)].g2(u(i));
        return h;
    };
    auto g = [parts, n](const Vec& u) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += parts[static_cast<std::size_t>(i)].g(u(i));
        return s;
    };
    auto phi = [parts, n](double x) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = parts[static_cast<std::size_t>(i)].phi(x);
        return v;
    };
    auto phi_x = [parts, n](double x) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = parts[static_cast<std::size_t>(i)].phi_x(x);
        return v;
    };
    // The Q(x) of a Hessian evaluated on the profile; written out explicitly
    // so the config expressions reproduce it bit for bit.
    std::vector<Expression> qs;
    for (const auto& p : parts) qs.push_back(Expression::parse(p.q_expr));
    WaveModel m = model_from_profile(name, n, hess, g, phi, phi_x, qinf, qinf, decay, kind);
    m.potential = [qs, n](double x) {
        Mat q = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) q(i, i) = qs[static_cast<std::size_t>(i)](x);
        return q;
    };

    json entries = json::array();
    json phis = json::array();
    json phixs = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(i == j ? parts[static_cast<std::size_t>(i)].q_expr : "0");
        entries.push_back(row);
        phis.push_back(parts[static_cast<std::size_t>(i)].phi_expr);
        phixs.push_back(parts[static_cast<std::size_t>(i)].phi_x_expr);
    }
    m.config = json{{"name", name},
                    {"n", n},
                    {"kind", to_string(kind)},
                    {"decay_rate", decay},
                    {"q_minus", matrix_to_json(qinf)},
                    {"q_plus", matrix_to_json(qinf)},
                    {"potential", {{"kind", "expression"}, {"entries", entries}}},
                    {"profile", {{"phi", phis}, {"phi_x", phixs}}}};
    return m;
}

// ---- config parsing -------------------------------------------------------

class ConfigReader {
public:
    explicit ConfigReader(const json& doc) : doc_(doc) {}

    void error(const std::string& field, const std::string& what) { errors_.push_back(field + ": " + what); }
    const std::vector<std::string>& errors() const { return errors_; }

    const json* get(const json& obj, const std::string& key, const std::string& path, bool required) {
        if (!obj.is_object() || !obj.contains(key)) {
            if (required) error(path + key, "required field missing");
            return nullptr;
        }
        return &obj.at(key);
    }

    void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
        if (!obj.is_object()) return;
        for (const auto& [k, v] : obj.items())
            if (!allowed.count(k)) error(path + k, "unknown key");
    }

    std::optional<double> number(const json* v, const std::string& field) {
        if (!v) return std::nullopt;
        if (!v->is_number()) {
            error(field, "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<Mat> matrix(const json* v, int n, const std::string& field) {
        if (!v) return std::nullopt;
        if (n == 1 && v->is_number()) return Mat::Constant(1, 1, v->get<double>());
        if (!v->is_array() || static_cast<int>(v->size()) != n) {
            error(field, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " array");
            return std::nullopt;
        }
        Mat m(n, n);
        for (int i = 0; i < n; ++i) {
            const json& row = (*v)[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                error(field, "row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
                return std::nullopt;
            }
            for (int j = 0; j < n; ++j) {
                const json& e = row[static_cast<std::size_t>(j)];
                if (!e.is_number()) {
                    error(field, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a number");
                    return std::nullopt;
                }
                m(i, j) = e.get<double>();
            }
        }
        return m;
    }

    std::optional<Expression> expression(const json& v, const std::string& field) {
        try {
            if (v.is_number()) return Expression::parse(fmt(v.get<double>()));
            if (v.is_string()) return Expression::parse(v.get<std::string>());
            error(field, "expected an expression string or number");
        } catch (const InputError& e) {
            error(field, e.what());
        }
        return std::nullopt;
    }

    const json& doc() const { return doc_; }

private:
    const json& doc_;
    std::vector<std::string> errors_;
};

[[noreturn]] void throw_diagnostics(const std::string& what, const std::vector<std::string>& diags) {
    std::ostringstream os;
    os << what;
    for (std::size_t i = 0; i < diags.size(); ++i) os << (i == 0 ? ": " : "; ") << diags[i];
    throw InputError(os.str());
}

}  // namespace

std::string to_string(WaveKind k) {
    switch (k) {
        case WaveKind::Pulse: return "pulse";
        case WaveKind::Front: return "front";
        case WaveKind::Custom: return "custom";
    }
    return "custom";
}

WaveKind wave_kind_from_string(const std::string& s) {
    if (s == "pulse") return WaveKind::Pulse;
    if (s == "front") return WaveKind::Front;
    if (s == "custom") return WaveKind::Custom;
    throw InputError("kind: expected pulse, front or custom, got \"" + s + "\"");
}

std::vector<std::string> model_diagnostics(const WaveModel& m) {
    std::vector<std::string> out;
    if (m.n < 1) {
        out.push_back("n: must be a positive integer");
        return out;
    }
    auto check_limit = [&](const Mat& q, const std::string& field) {
        if (q.rows() != m.n || q.cols() != m.n) {
            out.push_back(field + ": expected " + std::to_string(m.n) + "x" + std::to_string(m.n) + " matrix");
            return false;
        }
        if (!q.allFinite()) {
            out.push_back(field + ": non-finite entry");
            return false;
        }
        if (asymmetry(q) >= 1e-12) {
            out.push_back(field + ": matrix fails symmetry (asymmetry " + fmt(asymmetry(q)) + ")");
            return false;
        }
        return true;
    };
    const bool lim_ok = check_limit(m.q_minus, "q_minus") & check_limit(m.q_plus, "q_plus");
    if (!(m.decay_rate > 0) || !std::isfinite(m.decay_rate)) out.push_back("decay_rate: must be positive");
    if (!m.potential) {
        out.push_back("potential: missing");
        return out;
    }

    const double span = m.decay_rate > 0 ? 30.0 / m.decay_rate : 30.0;
    bool q_ok = true;
    for (int k = -400; k <= 400 && q_ok; ++k) {
        const double x = span * k / 400.0;
        const Mat q = m.potential(x);
        if (q.rows() != m.n || q.cols() != m.n) {
            out.push_back("potential: wrong shape at x=" + fmt(x));
            q_ok = false;
        } else if (!q.allFinite()) {
            out.push_back("potential: non-finite value at x=" + fmt(x));
            q_ok = false;
        } else if (asymmetry(q) >= 1e-12) {
            out.push_back("potential: Q(x) fails symmetry at x=" + fmt(x) + " (asymmetry " + fmt(asymmetry(q)) + ")");
            q_ok = false;
        }
    }

    if (q_ok && lim_ok && m.decay_rate > 0) {
        // Deviation from the limit, rescaled by exp(decay * X): its far half
        // must stay within a factor 100 of its near half.
        for (int side = -1; side <= 1; side += 2) {
            const Mat& lim = side < 0 ? m.q_minus : m.q_plus;
            const std::string field = side < 0 ? "q_minus" : "q_plus";
            double near_max = 1.0;
            for (int k = 0; k <= 24; ++k) {
                const double x = (2.0 + k) / m.decay_rate;
                const double dev = (m.potential(side * x) - lim).cwiseAbs().maxCoeff();
                const double scaled = dev * std::exp(m.decay_rate * x);
                if (k <= 12) {
                    near_max = std::max(near_max, scaled);
                } else if (dev > 1e-11 && scaled > 100.0 * near_max) {
                    out.push_back(field + ": Q(" + fmt(side * x) + ") does not approach the limit at decay_rate " +
                                  fmt(m.decay_rate) + " (deviation " + fmt(dev) + ")");
                    break;
                }
            }
        }
    }

    if (m.kind == WaveKind::Pulse) {
        if (lim_ok && (m.q_minus - m.q_plus).cwiseAbs().maxCoeff() > 1e-12)
            out.push_back("kind: pulse requires q_minus == q_plus");
        if (!m.has_profile()) {
            out.push_back("profile: kind pulse requires phi and phi_x");
        } else {
            bool sign_change = false;
            Vec prev = m.profile_derivative(-span);
            for (int k = -1999; k <= 2000 && !sign_change; ++k) {
                const Vec cur = m.profile_derivative(span * k / 2000.0);
                for (Eigen::Index i = 0; i < cur.size(); ++i)
                    if (prev(i) * cur(i) < 0 || (prev(i) != 0 && cur(i) == 0)) sign_change = true;
                prev = cur;
            }
            if (!sign_change) out.push_back("profile: kind pulse requires phi_x to change sign");
        }
    }
    return out;
}

void validate_model(const WaveModel& m) {
    const auto d = model_diagnostics(m);
    if (!d.empty()) throw_diagnostics("invalid model" + (m.name.empty() ? std::string() : " '" + m.name + "'"), d);
}

EssentialSpectrumCheck check_essential_stability(const WaveModel& m) {
    EssentialSpectrumCheck c;
    c.max_eig_qinf = std::max(max_eig(m.q_minus), max_eig(m.q_plus));
    c.stable = c.max_eig_qinf < 0;
    return c;
}

double translation_mode_residual(const WaveModel& m, double a, double b, double h) {
    if (!m.has_profile()) throw InputError("translation_mode_residual: model '" + m.name + "' has no profile");
    if (!(a < b) || !(h > 0)) throw InputError("translation_mode_residual: bad grid");
    double worst = 0.0;
    double scale = 0.0;
    const long steps = std::lround((b - a) / h);
    for (long i = 1; i < steps; ++i) {
        const double x = a + i * h;
        const Vec p0 = m.profile_derivative(x);
        const Vec pxx = (m.profile_derivative(x + h) - 2.0 * p0 + m.profile_derivative(x - h)) / (h * h);
        const Vec qp = m.potential(x) * p0;
        worst = std::max(worst, (pxx + qp).norm());
        scale = std::max(scale, qp.norm());
    }
    return worst / std::max(scale, 1e-300);
}

double gradient_structure_error(const WaveModel& m, const std::vector<double>& xs) {
    if (!m.gradient_potential || !m.has_profile())
        throw InputError("gradient_structure_error: model '" + m.name + "' carries no gradient potential");
    const double e = 1e-4;
    double worst = 0.0;
    for (double x : xs) {
        const Vec u = m.profile(x);
        Mat h(m.n, m.n);
        for (int i = 0; i < m.n; ++i) {
            for (int j = 0; j < m.n; ++j) {
                auto g = [&](double di, double dj) {
                    Vec v = u;
                    v(i) += di;
                    v(j) += dj;
                    return m.gradient_potential(v);
                };
                h(i, j) = (g(e, e) - g(e, -e) - g(-e, e) + g(-e, -e)) / (4 * e * e);
            }
        }
        worst = std::max(worst, (h - m.potential(x)).cwiseAbs().maxCoeff());
    }
    return worst;
}

std::vector<std::string> builtin_names() { return {"scalar_sech_pulse", "allen_cahn_front", "coupled_gradient_demo"}; }

WaveModel builtin(const std::string& name) {
    WaveModel m;
    if (name == "scalar_sech_pulse") m = stack(name, {sech_wave()}, WaveKind::Pulse);
    else if (name == "allen_cahn_front") m = stack(name, {allen_cahn_wave()}, WaveKind::Front);
    else if (name == "coupled_gradient_demo") m = stack(name, {sech_wave(), allen_cahn_wave()}, WaveKind::Front);
    else throw InputError("unknown builtin model '" + name + "' (known: scalar_sech_pulse, allen_cahn_front, coupled_gradient_demo)");
    validate_model(m);
    return m;
}

WaveModel constant_model(const Mat& q_inf) {
    WaveModel m;
    m.name = "constant";
    m.n = static_cast<int>(q_inf.rows());
    m.potential = [q_inf](double) { return q_inf; };
    m.q_minus = q_inf;
    m.q_plus = q_inf;
    m.kind = WaveKind::Custom;
    m.decay_rate = 1.0;
    json entries = json::array();
    for (int i = 0; i < m.n; ++i) {
        json row = json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(fmt(q_inf(i, j)));
        entries.push_back(row);
    }
    m.config = json{{"name", m.name},
                    {"n", m.n},
                    {"kind", "custom"},
                    {"decay_rate", 1.0},
                    {"q_minus", matrix_to_json(q_inf)},
                    {"q_plus", matrix_to_json(q_inf)},
                    {"potential", {{"kind", "expression"}, {"entries", entries}}}};
    validate_model(m);
    return m;
}

WaveModel model_from_profile(std::string name, int n, std::function<Mat(const Vec&)> hessian,
                             std::function<double(const Vec&)> g, VectorFn phi, VectorFn phi_x, Mat q_minus,
                             Mat q_plus, double decay_rate, WaveKind kind) {
    WaveModel m;
    m.name = std::move(name);
    m.n = n;
    m.potential = [hessian, phi](double x) { return hessian(phi(x)); };
    m.q_minus = std::move(q_minus);
    m.q_plus = std::move(q_plus);
    m.profile = std::move(phi);
    m.profile_derivative = std::move(phi_x);
    m.kind = kind;
    m.decay_rate = decay_rate;
    m.gradient_potential = std::move(g);
    m.hessian = std::move(hessian);
    return m;
}

WaveModel from_config(const json& doc) {
    ConfigReader rd(doc);
    if (!doc.is_object()) throw InputError("config: expected a JSON object");
    rd.reject_unknown(doc, {"name", "n", "kind", "decay_rate", "q_minus", "q_plus", "potential", "profile"}, "");

    WaveModel m;
    m.name = "config";
    if (const json* v = rd.get(doc, "name", "", false)) {
        if (v->is_string()) m.name = v->get<std::string>();
        else rd.error("name", "expected a string");
    }

    int n = 0;
    if (const json* v = rd.get(doc, "n", "", true)) {
        if (v->is_number_integer() && v->get<int>() >= 1) n = v->get<int>();
        else rd.error("n", "expected a positive integer");
    }
    if (const json* v = rd.get(doc, "kind", "", true)) {
        try {
            if (!v->is_string()) throw InputError("kind: expected a string");
            m.kind = wave_kind_from_string(v->get<std::string>());
        } catch (const InputError& e) {
            rd.error("kind", std::string(e.what()).substr(6));
        }
    }
    if (auto d = rd.number(rd.get(doc, "decay_rate", "", true), "decay_rate")) m.decay_rate = *d;
    if (n < 1) throw_diagnostics("invalid config", rd.errors().empty() ? std::vector<std::string>{"n: invalid"} : rd.errors());
    m.n = n;

    auto qm = rd.matrix(rd.get(doc, "q_minus", "", true), n, "q_minus");
    auto qp = rd.matrix(rd.get(doc, "q_plus", "", true), n, "q_plus");
    if (qm) m.q_minus = *qm;
    if (qp) m.q_plus = *qp;

    if (const json* pot = rd.get(doc, "potential", "", true)) {
        const json* kind = rd.get(*pot, "kind", "potential.", true);
        const std::string pk = kind && kind->is_string() ? kind->get<std::string>() : "";
        if (pk == "expression") {
            rd.reject_unknown(*pot, {"kind", "entries"}, "potential.");
            const json* entries = rd.get(*pot, "entries", "potential.", true);
            if (entries) {
                std::vector<Expression> ex;
                bool ok = entries->is_array() && static_cast<int>(entries->size()) == n;
                if (n == 1 && (entries->is_string() || entries->is_number())) {
                    if (auto e = rd.expression(*entries, "potential.entries")) ex.push_back(*e);
                    ok = ex.size() == 1;
                } else if (ok) {
                    for (int i = 0; i < n && ok; ++i) {
                        const json& row = (*entries)[static_cast<std::size_t>(i)];
                        if (!row.is_array() || static_cast<int>(row.size()) != n) {
                            ok = false;
                            break;
                        }
                        for (int j = 0; j < n; ++j) {
                            auto e = rd.expression(row[static_cast<std::size_t>(j)],
                                                   "potential.entries[" + std::to_string(i) + "][" +
                                                       std::to_string(j) + "]");
                            if (!e) ok = false;
                            else ex.push_back(*e);
                        }
                    }
                }
                if (!ok && rd.errors().empty())
                    rd.error("potential.entries", "expected an " + std::to_string(n) + "x" + std::to_string(n) +
                                                      " array of expressions");
                if (ok) {
                    m.potential = [ex, n](double x) {
                        Mat q(n, n);
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j) q(i, j) = ex[static_cast<std::size_t>(i * n + j)](x);
                        return q;
                    };
                }
            }
        } else if (pk == "samples") {
            rd.reject_unknown(*pot, {"kind", "x", "values", "interpolation"}, "potential.");
            Interpolation interp = Interpolation::Cubic;
            if (const json* iv = rd.get(*pot, "interpolation", "potential.", false)) {
                const std::string s = iv->is_string() ? iv->get<std::string>() : "";
                if (s == "linear") interp = Interpolation::Linear;
                else if (s != "cubic") rd.error("potential.interpolation", "expected \"cubic\" or \"linear\"");
            }
            const json* xs = rd.get(*pot, "x", "potential.", true);
            const json* vs = rd.get(*pot, "values", "potential.", true);
            if (xs && vs) {
                std::vector<double> x;
                bool ok = xs->is_array();
                if (ok)
                    for (const auto& e : *xs) {
                        if (!e.is_number()) ok = false;
                        else x.push_back(e.get<double>());
                    }
                if (!ok) rd.error("potential.x", "expected an array of numbers");
                if (ok && (!vs->is_array() || vs->size() != x.size())) {
                    rd.error("potential.values", "expected one matrix per sample abscissa");
                    ok = false;
                }
                std::vector<std::vector<double>> cols(static_cast<std::size_t>(n * n));
                for (std::size_t k = 0; ok && k < x.size(); ++k) {
                    auto q = rd.matrix(&(*vs)[k], n, "potential.values[" + std::to_string(k) + "]");
                    if (!q) ok = false;
                    else
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(i * n + j)].push_back((*q)(i, j));
                }
                if (ok) {
                    try {
                        std::vector<Interpolant> f;
                        for (auto& c : cols) f.emplace_back(x, c, interp);
                        m.potential = [f, n](double t) {
                            Mat q(n, n);
                            for (int i = 0; i < n; ++i)
                                for (int j = 0; j < n; ++j) q(i, j) = f[static_cast<std::size_t>(i * n + j)](t);
                            return q;
                        };
                    } catch (const InputError& e) {
                        rd.error("potential.values", std::string(e.what()).substr(std::string("interpolant: ").size()));
                    }
                }
            }
        } else if (kind) {
            rd.error("potential.kind", "expected \"expression\" or \"samples\"");
        }
    }

    if (const json* prof = rd.get(doc, "profile", "", false)) {
        rd.reject_unknown(*prof, {"phi", "phi_x"}, "profile.");
        auto read = [&](const char* key) -> VectorFn {
            const json* v = rd.get(*prof, key, "profile.", true);
            if (!v) return {};
            std::vector<Expression> ex;
            if (n == 1 && (v->is_string() || v->is_number())) {
                if (auto e = rd.expression(*v, std::string("profile.") + key)) ex.push_back(*e);
            } else if (v->is_array() && static_cast<int>(v->size()) == n) {
                for (int i = 0; i < n; ++i)
                    if (auto e = rd.expression((*v)[static_cast<std::size_t>(i)],
                                               std::string("profile.") + key + "[" + std::to_string(i) + "]"))
                        ex.push_back(*e);
            } else {
                rd.error(std::string("profile.") + key, "expected " + std::to_string(n) + " expressions");
            }
            if (static_cast<int>(ex.size()) != n) return {};
            return [ex, n](double x) {
                Vec p(n);
                for (int i = 0; i < n; ++i) p(i) = ex[static_cast<std::size_t>(i)](x);
                return p;
            };
        };
        m.profile = read("phi");
        m.profile_derivative = read("phi_x");
    }

    if (!rd.errors().empty()) throw_diagnostics("invalid config", rd.errors());
    m.config = doc;
    validate_model(m);
    return m;
}

json to_config(const WaveModel& m) {
    if (m.config.is_null()) throw InputError("model '" + m.name + "' has no config representation");
    return m.config;
}

WaveModel load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return from_config(doc);
}

}  // namespace maslov
