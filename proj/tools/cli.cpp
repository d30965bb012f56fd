#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "maslov/errors.hpp"
#include "maslov/evans.hpp"
#include "maslov/expression.hpp"
#include "maslov/fd_oracle.hpp"
#include "maslov/flow.hpp"
#include "maslov/models.hpp"
#include "maslov/radial.hpp"
#include "maslov/sturm.hpp"

namespace maslov::cli {

namespace {

using json = nlohmann::json;

struct RunConfig {
    std::string command;
    std::string model;
    std::string config;
    std::optional<double> L, h, rtol, epsilon_shift, lambda_star, radius;
    std::optional<std::string> center;
    int samples = 256;
    std::string output;
    std::string format;
    bool json_errors = false;

    // prufer
    std::string q = "0";
    std::string a = "0";
    std::string b = "pi";
    int count = 3;
    // radial
    int d = 3;
    int l = 0;
    double tau0 = 0.0;
    double tau1 = 10.0;
    std::string direction = "unstable";
    std::optional<int> cylinder;
    // oracle
    int top = 3;
    // models
    std::string export_name;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

// Parsed with the expression language so values such as "pi" or "2*pi" work.
double scalar_arg(const std::string& text, const char* name) {
    try {
        return Expression::parse(text)(0.0);
    } catch (const InputError& e) {
        throw InputError(std::string("--") + name + ": " + e.what());
    }
}

void check_ranges(const RunConfig& c) {
    if (c.L && !(*c.L > 0)) throw InputError("--L must be positive");
    if (c.h && !(*c.h > 0 && *c.h <= 0.05)) throw InputError("--h must lie in (0, 0.05]");
    if (c.rtol && !(*c.rtol > 0 && *c.rtol <= 1e-3)) throw InputError("--rtol must lie in (0, 1e-3]");
    if (c.epsilon_shift && !(*c.epsilon_shift > 0)) throw InputError("--epsilon-shift must be positive");
    if (c.radius && !(*c.radius > 0)) throw InputError("--radius must be positive");
    if (c.samples < 8) throw InputError("--samples must be at least 8");
    if (c.count < 1) throw InputError("--count must be at least 1");
    if (c.top < 1) throw InputError("--top must be at least 1");
    if (!c.format.empty() && c.format != "csv" && c.format != "json")
        throw InputError("--format must be csv or json");
}

WaveModel load_model(const RunConfig& c) {
    if (!c.model.empty() && !c.config.empty()) throw InputError("give either --model or --config, not both");
    if (!c.config.empty()) return load_config(c.config);
    if (c.model.empty()) throw InputError("--model or --config is required");
    return builtin(c.model);
}

FlowOptions flow_options(const RunConfig& c) {
    FlowOptions o;
    if (c.L) o.truncation = *c.L;
    if (c.rtol) o.rtol = *c.rtol;
    if (c.epsilon_shift) o.epsilon_shift = *c.epsilon_shift;
    return o;
}

double lambda_star_of(const RunConfig& c, const FlowOptions& o) { return c.lambda_star.value_or(o.epsilon_shift); }

std::string output_format(const RunConfig& c) {
    if (!c.format.empty()) return c.format;
    const std::string& p = c.output;
    return (p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0) ? "json" : "csv";
}

// Tabular result that can be emitted as CSV or as a JSON document.
struct Artifact {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    json document;
};

void write_artifact(const RunConfig& c, const Artifact& art) {
    if (c.output.empty()) return;
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw InputError("cannot open output file " + c.output);
    if (output_format(c) == "json") {
        f << art.document.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < art.columns.size(); ++i) f << (i ? "," : "") << art.columns[i];
        f << "\n";
        for (const auto& row : art.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
            f << "\n";
        }
    }
    if (!f) throw InputError("failed writing " + c.output);
}

json events_json(const std::vector<CrossingEvent>& ev) {
    json a = json::array();
    for (const auto& e : ev) a.push_back({{"param", e.param}, {"multiplicity", e.multiplicity}, {"direction", e.direction}});
    return a;
}

int multiplicity(const std::vector<CrossingEvent>& ev) {
    int s = 0;
    for (const auto& e : ev) s += e.multiplicity;
    return s;
}

// ---------------------------------------------------------------- commands

int cmd_prufer(const RunConfig& c, std::ostream& out) {
    std::optional<ScalarProblem> prob;
    if (!c.model.empty() || !c.config.empty()) {
        const WaveModel m = load_model(c);
        if (m.n != 1) throw InputError("prufer needs a scalar (n = 1) model");
        const double L = resolve_truncation(m, flow_options(c));
        prob.emplace([q = m.potential](double x) { return q(x)(0, 0); }, -L, L);
    } else {
        const Expression q = Expression::parse(c.q);
        prob.emplace([q](double x) { return q(x); }, scalar_arg(c.a, "a"), scalar_arg(c.b, "b"));
    }
    PruferTolerances tol;
    if (c.rtol) tol.rtol = *c.rtol;
    const std::vector<double> ev = find_eigenvalues(*prob, c.count, tol);

    Artifact art;
    art.columns = {"index", "lambda", "zeros"};
    json list = json::array();
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const int z = eigenfunction_zero_count(*prob, ev[k], tol);
        art.rows.push_back({std::to_string(k), num(ev[k]), std::to_string(z)});
        list.push_back({{"index", k}, {"lambda", ev[k]}, {"zeros", z}});
    }
    art.document = {{"a", prob->a()}, {"b", prob->b()}, {"eigenvalues", list}};
    out << "eigenvalues=" << join(ev);
    if (c.lambda_star) {
        const std::vector<double> cp = conjugate_points(*prob, *c.lambda_star, tol);
        art.document["lambda_star"] = *c.lambda_star;
        art.document["conjugate_points"] = cp;
        out << " conjugate_points=" << cp.size();
    }
    out << "\n";
    write_artifact(c, art);
    return kOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    const WaveModel m = load_model(c);
    const FlowOptions o = flow_options(c);
    CountChannels ch;
    ch.winding = false;
    ch.oracle = false;
    const SpectralReport rep = count_unstable_eigenvalues(m, o, ch);
    const double hi = std::max(lambda_max_bound(m, o), o.epsilon_shift + 1.0);
    const std::vector<RealEvansZero> zeros = evans_real_zeros(m, o.epsilon_shift, hi, o);

    Artifact art;
    art.columns = {"lambda", "kernel_dim", "evans_normalized"};
    std::vector<double> lams;
    json list = json::array();
    for (const auto& z : zeros) {
        lams.push_back(z.lambda);
        art.rows.push_back({num(z.lambda), std::to_string(z.kernel_dim), num(z.value)});
        list.push_back({{"lambda", z.lambda}, {"kernel_dim", z.kernel_dim}, {"evans_normalized", z.value}});
    }
    art.document = {{"model", m.name},
                    {"epsilon_shift", o.epsilon_shift},
                    {"unstable", rep.conjugate_count},
                    {"conjugate_points", events_json(rep.conjugate_points)},
                    {"eigenvalues", list},
                    {"diagnostics", rep.diagnostics}};
    out << "unstable=" << rep.conjugate_count << " eigenvalues=" << join(lams) << "\n";
    write_artifact(c, art);
    return kOk;
}

int cmd_conjugate(const RunConfig& c, std::ostream& out) {
    const WaveModel m = load_model(c);
    const FlowOptions o = flow_options(c);
    const double ls = lambda_star_of(c, o);
    const ConjugateScan scan = scan_conjugate_points(m, ls, o);

    Artifact art;
    art.columns = {"x", "det_a", "crossing"};
    json samples = json::array();
    const auto& s = scan.path.samples;
    for (std::size_t k = 0; k < s.size(); ++k) {
        int crossing = 0;
        for (const auto& e : scan.events)
            if (k > 0 && e.param > s[k - 1].x && e.param <= s[k].x) crossing += e.multiplicity;
        art.rows.push_back({num(s[k].x), num(scan.det_a[k]), std::to_string(crossing)});
        samples.push_back({{"x", s[k].x}, {"det_a", scan.det_a[k]}, {"crossing", crossing}});
    }
    const int n = multiplicity(scan.events);
    art.document = {{"model", m.name},
                    {"lambda_star", ls},
                    {"conjugate_points", n},
                    {"events", events_json(scan.events)},
                    {"max_lagrangian_residual", scan.path.max_lagrangian_residual},
                    {"retried", scan.retried},
                    {"samples", samples}};
    out << "conjugate_points=" << n << "\n";
    write_artifact(c, art);
    return kOk;
}

int cmd_square(const RunConfig& c, std::ostream& out) {
    const WaveModel m = load_model(c);
    const FlowOptions o = flow_options(c);
    const SquareReport rep = maslov_square(m, lambda_star_of(c, o), o);

    Artifact art;
    art.columns = {"edge", "param", "crossing", "direction"};
    auto add = [&](const char* edge, const std::vector<CrossingEvent>& ev) {
        for (const auto& e : ev)
            art.rows.push_back({edge, num(e.param), std::to_string(e.multiplicity), std::to_string(e.direction)});
    };
    add("left", rep.left_events);
    add("top", rep.top_events);
    add("right", rep.right_events);
    add("bottom", rep.bottom_events);
    art.document = {{"model", m.name},
                    {"lambda_star", rep.lambda_star},
                    {"lambda_inf", rep.lambda_inf},
                    {"truncation", rep.truncation},
                    {"left_events", events_json(rep.left_events)},
                    {"top_events", events_json(rep.top_events)},
                    {"right_events", events_json(rep.right_events)},
                    {"bottom_events", events_json(rep.bottom_events)},
                    {"net_index", rep.net_index},
                    {"consistent", rep.consistent},
                    {"diagnostics", rep.diagnostics}};
    out << "net_index=" << rep.net_index << " left=" << multiplicity(rep.left_events)
        << " top=" << multiplicity(rep.top_events) << " right=" << multiplicity(rep.right_events)
        << " bottom=" << multiplicity(rep.bottom_events) << (rep.consistent ? " CONSISTENT" : " INCONSISTENT") << "\n";
    write_artifact(c, art);
    return rep.consistent ? kOk : kDisagreement;
}

int cmd_evans(const RunConfig& c, std::ostream& out) {
    const WaveModel m = load_model(c);
    const FlowOptions o = flow_options(c);
    Contour contour;
    if (c.center || c.radius) {
        if (!c.center || !c.radius) throw InputError("--center and --radius must be given together");
        contour.center = cplx(scalar_arg(*c.center, "center"), 0.0);
        contour.radius = *c.radius;
        contour.samples = c.samples;
    } else {
        contour = enclosing_contour(m, o, c.samples);
    }
    const WindingResult w = winding_number(m, contour, o);

    Artifact art;
    art.columns = {"s", "lambda_re", "lambda_im", "evans_re", "evans_im"};
    json values = json::array();
    if (!c.output.empty()) {
        std::vector<EvansValue> vals(static_cast<std::size_t>(contour.samples));
        for (int k = 0; k < contour.samples; ++k)
            vals[static_cast<std::size_t>(k)] = evans_at(m, contour.point(static_cast<double>(k) / contour.samples), o);
        for (int k = 0; k < contour.samples; ++k) {
            const EvansValue& v = vals[static_cast<std::size_t>(k)];
            const double s = static_cast<double>(k) / contour.samples;
            art.rows.push_back({num(s), num(v.lambda.real()), num(v.lambda.imag()), num(v.value.real()),
                                num(v.value.imag())});
            values.push_back({{"s", s},
                              {"lambda", {v.lambda.real(), v.lambda.imag()}},
                              {"evans", {v.value.real(), v.value.imag()}}});
        }
    }
    art.document = {{"model", m.name},
                    {"center", contour.center.real()},
                    {"radius", contour.radius},
                    {"samples", contour.samples},
                    {"grading", contour.grading},
                    {"winding", w.winding},
                    {"raw", w.raw},
                    {"refinement_rounds", w.refinement_rounds},
                    {"evaluations", w.evaluations},
                    {"values", values}};
    out << "winding=" << w.winding << " rounds=" << w.refinement_rounds << " evaluations=" << w.evaluations << "\n";
    write_artifact(c, art);
    return kOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
    const WaveModel m = load_model(c);
    const FlowOptions o = flow_options(c);
    CountChannels ch;
    if (c.h) ch.oracle_h = *c.h;
    ch.contour_samples = c.samples;
    const SpectralReport rep = compare_counts(m, o, ch);
    const int winding = rep.winding_count.value_or(-1);
    const int oracle = rep.oracle_count.value_or(-1);

    Artifact art;
    art.columns = {"channel", "count"};
    art.rows = {{"conjugate", std::to_string(rep.conjugate_count)},
                {"winding", std::to_string(winding)},
                {"oracle", std::to_string(oracle)}};
    art.document = {{"model", m.name},
                    {"lambda_star", rep.lambda_star},
                    {"conjugate", rep.conjugate_count},
                    {"winding", winding},
                    {"winding_refinement_rounds", rep.winding_refinement_rounds},
                    {"oracle", oracle},
                    {"agree", rep.agree},
                    {"conjugate_points", events_json(rep.conjugate_points)},
                    {"diagnostics", rep.diagnostics}};
    out << "conjugate=" << rep.conjugate_count << " winding=" << winding << " oracle=" << oracle
        << (rep.agree ? " AGREE" : " DISAGREE") << "\n";
    write_artifact(c, art);
    return rep.agree ? kOk : kDisagreement;
}

int cmd_radial(const RunConfig& c, std::ostream& out) {
    Artifact art;
    if (c.cylinder) {
        const std::vector<int> spec = cylinder_spectrum(*c.cylinder);
        art.columns = {"eigenvalue"};
        std::string s;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            art.rows.push_back({std::to_string(spec[i])});
            s += (i ? "," : "") + std::to_string(spec[i]);
        }
        art.document = {{"k_max", *c.cylinder}, {"spectrum", spec}};
        out << "cylinder_spectrum=" << s << "\n";
        write_artifact(c, art);
        return kOk;
    }
    const ModeSystem ms = mode_system(c.d, c.l);
    if (c.direction != "unstable" && c.direction != "stable")
        throw InputError("--direction must be unstable or stable");
    const DichotomyProjection p = dichotomy(c.d, c.l);
    const Eigen::Vector2d init = c.direction == "stable" ? p.stable_direction : p.unstable_direction;
    const ModeTrajectory tr = evolve_mode(c.d, c.l, init, c.tau0, c.tau1);

    art.columns = {"tau", "y0", "y1"};
    json samples = json::array();
    for (std::size_t k = 0; k < tr.tau.size(); ++k) {
        art.rows.push_back({num(tr.tau[k]), num(tr.state[k](0)), num(tr.state[k](1))});
        samples.push_back({{"tau", tr.tau[k]}, {"y", {tr.state[k](0), tr.state[k](1)}}});
    }
    art.document = {{"d", c.d},
                    {"l", c.l},
                    {"exponents", {ms.exponents.first, ms.exponents.second}},
                    {"laplace_beltrami_eigenvalue", ms.laplace_beltrami_eigenvalue},
                    {"direction", c.direction},
                    {"fitted_rate", tr.fitted_rate},
                    {"samples", samples}};
    out << "exponents=" << num(ms.exponents.first) << "," << num(ms.exponents.second)
        << " fitted_rate=" << num(tr.fitted_rate) << "\n";
    write_artifact(c, art);
    return kOk;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
    const WaveModel m = load_model(c);
    const FlowOptions o = flow_options(c);
    const double L = resolve_truncation(m, o);
    const double h = c.h.value_or(0.01);
    const double ls = lambda_star_of(c, o);
    const OracleCount oc = oracle_count(m, L, h, ls);
    const std::vector<double> ev = oracle_eigenvalues(discretize(m, L, h));
    const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(c.top), ev.size());

    Artifact art;
    art.columns = {"index", "lambda", "status"};
    json list = json::array();
    std::vector<double> shown;
    for (std::size_t k = 0; k < top; ++k) {
        std::string status = "below";
        if (std::find(oc.counted.begin(), oc.counted.end(), ev[k]) != oc.counted.end()) status = "counted";
        else if (std::find(oc.boundary_modes.begin(), oc.boundary_modes.end(), ev[k]) != oc.boundary_modes.end())
            status = "boundary";
        shown.push_back(ev[k]);
        art.rows.push_back({std::to_string(k), num(ev[k]), status});
        list.push_back({{"index", k}, {"lambda", ev[k]}, {"status", status}});
    }
    art.document = {{"model", m.name},
                    {"L", L},
                    {"h", h},
                    {"lambda_star", ls},
                    {"count", oc.count},
                    {"boundary_modes", oc.boundary_modes},
                    {"separation", oc.separation},
                    {"required_separation", oc.required_separation},
                    {"top", list}};
    out << "oracle_count=" << oc.count << " top=" << join(shown) << "\n";
    write_artifact(c, art);
    return kOk;
}

int cmd_models(const RunConfig& c, std::ostream& out) {
    if (!c.export_name.empty()) {
        const json doc = to_config(builtin(c.export_name));
        if (c.output.empty()) {
            out << doc.dump(2) << "\n";
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw InputError("cannot open output file " + c.output);
            f << doc.dump(2) << "\n";
            out << "exported=" << c.export_name << "\n";
        }
        return kOk;
    }
    for (const std::string& name : builtin_names()) {
        const WaveModel m = builtin(name);
        out << name << " n=" << m.n << " kind=" << to_string(m.kind) << "\n";
    }
    return kOk;
}

void add_common(CLI::App* sub, RunConfig& c, bool model) {
    if (model) {
        sub->add_option("--model", c.model, "builtin model name");
        sub->add_option("--config", c.config, "model config (JSON)");
        sub->add_option("--L", c.L, "truncation half-length");
        sub->add_option("--rtol", c.rtol, "integrator relative tolerance");
        sub->add_option("--epsilon-shift", c.epsilon_shift, "spectral shift (default 1e-3)");
    }
    sub->add_option("--output", c.output, "artifact path");
    sub->add_option("--format", c.format, "csv or json (default from extension, else csv)");
}

const char* error_type(const std::exception& e) {
    if (dynamic_cast<const ResonanceError*>(&e)) return "ResonanceError";
    if (dynamic_cast<const UnderResolvedError*>(&e)) return "UnderResolvedError";
    if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
    if (dynamic_cast<const InconsistencyError*>(&e)) return "InconsistencyError";
    if (dynamic_cast<const InputError*>(&e)) return "InputError";
    if (dynamic_cast<const CLI::ParseError*>(&e)) return "UsageError";
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "InputError";
    return "Error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Counting unstable eigenvalues of gradient reaction-diffusion waves", "maslov_stab"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help");  // -h would clash with --h
    app.add_flag("--json-errors", c.json_errors, "machine-readable errors on stderr");

    auto* prufer = app.add_subcommand("prufer", "scalar Sturm-Liouville eigenvalues by the Pruefer angle");
    add_common(prufer, c, true);
    prufer->add_option("--q", c.q, "potential q(x) as an expression (default 0)");
    prufer->add_option("--a", c.a, "left endpoint (default 0)");
    prufer->add_option("--b", c.b, "right endpoint (default pi)");
    prufer->add_option("--count", c.count, "number of eigenvalues (default 3)");
    prufer->add_option("--lambda-star", c.lambda_star, "also report conjugate points");

    auto* spectrum = app.add_subcommand("spectrum", "unstable eigenvalue count and locations");
    add_common(spectrum, c, true);

    auto* conjugate = app.add_subcommand("conjugate", "conjugate points of the unstable frame");
    add_common(conjugate, c, true);
    conjugate->add_option("--lambda-star", c.lambda_star, "spectral parameter");

    auto* square = app.add_subcommand("square", "Maslov box around [lambda_star, lambda_inf] x [-L, L]");
    add_common(square, c, true);
    square->add_option("--lambda-star", c.lambda_star, "left edge");

    auto* evans = app.add_subcommand("evans", "Evans function winding number");
    add_common(evans, c, true);
    evans->add_option("--center", c.center, "contour centre on the real axis");
    evans->add_option("--radius", c.radius, "contour radius");
    evans->add_option("--samples", c.samples, "contour samples (default 256)");

    auto* compare = app.add_subcommand("compare", "conjugate points vs winding vs finite differences");
    add_common(compare, c, true);
    compare->add_option("--h", c.h, "oracle grid spacing (default 0.01)");
    compare->add_option("--samples", c.samples, "contour samples (default 256)");

    auto* radial = app.add_subcommand("radial", "radial mode dynamics");
    add_common(radial, c, false);
    radial->add_option("--d", c.d, "dimension (default 3)");
    radial->add_option("--l", c.l, "harmonic degree (default 0)");
    radial->add_option("--tau0", c.tau0, "start of the tau interval (default 0)");
    radial->add_option("--tau1", c.tau1, "end of the tau interval (default 10)");
    radial->add_option("--direction", c.direction, "unstable or stable (default unstable)");
    radial->add_option("--cylinder", c.cylinder, "print the cylinder spectrum up to this frequency");

    auto* oracle = app.add_subcommand("oracle", "finite-difference eigenvalues");
    add_common(oracle, c, true);
    oracle->add_option("--h", c.h, "grid spacing (default 0.01)");
    oracle->add_option("--lambda-star", c.lambda_star, "count threshold");
    oracle->add_option("--top", c.top, "eigenvalues to list (default 3)");

    auto* models = app.add_subcommand("models", "list builtin models");
    add_common(models, c, false);
    models->add_option("--export", c.export_name, "write the config of a builtin");

    auto report = [&](const char* type, const std::string& message) {
        if (c.json_errors) {
            err << json{{"error", {{"type", type}, {"message", message}}}}.dump() << "\n";
        } else {
            err << "error: " << message << "\n";
        }
        return kInputError;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        c.json_errors = c.json_errors || std::find(args.begin(), args.end(), "--json-errors") != args.end();
        return report("UsageError", e.what());
    }

    try {
        check_ranges(c);
        if (prufer->parsed()) return cmd_prufer(c, out);
        if (spectrum->parsed()) return cmd_spectrum(c, out);
        if (conjugate->parsed()) return cmd_conjugate(c, out);
        if (square->parsed()) return cmd_square(c, out);
        if (evans->parsed()) return cmd_evans(c, out);
        if (compare->parsed()) return cmd_compare(c, out);
        if (radial->parsed()) return cmd_radial(c, out);
        if (oracle->parsed()) return cmd_oracle(c, out);
        if (models->parsed()) return cmd_models(c, out);
    } catch (const std::exception& e) {
        return report(error_type(e), e.what());
    }
    return kInputError;
}

}  // namespace maslov::cli
