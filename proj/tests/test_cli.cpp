#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = maslov::cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) { return fs::path(MASLOV_SCRATCH_DIR) / name; }

// Runs the command with --output into the scratch dir and compares the
// summary plus artifact with tests/golden/<name>.txt.  UPDATE_GOLDEN=1
// rewrites the golden file instead.
void golden(const std::string& name, std::vector<std::string> args, const std::string& ext = "csv",
            int expected_code = 0) {
    const fs::path art = scratch(name + "." + ext);
    fs::remove(art);
    args.push_back("--output");
    args.push_back(art.string());
    const Outcome o = invoke(args);
    CHECK_MESSAGE(o.code == expected_code, name << ": " << o.err);

    std::string text = "$";
    for (std::size_t i = 0; i + 2 < args.size(); ++i) text += " " + args[i];
    text += "\n" + o.out + "--- artifact\n" + (fs::exists(art) ? slurp(art) : std::string("(none)\n"));

    const fs::path g = fs::path(MASLOV_GOLDEN_DIR) / (name + ".txt");
    const char* update = std::getenv("UPDATE_GOLDEN");
    if (update && std::string(update) == "1") {
        std::ofstream(g, std::ios::binary) << text;
        return;
    }
    REQUIRE_MESSAGE(fs::exists(g), "missing golden file " << g << " (run with UPDATE_GOLDEN=1)");
    CHECK_MESSAGE(slurp(g) == text, "golden mismatch for " << name);
}

const std::vector<std::string> kBuiltins{"scalar_sech_pulse", "allen_cahn_front", "coupled_gradient_demo"};

}  // namespace

TEST_CASE("summary lines") {
    const Outcome c = invoke({"conjugate", "--model", "scalar_sech_pulse", "--lambda-star", "1e-3"});
    CHECK(c.code == 0);
    CHECK(c.out == "conjugate_points=1\n");

    const Outcome cmp = invoke({"compare", "--model", "allen_cahn_front"});
    CHECK(cmp.code == 0);
    CHECK(cmp.out == "conjugate=0 winding=0 oracle=0 AGREE\n");

    const Outcome m = invoke({"models"});
    CHECK(m.code == 0);
    int lines = 0;
    for (char ch : m.out) lines += ch == '\n';
    CHECK(lines == 3);
    for (const auto& b : kBuiltins) CHECK(m.out.find(b) != std::string::npos);
}

TEST_CASE("golden outputs") {
    golden("models", {"models"});
    golden("models_export", {"models", "--export", "scalar_sech_pulse"}, "json");
    golden("prufer_free", {"prufer", "--q", "0", "--a", "0", "--b", "pi", "--count", "3", "--lambda-star", "-9.5"});
    golden("prufer_sech", {"prufer", "--model", "scalar_sech_pulse", "--count", "3"}, "json");
    golden("radial_d3_l2", {"radial", "--d", "3", "--l", "2", "--tau1", "6"});
    golden("radial_cylinder", {"radial", "--cylinder", "5"}, "json");
    golden("evans_scalar_sech_pulse", {"evans", "--model", "scalar_sech_pulse", "--samples", "64"});
    golden("evans_circle", {"evans", "--model", "scalar_sech_pulse", "--center", "0.625", "--radius", "0.8",
                            "--samples", "32"}, "json");
    for (const auto& b : kBuiltins) {
        golden("conjugate_" + b, {"conjugate", "--model", b, "--lambda-star", "1e-3"});
        golden("square_" + b, {"square", "--model", b});
        golden("spectrum_" + b, {"spectrum", "--model", b}, "json");
        golden("compare_" + b, {"compare", "--model", b}, "json");
        golden("oracle_" + b, {"oracle", "--model", b, "--top", "5"});
    }
}

TEST_CASE("identical invocations give byte-identical files") {
    const fs::path a = scratch("det_a.csv"), b = scratch("det_b.csv");
    CHECK(invoke({"square", "--model", "scalar_sech_pulse", "--output", a.string()}).code == 0);
    CHECK(invoke({"square", "--model", "scalar_sech_pulse", "--output", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("numbers round-trip") {
    const fs::path p = scratch("rt.csv");
    CHECK(invoke({"oracle", "--model", "scalar_sech_pulse", "--top", "2", "--output", p.string()}).code == 0);
    std::istringstream lines(slurp(p));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "index,lambda,status");
    std::getline(lines, line);
    const std::string num = line.substr(2, line.find(',', 2) - 2);
    const double v = std::stod(num);
    std::ostringstream again;
    again.precision(17);
    again << v;
    CHECK(again.str() == num);
}

TEST_CASE("config files") {
    const fs::path cfg = scratch("sech.json");
    CHECK(invoke({"models", "--export", "scalar_sech_pulse", "--output", cfg.string()}).code == 0);
    const Outcome o = invoke({"conjugate", "--config", cfg.string()});
    CHECK(o.code == 0);
    CHECK(o.out == "conjugate_points=1\n");

    json doc = json::parse(slurp(cfg));
    doc.erase("decay_rate");
    const fs::path bad = scratch("no_decay.json");
    std::ofstream(bad) << doc.dump();
    const Outcome e = invoke({"--json-errors", "conjugate", "--config", bad.string()});
    CHECK(e.code == 1);
    const json err = json::parse(e.err);
    CHECK(err["error"]["type"] == "InputError");
    CHECK(err["error"]["message"].get<std::string>().find("decay_rate") != std::string::npos);

    json few = json::parse(slurp(cfg));
    few["potential"] = {{"kind", "samples"}, {"interpolation", "cubic"}, {"x", {-1, 0, 1}}, {"values", {{{-1}}, {{2}}, {{-1}}}}};
    const fs::path fp = scratch("few.json");
    std::ofstream(fp) << few.dump();
    CHECK(invoke({"conjugate", "--config", fp.string()}).code == 1);
}

TEST_CASE("errors map to exit 1") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"bogus"}).code == 1);
    CHECK(invoke({"conjugate"}).code == 1);
    CHECK(invoke({"conjugate", "--model", "nope"}).code == 1);
    CHECK(invoke({"oracle", "--model", "scalar_sech_pulse", "--h", "0.5"}).code == 1);
    CHECK(invoke({"conjugate", "--model", "scalar_sech_pulse", "--config", "x.json"}).code == 1);
    CHECK(invoke({"conjugate", "--model", "scalar_sech_pulse", "--format", "xml"}).code == 1);
    CHECK(invoke({"conjugate", "--model", "scalar_sech_pulse", "--wat"}).code == 1);
    const Outcome j = invoke({"--json-errors", "oracle", "--model", "scalar_sech_pulse", "--lambda-star", "1.25"});
    CHECK(j.code == 1);
    CHECK(json::parse(j.err)["error"]["type"] == "ResonanceError");
    CHECK(invoke({"--help"}).code == 0);
}
