// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "maslov/errors.hpp"
#include "maslov/evans.hpp"
#include "maslov/fd_oracle.hpp"
#include "maslov/flow.hpp"
#include "maslov/model_suite.hpp"
#include "maslov/radial.hpp"
#include "maslov/sturm.hpp"

using namespace maslov;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int total(const std::vector<CrossingEvent>& ev) {
    int s = 0;
    for (const auto& e : ev) s += e.multiplicity;
    return s;
}

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << detail << std::endl;
    if (!ok) ++failures;
}

// Everything measured once per model and shared between criteria.
struct ModelRun {
    std::string name;
    int n = 1;
    WaveKind kind = WaveKind::Custom;
    std::string error;
    int conjugate = -1;
    std::vector<CrossingEvent> conjugate_points;
    double lagrangian_residual = 0.0;
    int conjugate_2L = -1;
    int left = -1, top = -1, right = -1, bottom = -1, net = 0;
    bool consistent = false;
    std::vector<int> left_dirs, top_dirs;
    int oracle = -1;
    int winding = -1;
    int rounds = 0;
    int prufer_mismatch = 0;  // n = 1 only
    double prufer_worst = 0.0;
};

ModelRun run_model(const WaveModel& m) {
    ModelRun r;
    r.name = m.name;
    r.n = m.n;
    r.kind = m.kind;
    const FlowOptions o;
    const double ls = o.epsilon_shift;
    try {
        const ConjugateScan scan = scan_conjugate_points(m, ls, o);
        r.conjugate_points = scan.events;
        r.conjugate = total(scan.events);
        r.lagrangian_residual = scan.path.max_lagrangian_residual;

        FlowOptions o2 = o;
        o2.truncation = 2.0 * resolve_truncation(m, o);
        const ConjugateScan scan2 = scan_conjugate_points(m, ls, o2);
        r.conjugate_2L = total(scan2.events);
        r.lagrangian_residual = std::max(r.lagrangian_residual, scan2.path.max_lagrangian_residual);

        const SquareReport sq = maslov_square(m, ls, o);
        r.left = total(sq.left_events);
        r.top = total(sq.top_events);
        r.right = total(sq.right_events);
        r.bottom = total(sq.bottom_events);
        r.net = sq.net_index;
        r.consistent = sq.consistent;
        for (const auto& e : sq.left_events) r.left_dirs.push_back(e.direction);
        for (const auto& e : sq.top_events) r.top_dirs.push_back(e.direction);

        const WindingResult w = winding_number(m, enclosing_contour(m, o), o);
        r.winding = w.winding;
        r.rounds = w.refinement_rounds;

        r.oracle = oracle_count_above(m, resolve_truncation(m, o), 0.01, ls);

        if (m.n == 1) {
            const double L = resolve_truncation(m, o);
            const ScalarProblem p([q = m.potential](double x) { return q(x)(0, 0); }, -L, L);
            const std::vector<double> pr = conjugate_points(p, ls);
            if (pr.size() != scan.events.size()) {
                r.prufer_mismatch = 1;
            } else {
                for (std::size_t k = 0; k < pr.size(); ++k)
                    r.prufer_worst = std::max(r.prufer_worst, std::abs(pr[k] - scan.events[k].param));
            }
        }
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

int main() {
    std::cout << "acceptance suite" << std::endl;

    // 1. Sturm-Liouville exactness.
    {
        const auto t0 = Clock::now();
        const std::vector<double> ev = find_eigenvalues(ScalarProblem([](double) { return 0.0; }, 0.0, kPi), 3);
        const double dt = seconds_since(t0);
        double worst = 0.0;
        const double exact[3] = {-1.0, -4.0, -9.0};
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(ev[static_cast<std::size_t>(k)] - exact[k]));
        report(1, "Sturm-Liouville exactness", ev.size() == 3 && worst < 1e-8 && dt < 1.0,
               "max error " + fmt(worst) + " (< 1e-8), " + fmt(dt) + " s (< 1 s)");
    }

    std::cout << "building the 50-model randomized suite..." << std::endl;
    std::vector<WaveModel> builtins;
    for (const auto& name : builtin_names()) builtins.push_back(builtin(name));
    const std::vector<WaveModel> suite = randomized_suite();

    // 2. Pulse instability, timed on the conjugate-point count alone.
    {
        const auto t0 = Clock::now();
        const FlowOptions o;
        const int sech = count_unstable_eigenvalues(builtin("scalar_sech_pulse"), o).conjugate_count;
        int pulses = 0, unstable_pulses = 0;
        std::string bad;
        for (const WaveModel& m : suite) {
            const int c = count_unstable_eigenvalues(m, o).conjugate_count;
            if (m.kind != WaveKind::Pulse) continue;
            ++pulses;
            if (c >= 1) ++unstable_pulses;
            else bad += " " + m.name;
        }
        const double dt = seconds_since(t0);
        report(2, "Pulse instability", sech == 1 && pulses == unstable_pulses && pulses > 0 && dt < 60.0,
               "scalar_sech_pulse count " + std::to_string(sech) + ", " + std::to_string(unstable_pulses) + "/" +
                   std::to_string(pulses) + " suite pulses with count >= 1" + bad + ", " + fmt(dt) +
                   " s for 51 counts (< 60 s)");
    }

    // 3. Poeschl-Teller spectrum.
    {
        const std::vector<double> ev = oracle_eigenvalues(discretize(builtin("scalar_sech_pulse"), 40.0, 0.01));
        const double e0 = std::abs(ev[0] - 1.25), e1 = std::abs(ev[1]), e2 = std::abs(ev[2] + 0.75);
        report(3, "Poeschl-Teller spectrum", e0 < 1e-3 && e1 < 1e-3 && e2 < 1e-3,
               "top three " + fmt(ev[0]) + ", " + fmt(ev[1]) + ", " + fmt(ev[2]) + " (errors " + fmt(e0) + ", " +
                   fmt(e1) + ", " + fmt(e2) + " < 1e-3)");
    }

    std::cout << "running square, winding and oracle on " << builtins.size() + suite.size() << " models..."
              << std::endl;
    std::vector<const WaveModel*> all;
    for (const auto& m : builtins) all.push_back(&m);
    for (const auto& m : suite) all.push_back(&m);
    std::vector<ModelRun> runs;
    const auto t_runs = Clock::now();
    for (const WaveModel* m : all) {
        runs.push_back(run_model(*m));
        const ModelRun& r = runs.back();
        std::cout << "  " << r.name << ": ";
        if (!r.error.empty()) std::cout << "ERROR " << r.error;
        else
            std::cout << "conjugate=" << r.conjugate << " left=" << r.left << " top=" << r.top << " right=" << r.right
                      << " bottom=" << r.bottom << " net=" << r.net << " winding=" << r.winding
                      << " rounds=" << r.rounds << " oracle=" << r.oracle;
        std::cout << std::endl;
    }
    std::cout << "  (" << fmt(seconds_since(t_runs)) << " s)" << std::endl;

    // 4. Square identity.
    {
        int ok = 0;
        std::string bad;
        for (const auto& r : runs) {
            const bool good = r.error.empty() && r.left == r.top && r.top == r.oracle && r.net == 0 && r.consistent;
            if (good) ++ok;
            else bad += " " + r.name;
        }
        report(4, "Square identity", ok == static_cast<int>(runs.size()),
               std::to_string(ok) + "/" + std::to_string(runs.size()) + " models with left == top == oracle and net 0" +
                   bad);
    }

    // 5. Monotonicity.
    {
        int left_sign = 0, top_sign = 0;
        bool ok = true;
        for (const auto& r : runs) {
            if (!r.error.empty()) ok = false;
            for (int d : r.left_dirs) {
                if (left_sign == 0) left_sign = d;
                ok = ok && d == left_sign;
            }
            for (int d : r.top_dirs) {
                if (top_sign == 0) top_sign = d;
                ok = ok && d == top_sign;
            }
        }
        ok = ok && left_sign != 0 && top_sign == -left_sign;
        report(5, "Monotonicity", ok,
               "left-edge direction " + std::to_string(left_sign) + ", top-edge direction " + std::to_string(top_sign) +
                   " in every run");
    }

    // 6. Evans agreement.
    {
        int ok = 0, worst_rounds = 0;
        std::string bad;
        for (const auto& r : runs) {
            worst_rounds = std::max(worst_rounds, r.rounds);
            if (r.error.empty() && r.winding == r.conjugate && r.rounds <= 3) ++ok;
            else bad += " " + r.name;
        }
        report(6, "Evans agreement", ok == static_cast<int>(runs.size()),
               std::to_string(ok) + "/" + std::to_string(runs.size()) +
                   " models with winding == conjugate count, max refinement rounds " + std::to_string(worst_rounds) +
                   " (<= 3)" + bad);
    }

    // 7. Front marginality.
    {
        const WaveModel f = builtin("allen_cahn_front");
        const int c = count_unstable_eigenvalues(f, FlowOptions{}).conjugate_count;
        const double top = oracle_eigenvalues(discretize(f, resolve_truncation(f, FlowOptions{}), 0.01))[0];
        report(7, "Front marginality", c == 0 && std::abs(top) < 1e-3,
               "unstable count " + std::to_string(c) + ", oracle top eigenvalue " + fmt(top) + " (|.| < 1e-3)");
    }

    // 8. Scalar cross-check.
    {
        int scalar = 0, ok = 0;
        double worst = 0.0;
        for (const auto& r : runs) {
            if (r.n != 1) continue;
            ++scalar;
            worst = std::max(worst, r.prufer_worst);
            if (r.error.empty() && r.prufer_mismatch == 0 && r.prufer_worst < 1e-6) ++ok;
        }
        report(8, "Scalar cross-check", ok == scalar && scalar > 0,
               std::to_string(ok) + "/" + std::to_string(scalar) +
                   " scalar models with matching conjugate points, max deviation " + fmt(worst) + " (< 1e-6)");
    }

    // 9. Radial dichotomy.
    {
        bool exps = true;
        for (int l = 0; l <= 10; ++l) {
            const auto e = mode_exponents(3, l);
            exps = exps && e.first == l && e.second == -(l + 1);
        }
        double worst = 0.0;
        for (int l = 1; l <= 4; ++l) {
            const DichotomyProjection p = dichotomy(3, l);
            worst = std::max(worst, std::abs(evolve_mode(3, l, p.unstable_direction, 0.0, 10.0).fitted_rate - l));
            worst = std::max(worst, std::abs(evolve_mode(3, l, p.stable_direction, 0.0, 10.0).fitted_rate + (l + 1)));
            worst = std::max(worst, std::abs(evolve_mode(3, l, Eigen::Vector2d(0.3, -1.7), 0.0, 10.0).fitted_rate - l));
        }
        const std::vector<int> cyl = cylinder_spectrum(5);
        bool cyl_ok = cyl.size() == 11;
        for (int k = -5; k <= 5 && cyl_ok; ++k) cyl_ok = cyl[static_cast<std::size_t>(k + 5)] == k;
        report(9, "Radial dichotomy", exps && worst < 1e-3 && cyl_ok,
               std::string("exponents {l, -(l+1)} for l <= 10 ") + (exps ? "exact" : "WRONG") +
                   ", worst fitted-rate error " + fmt(worst) + " (< 1e-3), cylinder spectrum " +
                   (cyl_ok ? "-5..5" : "WRONG"));
    }

    // 10. Numerical hygiene.
    {
        double worst = 0.0;
        int l_changes = 0;
        std::string bad;
        for (const auto& r : runs) {
            worst = std::max(worst, r.lagrangian_residual);
            if (!r.error.empty() || r.conjugate_2L != r.conjugate) {
                ++l_changes;
                bad += " " + r.name;
            }
        }
        // Halving h for the oracle, and doubling L for it, on the builtins.
        int h_changes = 0;
        for (const WaveModel& m : builtins) {
            const double L = resolve_truncation(m, FlowOptions{});
            const int base = oracle_count_above(m, L, 0.01, 1e-3);
            if (oracle_count_above(m, L, 0.005, 1e-3) != base) {
                ++h_changes;
                bad += " " + m.name + "(h/2)";
            }
            if (oracle_count_above(m, 2 * L, 0.01, 1e-3) != base) {
                ++h_changes;
                bad += " " + m.name + "(2L oracle)";
            }
        }
        report(10, "Numerical hygiene", worst < 1e-8 && l_changes == 0 && h_changes == 0,
               "max Lagrangian residual " + fmt(worst) + " (< 1e-8); doubling L changed " + std::to_string(l_changes) +
                   " conjugate counts over " + std::to_string(runs.size()) + " models; halving h / doubling L changed " +
                   std::to_string(h_changes) + " oracle counts on the builtins" + bad);
    }

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
