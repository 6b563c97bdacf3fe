// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: qshift_acceptance [path-to-qshift-binary]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cli.hpp"
#include "qshift/qshift.hpp"

using namespace qshift;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit; // seconds; <= 0 means no limit
    std::function<Outcome()> body;
};

std::string num(double v) { return format_real(v); }

std::vector<std::vector<std::string>> csv_cells(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) row.push_back(f);
        rows.push_back(row);
    }
    return rows;
}

Outcome deformed_identity() {
    using Big = boost::multiprecision::cpp_bin_float_50;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> du(-30.0, 30.0);
    std::uniform_real_distribution<double> dlq(-3.0, 3.0);
    double worst = 0.0;
    double worst_big = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = du(rng);
        const double q = std::pow(10.0, dlq(rng));
        const double rq = std::sqrt(q);
        const double v = u - 0.5 * std::log(q);
        const double sh = rq * std::sinh(v);
        const double ch = rq * std::cosh(v);
        const double scale_s = 1.0 + std::abs(sh);
        const double scale_c = 1.0 + std::abs(ch);
        worst = std::max(worst, std::abs(sinh_q(u, q) - sh) / scale_s);
        worst = std::max(worst, std::abs(cosh_q(u, q) - ch) / scale_c);
        if (i % 10 == 0) {
            // exact right-hand side on every tenth sample
            const Big bq(q);
            const Big bv = Big(u) - log(bq) / 2;
            const Big bs = sqrt(bq) * sinh(bv);
            const Big bc = sqrt(bq) * cosh(bv);
            worst_big = std::max(worst_big, static_cast<double>(abs(Big(sinh_q(u, q)) - bs)) / scale_s);
            worst_big = std::max(worst_big, static_cast<double>(abs(Big(cosh_q(u, q)) - bc)) / scale_c);
        }
    }
    return {worst <= 1e-13 && worst_big <= 1e-13,
            "max scaled deviation " + num(worst) + " (double), " + num(worst_big) + " (50-digit)"};
}

Outcome potential_mapping() {
    const std::vector<PotentialSpec> suite{
        RosenMorseQ{1, 10, 1, 0.25},        RosenMorseQ{1, 10, 1, 1},         RosenMorseQ{-2, 7, 0.7, 4},
        RosenMorseQ{0.5, 3, 1.5, 25},       ShiftedTanhQ{2, 4, 1, 0.25},      ShiftedTanhQ{-1, 6, 2, 4},
        ShiftedTanhQ{3, 20, 0.8, 25},       FiveParamSuper{0, 2, 0, 1, 1},    FiveParamSuper{0.5, 3, 1, 1, 4},
        FiveParamSuper{-1, 0.7, 2, 1.3, 25}, GeneralizedMorse{81, 27, 1},     GeneralizedMorse{2, 40, 0.8},
    };
    double worst = 0.0;
    for (const auto& s : suite) {
        worst = std::max(worst, pointwise_residual(s, canonicalize(s), 2001, 20.0 / alpha_of(s)));
    }
    return {worst <= kPotentialResidualTol, "12 specs, max residual " + num(worst)};
}

Outcome spectrum_equivalence() {
    const auto table = q_invariance_sweep(RosenMorseQ{1, 10, 1, 1}, {0.5, 1, 2, 4, 10}, SolverConfig{});
    double spread = 0.0;
    double max_err = 0.0;
    std::size_t levels = table.rows.empty() ? 0 : table.rows.front().levels.size();
    bool counts = table.groups.size() == 1 && levels > 0;
    for (const auto& row : table.rows) {
        counts = counts && row.levels.size() == levels;
        for (const auto& l : row.levels) max_err = std::max(max_err, l.err);
    }
    for (const auto& g : table.groups) {
        for (double s : g.spread) spread = std::max(spread, s);
    }
    return {counts && spread <= 1e-8 && max_err <= 1e-8,
            std::to_string(levels) + " levels x 5 q values, max spread " + num(spread) + ", max err " + num(max_err)};
}

Outcome morse_collapse_check() {
    const auto table = morse_collapse({{9, 9}, {81, 27}, {729, 81}}, 1.0, SolverConfig{});
    bool ok = table.groups.size() == 1 && table.pass();
    double spread = 0.0;
    double worst = 0.0;
    for (const auto& row : table.rows) {
        ok = ok && row.levels.size() == 1;
        if (!row.levels.empty()) worst = std::max(worst, std::abs(row.levels[0].E + 1.0));
    }
    for (double s : table.groups.front().spread) spread = std::max(spread, s);
    // independent check: the textbook closed form -(sqrt(A)/2 - alpha/2)^2 at A = 9
    const double textbook = -std::pow(std::sqrt(9.0) / 2 - 0.5, 2);
    const Spectrum direct = solve_bound_states(GeneralizedMorse{9, 9, 1}, SolverConfig{});
    ok = ok && direct.levels.size() == 1 && std::abs(direct.levels[0].E - textbook) <= 1e-6;
    return {ok && spread <= 1e-8 && worst <= 1e-6,
            "spread " + num(spread) + ", max |E0 + 1| " + num(worst)};
}

Outcome analytic_pinning() {
    const PinRecord rec = pin_formula(SolverConfig{});
    bool ok = rec.selected == kPinnedInterpretation;
    double pin_dev = 0.0;
    for (const auto& c : rec.candidates) {
        if (c.interp == rec.selected) pin_dev = c.level_deviation;
    }
    ok = ok && pin_dev <= 1e-6;

    // anchors
    ok = ok && analytic_spectrum(RosenMorseQ{0, 2, 1, 1}).levels.size() == 1 &&
         analytic_spectrum(RosenMorseQ{0, 2, 1, 1}).levels[0].E == -1.0;
    const Spectrum pt2 = analytic_spectrum(RosenMorseQ{0, 6, 1, 1});
    ok = ok && pt2.levels.size() == 2 && pt2.levels[0].E == -4.0 && pt2.levels[1].E == -1.0;

    // the last entry sits 0.03 below threshold, so its tail needs a wider window
    const std::vector<std::vector<std::string>> suite{
        {"rosen_morse_q B0=0 U0=2 alpha=1"},       {"rosen_morse_q B0=0 U0=6 alpha=1"},
        {"rosen_morse_q B0=1 U0=6 alpha=1"},       {"rosen_morse_q B0=1 U0=6 alpha=1.4142135623730951"},
        {"rosen_morse_q B0=1 U0=10 alpha=1 q=4"},  {"rosen_morse_q B0=1 U0=10 alpha=1 q=0.5"},
        {"rosen_morse_q B0=-0.5 U0=12 alpha=0.8"}, {"rosen_morse_q B0=0.7 U0=40 alpha=1.3 q=2.5"},
        {"rosen_morse_q B0=2 U0=9 alpha=0.5 q=0.3"},
        {"rosen_morse_q B0=0.3 U0=1.2 alpha=2", "--half-width", "300", "--grid-points", "60001"},
    };
    double worst = 0.0;
    int rows = 0;
    for (const auto& entry : suite) {
        const std::string& spec = entry.front();
        std::vector<std::string> args{"qshift", "spectrum", "--spec", spec, "--both"};
        args.insert(args.end(), entry.begin() + 1, entry.end());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        if (code != 0) return {false, "spectrum --both exited " + std::to_string(code) + " for " + spec};
        for (const auto& row : csv_cells(out.str())) {
            const double ea = parse_real(row.at(1) == "nan" ? "inf" : row.at(1));
            const double en = parse_real(row.at(2) == "nan" ? "inf" : row.at(2));
            const double rel = std::abs(ea - en) / std::abs(ea);
            worst = std::max(worst, std::isfinite(rel) ? rel : INFINITY);
            ++rows;
        }
    }
    return {ok && worst <= 1e-6, "selected " + std::string(to_string(rec.selected.sign)) + "/g^" +
                                     std::to_string(g_exponent(rec.selected.g_scale)) + "/" +
                                     std::string(to_string(rec.selected.exponent)) + " (dev " + num(pin_dev) +
                                     "); " + std::to_string(rows) + " levels over " + std::to_string(suite.size()) +
                                     " specs, max rel diff " + num(worst)};
}

Outcome eigenfunction_covariance() {
    double worst = 0.0;
    bool a_ne_b = true;
    bool prefactor_moved = true;
    for (int n : {0, 1}) {
        const WavefunctionForm f = build_wavefunction(n, 1.0, 6.0, 1.0);
        a_ne_b = a_ne_b && std::abs(f.a - f.b) > 0.1;
        for (double q : {0.5, 4.0}) {
            // plain form and its deformed counterpart both obey the translation law
            for (const WavefunctionForm& src : {f, deform_wavefunction(f, q)}) {
                const WavefunctionForm t = translate_wavefunction(src, q);
                prefactor_moved = prefactor_moved && t.prefactor != src.prefactor;
                const double shift = std::log(std::sqrt(q)) / src.alpha;
                for (int i = 0; i < 200; ++i) {
                    const double y = -10.0 + 20.0 * i / 199.0;
                    const double want = eval_wavefunction(src, y + shift);
                    worst = std::max(worst, std::abs(eval_wavefunction(t, y) - want) / std::abs(want));
                }
            }
        }
    }
    return {a_ne_b && prefactor_moved && worst <= 1e-12, "max rel deviation " + num(worst) + " over 1600 points"};
}

Outcome eigenfunction_correctness() {
    const PotentialSpec spec = RosenMorseQ{1, 6, 1, 1};
    const BoundStates states = solve_bound_states_detailed(spec, SolverConfig{});
    const Spectrum closed = analytic_spectrum(std::get<RosenMorseQ>(spec));
    if (states.spectrum.levels.size() < 2 || closed.levels.size() < 2) return {false, "fewer than two levels"};
    auto v = [&spec](double x) { return eval_potential(spec, x); };
    const Grid& grid = states.grid;
    double worst_res = 0.0;
    double worst_ov = 1.0;
    for (int n : {0, 1}) {
        const WavefunctionForm f = build_wavefunction(n, 1.0, 6.0, 1.0);
        std::vector<double> all(grid.n_points());
        for (int i = 0; i < grid.n_points(); ++i) all[i] = eval_wavefunction(f, grid.x(i));
        const double E = closed.levels[n].E;
        worst_res = std::max(worst_res, schrodinger_residual(v, grid, all, E) / std::abs(E));
        const std::vector<double> interior(all.begin() + 1, all.end() - 1);
        worst_ov = std::min(worst_ov, overlap(interior, states.vectors[n]));
    }
    return {worst_res <= 1e-6 && worst_ov >= kOverlapTol,
            "max residual/|E| " + num(worst_res) + ", min overlap " + num(worst_ov)};
}

Outcome oracle_self_validation() {
    auto box_levels = [](int n_points, double& worst_residual) {
        const TridiagonalOperator op = discretize([](double) { return 0.0; }, Grid(0.0, std::numbers::pi, n_points));
        const auto pairs = eigen_below(op, 10.5);
        std::vector<double> e;
        for (const auto& p : pairs) {
            e.push_back(p.value);
            worst_residual = std::max(worst_residual, eigen_residual(op, p.value, p.vector));
        }
        return e;
    };
    double worst_residual = 0.0;
    const int n = 1001;
    const auto coarse = box_levels(n, worst_residual);
    const auto fine = box_levels(2 * n - 1, worst_residual);
    if (coarse.size() != 3 || fine.size() != 3) return {false, "expected 3 box levels below 10.5"};
    const double h = std::numbers::pi / (n - 1);
    bool ok = true;
    double min_ratio = INFINITY;
    for (int k = 1; k <= 3; ++k) {
        const double e1 = std::abs(coarse[k - 1] - k * k);
        const double e2 = std::abs(fine[k - 1] - k * k);
        ok = ok && e1 <= 1.01 * std::pow(k, 4) * h * h / 12.0;
        min_ratio = std::min(min_ratio, e1 / e2);
    }
    return {ok && min_ratio >= 3.8 && worst_residual <= kEigenResidualTol,
            "levels " + num(coarse[0]) + ", " + num(coarse[1]) + ", " + num(coarse[2]) + "; min error ratio " +
                num(min_ratio) + "; max residual " + num(worst_residual)};
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    if (status != 0) out = "<exit status " + std::to_string(status) + ">";
    return out;
}

Outcome determinism(const std::string& binary) {
    const std::string spec = "rosen_morse_q B0=1 U0=10 alpha=1 q=4";
    std::string first;
    std::string second;
    if (!binary.empty()) {
        const std::string cmd = "'" + binary + "' verify --spec '" + spec + "' --format json";
        first = capture(cmd);
        second = capture(cmd);
    } else {
        for (std::string* dst : {&first, &second}) {
            std::ostringstream out;
            std::ostringstream err;
            cli::run({"qshift", "verify", "--spec", spec, "--format", "json"}, out, err);
            *dst = out.str();
        }
    }
    const bool same = !first.empty() && first.front() == '{' && first == second;
    return {same, std::to_string(first.size()) + " bytes, " + (same ? "identical" : "different") +
                      (binary.empty() ? " (in-process)" : " (two processes)")};
}

} // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "";
    const std::vector<Criterion> criteria{
        {1, "deformed-function identity", 1.0, deformed_identity},
        {2, "potential-mapping identity", 1.0, potential_mapping},
        {3, "spectrum equivalence under q", 30.0, spectrum_equivalence},
        {4, "Morse collapse", 10.0, morse_collapse_check},
        {5, "analytic spectrum pinning", 30.0, analytic_pinning},
        {6, "eigenfunction covariance", 1.0, eigenfunction_covariance},
        {7, "eigenfunction correctness", 10.0, eigenfunction_correctness},
        {8, "oracle self-validation", 10.0, oracle_self_validation},
        {9, "report determinism", 0.0, [&binary] { return determinism(binary); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit <= 0.0 || seconds < c.time_limit;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs", seconds);
        std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << "  (" << timing
                  << (c.time_limit > 0.0 ? " / limit " + num(c.time_limit) + "s" : std::string()) << ")  "
                  << o.detail << (in_time ? "" : "  [over time limit]") << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
