#include "qshift/verification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qshift/error.hpp"
#include "qshift/format.hpp"

namespace qshift {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PinCase {
    RosenMorseQ spec;
    BoundStates oracle;
};

std::vector<double> sample_nodes(const WavefunctionForm& form, const Grid& grid) {
    std::vector<double> psi(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) psi[i] = eval_wavefunction(form, grid.x(i));
    return psi;
}

std::vector<double> sample_interior(const WavefunctionForm& form, const Grid& grid) {
    std::vector<double> psi(grid.interior_size());
    for (int k = 0; k < grid.interior_size(); ++k) psi[k] = eval_wavefunction(form, grid.interior_x(k));
    return psi;
}

CandidateRow score_candidate(const Interpretation& interp, const std::vector<PinCase>& cases) {
    CandidateRow row{interp, true, 0.0, 0.0, false};
    for (const PinCase& c : cases) {
        const std::vector<Level>& oracle = c.oracle.spectrum.levels;
        const Spectrum closed = analytic_spectrum(c.spec, interp);
        if (closed.levels.size() != oracle.size()) row.counts_agree = false;
        const std::size_t common = std::min(closed.levels.size(), oracle.size());
        if (common == 0) {
            row.level_deviation = kInf;
            row.residual = kInf;
        }
        auto v = [&c](double x) { return eval_potential(c.spec, x); };
        for (std::size_t n = 0; n < common; ++n) {
            const double E = closed.levels[n].E;
            row.level_deviation =
                std::max(row.level_deviation, std::abs(E - oracle[n].E) / std::abs(oracle[n].E));
            try {
                const WavefunctionForm form =
                    build_wavefunction(static_cast<int>(n), c.spec.B0, c.spec.U0, c.spec.alpha, interp);
                const std::vector<double> psi = sample_nodes(form, c.oracle.grid);
                const double r = schrodinger_residual(v, c.oracle.grid, psi, E) / std::abs(E);
                row.residual = std::max(row.residual, std::isnan(r) ? kInf : r);
            } catch (const Error&) {
                row.residual = kInf;
            }
        }
    }
    row.matches = row.counts_agree && row.level_deviation <= kPinLevelTol && row.residual <= kPinResidualTol;
    return row;
}

std::string candidate_label(const Interpretation& interp) {
    std::ostringstream os;
    os << "sign=" << to_string(interp.sign) << " g_exponent=" << g_exponent(interp.g_scale)
       << " exponent=" << to_string(interp.exponent);
    return os.str();
}

Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json real_or_null(const std::optional<double>& v) { return v ? real_or_null(*v) : Json(nullptr); }

std::string csv_real(const std::optional<double>& v) { return v ? format_real(*v) : "nan"; }

Json pin_json(const PinRecord& record) {
    Json j;
    j["sign_mode"] = to_string(record.selected.sign);
    j["g_exponent"] = g_exponent(record.selected.g_scale);
    j["exponent_sign"] = to_string(record.selected.exponent);
    Json rows = Json::array();
    for (const CandidateRow& c : record.candidates) {
        Json r;
        r["sign_mode"] = to_string(c.interp.sign);
        r["g_exponent"] = g_exponent(c.interp.g_scale);
        r["exponent_sign"] = to_string(c.interp.exponent);
        r["counts_agree"] = c.counts_agree;
        r["level_deviation"] = real_or_null(c.level_deviation);
        r["residual"] = real_or_null(c.residual);
        r["matches"] = c.matches;
        rows.push_back(std::move(r));
    }
    j["candidates"] = std::move(rows);
    return j;
}

// Partner potential V_- = W^2 - W' of a superpotential, solved like any other well.
BoundStates solve_partner(const PotentialSpec& spec, const SolverConfig& config) {
    const auto& s = std::get<FiveParamSuper>(spec);
    const double left = std::pow(s.Q1 + s.Q2 / s.q, 2);
    const double right = s.Q1 * s.Q1;
    const double threshold = std::min(left, right);
    auto v = [&spec](double x) { return partner_potentials(spec, x).minus; };

    const double half_width = config.half_width_factor / s.alpha;
    const double span = 40.0 / s.alpha;
    constexpr int kScan = 4001;
    const double step = 2.0 * span / (kScan - 1);
    int best = 0;
    double best_v = kInf;
    for (int i = 0; i < kScan; ++i) {
        const double value = v(-span + i * step);
        if (value < best_v) {
            best_v = value;
            best = i;
        }
    }
    const double coarse = -span + best * step;
    if (best == 0 || best == kScan - 1 || !(best_v < threshold)) {
        BoundStates empty{Spectrum{{}, threshold, SpectrumSource::numeric},
                          Grid(-half_width, half_width, config.n_points), {}, {}};
        empty.diagnostics.push_back("partner potential has no well below its threshold; no bound states");
        return empty;
    }
    const double center = golden_section_minimize(v, coarse - step, coarse + step, 1e-10 / s.alpha);
    return solve_bound_states_detailed(v, center, half_width, threshold, config);
}

BoundStates solve_any(const PotentialSpec& spec, const SolverConfig& config) {
    if (std::holds_alternative<FiveParamSuper>(spec)) return solve_partner(spec, config);
    return solve_bound_states_detailed(spec, config);
}

void fill_group(SweepGroup& group, const std::vector<SweepRow>& rows, std::vector<std::string>& warnings) {
    group.pass = true;
    std::size_t levels = rows[group.rows.front()].levels.size();
    for (std::size_t r : group.rows) {
        if (rows[r].levels.size() != levels) {
            group.pass = false;
            warnings.push_back("bound-state count differs within group " +
                               format_real(group.effective_parameter));
            levels = std::min(levels, rows[r].levels.size());
        }
    }
    if (levels == 0) {
        warnings.push_back("group " + format_real(group.effective_parameter) +
                           " has no bound states; flat by vacuity");
    }
    for (std::size_t n = 0; n < levels; ++n) {
        double lo = kInf;
        double hi = -kInf;
        double max_err = 0.0;
        for (std::size_t r : group.rows) {
            const Level& level = rows[r].levels[n];
            lo = std::min(lo, level.E);
            hi = std::max(hi, level.E);
            max_err = std::max(max_err, level.err);
        }
        const double spread = hi - lo;
        const double tol = 2.0 * max_err + kSpectrumFloor;
        group.spread.push_back(spread);
        group.tolerance.push_back(tol);
        if (!(spread <= tol)) group.pass = false;
    }
}

std::vector<std::vector<Level>> solve_all(const std::vector<PotentialSpec>& specs, const SolverConfig& config) {
    std::vector<std::future<Spectrum>> jobs;
    jobs.reserve(specs.size());
    for (const PotentialSpec& spec : specs) {
        jobs.push_back(std::async(std::launch::async, [spec, config] { return solve_bound_states(spec, config); }));
    }
    std::vector<std::vector<Level>> out;
    out.reserve(jobs.size());
    for (auto& job : jobs) out.push_back(job.get().levels);
    return out;
}

} // namespace

PinRecord pin_formula(const SolverConfig& config) {
    std::vector<PinCase> cases;
    for (double alpha : {1.0, std::numbers::sqrt2}) {
        const RosenMorseQ spec{1.0, 6.0, alpha, 1.0};
        cases.push_back({spec, solve_bound_states_detailed(spec, config)});
    }

    PinRecord record{};
    for (SignMode sign : {SignMode::paper_plus, SignMode::pinned_minus}) {
        for (GScale scale : {GScale::printed, GScale::sqrt_g}) {
            for (ExponentSign exponent : {ExponentSign::printed, ExponentSign::flipped}) {
                record.candidates.push_back(score_candidate({sign, scale, exponent}, cases));
            }
        }
    }

    const CandidateRow* best = nullptr;
    for (const CandidateRow& row : record.candidates) {
        if (!row.matches) continue;
        if (best == nullptr || std::tie(row.level_deviation, row.residual) <
                                   std::tie(best->level_deviation, best->residual)) {
            best = &row;
        }
    }
    if (best == nullptr) {
        std::ostringstream os;
        os << "no reading of the closed-form spectrum matches the oracle:";
        for (const CandidateRow& row : record.candidates) {
            os << "\n  " << candidate_label(row.interp) << " counts_agree=" << (row.counts_agree ? "yes" : "no")
               << " level_deviation=" << format_real(row.level_deviation)
               << " residual=" << format_real(row.residual);
        }
        throw PinningError(os.str());
    }
    record.selected = best->interp;
    return record;
}

bool VerificationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool SweepTable::pass() const {
    return std::all_of(groups.begin(), groups.end(), [](const SweepGroup& g) { return g.pass; });
}

VerificationReport verify_equivalence(const PotentialSpec& spec, const SolverConfig& config) {
    return verify_equivalence(spec, config, pin_formula(config));
}

VerificationReport verify_equivalence(const PotentialSpec& spec, const SolverConfig& config,
                                      const PinRecord& pinned) {
    validate(spec);
    validate(config);
    VerificationReport report{spec, canonicalize(spec), 0.0, {}, {}, pinned, {}, {}};
    const double alpha = alpha_of(spec);

    report.potential_residual = pointwise_residual(spec, report.canonical, 2001, 20.0 / alpha);
    report.checks.push_back({"potential_residual", report.potential_residual <= kPotentialResidualTol,
                             report.potential_residual, kPotentialResidualTol});

    std::optional<BoundStates> deformed_states;
    std::optional<BoundStates> plain_states;
    try {
        auto job = std::async(std::launch::async, [&] { return solve_any(spec, config); });
        plain_states = solve_any(report.canonical.plain_spec, config);
        deformed_states = job.get();
    } catch (const Error& e) {
        throw ConvergenceError("solving " + to_string(spec) + ": " + e.what());
    }
    const BoundStates& deformed = *deformed_states;
    const BoundStates& plain = *plain_states;
    for (const auto* states : {&deformed, &plain}) {
        for (const std::string& d : states->diagnostics) report.warnings.push_back(d);
    }

    const auto* rm = std::get_if<RosenMorseQ>(&spec);
    std::optional<Spectrum> closed;
    if (rm != nullptr) closed = analytic_spectrum(*rm, pinned.selected);

    const std::size_t nd = deformed.spectrum.levels.size();
    const std::size_t np = plain.spectrum.levels.size();
    double count_mismatch = std::abs(static_cast<double>(nd) - static_cast<double>(np));
    if (closed) {
        count_mismatch += std::abs(static_cast<double>(closed->levels.size()) - static_cast<double>(np));
    }
    report.checks.push_back({"level_count", count_mismatch == 0.0, count_mismatch, 0.0});
    if (nd == 0 && np == 0) report.warnings.push_back("no bound states; spectrum checks pass vacuously");

    double worst_ratio = 0.0;
    double worst_analytic = 0.0;
    for (std::size_t n = 0; n < std::min(nd, np); ++n) {
        const Level& d = deformed.spectrum.levels[n];
        const Level& p = plain.spectrum.levels[n];
        LevelRow row{static_cast<int>(n), d.E, p.E, std::nullopt, std::abs(d.E - p.E),
                     d.err + p.err + kSpectrumFloor, std::nullopt, d.err, p.err};
        if (closed && n < closed->levels.size()) {
            const double ea = closed->levels[n].E;
            row.E_analytic = ea;
            row.delta_analytic = std::abs(p.E - ea) / std::abs(ea);
            worst_analytic = std::max(worst_analytic, *row.delta_analytic);
        }
        worst_ratio = std::max(worst_ratio, row.delta_numeric / row.tol_numeric);
        report.levels.push_back(row);
    }
    report.checks.push_back({"spectrum_equivalence", worst_ratio <= 1.0, worst_ratio, 1.0});

    if (rm != nullptr) {
        report.checks.push_back(
            {"analytic_agreement", worst_analytic <= kAnalyticRelTol, worst_analytic, kAnalyticRelTol});

        const auto& base = std::get<RosenMorseQ>(report.canonical.plain_spec);
        double worst_overlap = 1.0;
        for (std::size_t n = 0; n < nd; ++n) {
            double value = 0.0;
            try {
                const WavefunctionForm form =
                    deform_wavefunction(build_wavefunction(static_cast<int>(n), base.B0, base.U0, base.alpha,
                                                           pinned.selected),
                                        rm->q);
                value = overlap(sample_interior(form, deformed.grid), deformed.vectors[n]);
            } catch (const Error& e) {
                report.warnings.push_back("closed-form wavefunction " + std::to_string(n) + ": " + e.what());
            }
            report.overlaps.push_back({static_cast<int>(n), value});
            worst_overlap = std::min(worst_overlap, value);
        }
        report.checks.push_back(
            {"wavefunction_overlap", worst_overlap >= kOverlapTol, worst_overlap, kOverlapTol});
    }
    return report;
}

SweepTable q_invariance_sweep(const RosenMorseQ& base, const std::vector<double>& q_values,
                              const SolverConfig& config) {
    validate(base);
    validate(config);
    if (q_values.empty()) throw DomainError("q sweep needs at least one q value");
    std::vector<PotentialSpec> specs;
    for (double q : q_values) specs.push_back(equivalent_family(base, q));

    SweepTable table{"q", {}, {}, {}};
    const auto levels = solve_all(specs, config);
    SweepGroup group{base.U0 / base.q, {}, {}, {}, true};
    for (std::size_t i = 0; i < specs.size(); ++i) {
        table.rows.push_back({q_values[i], specs[i], levels[i]});
        group.rows.push_back(i);
    }
    fill_group(group, table.rows, table.warnings);
    table.groups.push_back(std::move(group));
    return table;
}

SweepTable morse_collapse(const std::vector<std::pair<double, double>>& pairs, double alpha,
                          const SolverConfig& config) {
    validate(config);
    if (pairs.empty()) throw DomainError("morse collapse needs at least one (V1, V2) pair");
    std::vector<PotentialSpec> specs;
    for (auto [v1, v2] : pairs) {
        if (!(v1 > 0.0) || !(v2 > 0.0)) {
            throw DomainError("morse pairs need V1 > 0 and V2 > 0, got (" + format_real(v1) + ", " +
                              format_real(v2) + ")");
        }
        specs.push_back(GeneralizedMorse{v1, v2, alpha});
        validate(specs.back());
    }

    SweepTable table{"V2^2/V1", {}, {}, {}};
    const auto levels = solve_all(specs, config);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto [v1, v2] = pairs[i];
        const double key = v1 == v2 ? v1 : v2 * v2 / v1;
        table.rows.push_back({key, specs[i], levels[i]});
        auto it = std::find_if(table.groups.begin(), table.groups.end(), [key](const SweepGroup& g) {
            return std::abs(g.effective_parameter - key) <= 1e-12 * std::max(1.0, std::abs(key));
        });
        if (it == table.groups.end()) {
            table.groups.push_back({key, {i}, {}, {}, true});
        } else {
            it->rows.push_back(i);
        }
    }
    for (SweepGroup& group : table.groups) fill_group(group, table.rows, table.warnings);
    return table;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "text") return ReportFormat::text;
    throw ParseError("unknown report format '" + std::string(name) + "'");
}

std::string export_report(const VerificationReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::json: {
        Json j;
        j["spec"] = to_string(report.spec);
        j["canonical"] = Json{{"plain_spec", to_string(report.canonical.plain_spec)},
                              {"shift", report.canonical.shift},
                              {"transform_note", report.canonical.transform_note}};
        j["potential_residual"] = report.potential_residual;
        Json levels = Json::array();
        for (const LevelRow& r : report.levels) {
            levels.push_back(Json{{"n", r.n},
                                  {"E_deformed", r.E_deformed},
                                  {"E_plain", r.E_plain},
                                  {"E_analytic", real_or_null(r.E_analytic)},
                                  {"delta_numeric", r.delta_numeric},
                                  {"tol_numeric", r.tol_numeric},
                                  {"delta_analytic", real_or_null(r.delta_analytic)},
                                  {"err_deformed", r.err_deformed},
                                  {"err_plain", r.err_plain}});
        }
        j["levels"] = std::move(levels);
        Json overlaps = Json::array();
        for (const OverlapRow& o : report.overlaps) overlaps.push_back(Json{{"n", o.n}, {"overlap", o.overlap}});
        j["overlaps"] = std::move(overlaps);
        j["pinned"] = pin_json(report.pinned);
        Json checks = Json::array();
        for (const Check& c : report.checks) {
            checks.push_back(Json{{"name", c.name},
                                  {"pass", c.pass},
                                  {"value", real_or_null(c.value)},
                                  {"tolerance", c.tolerance}});
        }
        j["verdict"] = Json{{"pass", report.pass()}, {"checks", std::move(checks)}, {"warnings", report.warnings}};
        return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
        std::ostringstream os;
        os << "n,E_deformed,E_plain,E_analytic,delta_numeric,tol_numeric,delta_analytic,err_deformed,err_plain\n";
        for (const LevelRow& r : report.levels) {
            os << r.n << ',' << format_real(r.E_deformed) << ',' << format_real(r.E_plain) << ','
               << csv_real(r.E_analytic) << ',' << format_real(r.delta_numeric) << ','
               << format_real(r.tol_numeric) << ',' << csv_real(r.delta_analytic) << ','
               << format_real(r.err_deformed) << ',' << format_real(r.err_plain) << '\n';
        }
        return os.str();
    }
    case ReportFormat::text: {
        std::ostringstream os;
        os << "spec:               " << to_string(report.spec) << '\n'
           << "plain spec:         " << to_string(report.canonical.plain_spec) << '\n'
           << "shift:              " << format_real(report.canonical.shift) << '\n'
           << "transform:          " << report.canonical.transform_note << '\n'
           << "potential residual: " << format_real(report.potential_residual) << '\n'
           << "interpretation:     " << candidate_label(report.pinned.selected) << '\n';
        os << "levels:\n";
        for (const LevelRow& r : report.levels) {
            os << "  n=" << r.n << "  deformed=" << format_real(r.E_deformed) << "  plain=" << format_real(r.E_plain)
               << "  analytic=" << csv_real(r.E_analytic) << "  |dE|=" << format_real(r.delta_numeric) << '\n';
        }
        for (const OverlapRow& o : report.overlaps) {
            os << "  overlap n=" << o.n << ": " << format_real(o.overlap) << '\n';
        }
        os << "checks:\n";
        for (const Check& c : report.checks) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  value=" << format_real(c.value)
               << "  tolerance=" << format_real(c.tolerance) << '\n';
        }
        for (const std::string& w : report.warnings) os << "  warning: " << w << '\n';
        os << "verdict: " << (report.pass() ? "PASS" : "FAIL") << '\n';
        return os.str();
    }
    }
    return {};
}

std::string export_pin_record(const PinRecord& record, ReportFormat format) {
    switch (format) {
    case ReportFormat::json: return pin_json(record).dump(2) + "\n";
    case ReportFormat::csv: {
        std::ostringstream os;
        os << "sign_mode,g_exponent,exponent_sign,counts_agree,level_deviation,residual,matches\n";
        for (const CandidateRow& c : record.candidates) {
            os << to_string(c.interp.sign) << ',' << g_exponent(c.interp.g_scale) << ','
               << to_string(c.interp.exponent) << ',' << (c.counts_agree ? "true" : "false") << ','
               << format_real(c.level_deviation) << ',' << format_real(c.residual) << ',' << (c.matches ? "true" : "false") << '\n';
        }
        return os.str();
    }
    case ReportFormat::text: {
        std::ostringstream os;
        os << "selected: " << candidate_label(record.selected) << '\n';
        for (const CandidateRow& c : record.candidates) {
            os << "  " << (c.matches ? "match   " : "rejected") << "  " << candidate_label(c.interp)
               << "  counts_agree=" << (c.counts_agree ? "yes" : "no") << "  level_deviation=" << format_real(c.level_deviation) << "  residual=" << format_real(c.residual)
               << '\n';
        }
        return os.str();
    }
    }
    return {};
}

std::string sweep_csv(const SweepTable& table) {
    std::size_t levels = 0;
    for (const SweepRow& row : table.rows) levels = std::max(levels, row.levels.size());
    const bool morse = !table.rows.empty() && std::holds_alternative<GeneralizedMorse>(table.rows.front().spec);

    std::ostringstream os;
    os << (morse ? "V1,V2,V2^2/V1" : "q,U0");
    for (std::size_t n = 0; n < levels; ++n) os << ",E_" << n << ",err_" << n;
    os << '\n';
    for (const SweepRow& row : table.rows) {
        if (morse) {
            const auto& m = std::get<GeneralizedMorse>(row.spec);
            os << format_real(m.V1) << ',' << format_real(m.V2) << ',' << format_real(row.key);
        } else {
            const auto& r = std::get<RosenMorseQ>(row.spec);
            os << format_real(r.q) << ',' << format_real(r.U0);
        }
        for (std::size_t n = 0; n < levels; ++n) {
            if (n < row.levels.size()) {
                os << ',' << format_real(row.levels[n].E) << ',' << format_real(row.levels[n].err);
            } else {
                os << ",nan,nan";
            }
        }
        os << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace qshift
