#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qshift/qshift.hpp"

namespace qshift::cli {
namespace {

constexpr int kDefaultGridPoints = 6001;

struct SpecSource {
    std::string text;
    std::string file;
};

struct SolverOptions {
    int grid_points = kDefaultGridPoints;
    double half_width = 30.0;
};

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

int default_grid_points() {
    if (const char* env = std::getenv("QSHIFT_GRID_POINTS")) {
        const double v = parse_real(trim(env));
        if (v < 3 || v != static_cast<int>(v)) {
            throw ParseError("QSHIFT_GRID_POINTS must be an integer >= 3, got '" + std::string(env) + "'");
        }
        return static_cast<int>(v);
    }
    return kDefaultGridPoints;
}

PotentialSpec load_spec(const SpecSource& src) {
    if (!src.text.empty() && !src.file.empty()) throw ParseError("give either --spec or --spec-file, not both");
    if (!src.file.empty()) {
        std::ifstream in(src.file);
        if (!in) throw ParseError("cannot read spec file '" + src.file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_spec(trim(buf.str()));
    }
    if (src.text.empty()) throw ParseError("a potential spec is required (--spec or --spec-file)");
    return parse_spec(src.text);
}

SolverConfig make_config(const SolverOptions& opts) {
    SolverConfig config;
    config.n_points = opts.grid_points;
    config.half_width_factor = opts.half_width;
    validate(config);
    return config;
}

struct Range {
    double a;
    double b;
    int n;
};

Range parse_range(const std::vector<std::string>& tokens) {
    const double a = parse_real(tokens.at(0));
    const double b = parse_real(tokens.at(1));
    const double n = parse_real(tokens.at(2));
    if (n < 1 || n != static_cast<int>(n)) {
        throw ParseError("range sample count must be a positive integer, got '" + tokens[2] + "'");
    }
    return {a, b, static_cast<int>(n)};
}

double range_point(const Range& r, int i) {
    return r.n == 1 ? r.a : r.a + (r.b - r.a) * i / (r.n - 1);
}

std::vector<std::pair<double, double>> parse_pairs(std::string_view text) {
    std::vector<std::pair<double, double>> pairs;
    for (const std::string& raw : split(text, ';')) {
        std::string item = trim(raw);
        if (item.empty()) continue;
        if (item.front() != '(' || item.back() != ')') {
            throw ParseError("morse pair must look like (V1,V2), got '" + item + "'");
        }
        const auto fields = split(std::string_view(item).substr(1, item.size() - 2), ',');
        if (fields.size() != 2) throw ParseError("morse pair must have two entries, got '" + item + "'");
        pairs.emplace_back(parse_real(trim(fields[0])), parse_real(trim(fields[1])));
    }
    if (pairs.empty()) throw ParseError("--morse-pairs is empty");
    return pairs;
}

SignMode parse_sign_mode(std::string_view name) {
    if (name == "pinned_minus") return SignMode::pinned_minus;
    if (name == "paper_plus") return SignMode::paper_plus;
    throw ParseError("unknown sign mode '" + std::string(name) + "'");
}

const RosenMorseQ& require_rosen_morse(const PotentialSpec& spec, std::string_view what) {
    const auto* rm = std::get_if<RosenMorseQ>(&spec);
    if (rm == nullptr) {
        throw WrongFamilyError(std::string(what) + " is only available for rosen_morse_q, got " +
                               std::string(family_name(family_of(spec))));
    }
    return *rm;
}

class Output {
public:
    Output(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}

    void emit(const std::string& text) const {
        if (path_.empty()) {
            out_ << text;
        } else {
            write_text_file(path_, text);
        }
    }

private:
    std::ostream& out_;
    std::string path_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-deformed hyperbolic potentials: evaluation, canonical maps, spectra and verification",
                 "qshift"};
    app.require_subcommand(1, 1);

    SpecSource spec_src;
    SolverOptions solver;
    std::string out_path;
    std::string format = "text";

    try {
        solver.grid_points = default_grid_points();
    } catch (const ParseError& e) {
        err << "qshift: " << e.what() << '\n';
        return kUsage;
    }

    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_src.text, "Potential spec, e.g. \"rosen_morse_q B0=1 U0=10 alpha=1 q=4\"");
        sub->add_option("--spec-file", spec_src.file, "File holding the potential spec");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--grid-points", solver.grid_points, "Finite-difference grid points (env QSHIFT_GRID_POINTS)");
        sub->add_option("--half-width", solver.half_width, "Window half-width in units of 1/alpha");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_path, "Write output to this file"); };

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate the potential (or superpotential)");
    add_spec(eval);
    add_out(eval);
    std::string at_text;
    std::vector<std::string> range_tokens;
    auto* at_opt = eval->add_option("--at", at_text, "Evaluate at one point");
    auto* range_opt = eval->add_option("--range", range_tokens, "a b n: n evenly spaced points, CSV output")
                          ->expected(3);
    at_opt->excludes(range_opt);

    // canonicalize
    auto* canon = app.add_subcommand("canonicalize", "Map a deformed spec to its nondeformed form");
    add_spec(canon);
    add_out(canon);
    canon->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Bound-state energies");
    add_spec(spectrum);
    add_solver(spectrum);
    add_out(spectrum);
    bool want_analytic = false;
    bool want_numeric = false;
    bool want_both = false;
    std::string sign_mode = "pinned_minus";
    std::string eigvec_path;
    auto* fa = spectrum->add_flag("--analytic", want_analytic, "Closed-form levels only");
    auto* fn = spectrum->add_flag("--numeric", want_numeric, "Finite-difference levels only");
    auto* fb = spectrum->add_flag("--both", want_both, "Closed-form and numeric side by side");
    fa->excludes(fn)->excludes(fb);
    fn->excludes(fb);
    spectrum->add_option("--sign-mode", sign_mode, "pinned_minus or paper_plus (closed form, B0^2 term)");
    spectrum->add_option("--eigenvectors", eigvec_path, "Also write numeric eigenvectors as CSV");

    // wavefunction
    auto* wave = app.add_subcommand("wavefunction", "Sample a closed-form Rosen-Morse eigenfunction");
    add_spec(wave);
    add_out(wave);
    int level = 0;
    std::vector<std::string> wave_range;
    wave->add_option("--n", level, "Level index")->required();
    wave->add_option("--range", wave_range, "a b n")->expected(3)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Check the deformed/nondeformed equivalence");
    add_spec(verify);
    add_solver(verify);
    add_out(verify);
    verify->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Spectra along a q orbit or across Morse pairs");
    add_spec(sweep);
    add_solver(sweep);
    add_out(sweep);
    std::string q_list;
    std::string morse_pairs;
    std::optional<double> sweep_alpha;
    auto* qo = sweep->add_option("--q", q_list, "Comma-separated q values");
    auto* mo = sweep->add_option("--morse-pairs", morse_pairs, "\"(V1,V2);(V1,V2);...\"");
    qo->excludes(mo);
    sweep->add_option("--alpha", sweep_alpha, "alpha for --morse-pairs (default: from --spec, else 1)");

    // pin
    auto* pin = app.add_subcommand("pin", "Resolve the closed-form readings against the oracle");
    add_solver(pin);
    add_out(pin);
    pin->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        const Output sink(out, out_path);

        if (eval->parsed()) {
            const PotentialSpec spec = load_spec(spec_src);
            const bool super = std::holds_alternative<FiveParamSuper>(spec);
            auto f = [&](double x) { return super ? eval_superpotential(spec, x) : eval_potential(spec, x); };
            if (!at_text.empty()) {
                sink.emit(format_real(f(parse_real(at_text))) + "\n");
            } else if (!range_tokens.empty()) {
                const Range r = parse_range(range_tokens);
                std::ostringstream os;
                os << (super ? "x,W\n" : "x,V\n");
                for (int i = 0; i < r.n; ++i) {
                    const double x = range_point(r, i);
                    os << format_real(x) << ',' << format_real(f(x)) << '\n';
                }
                sink.emit(os.str());
            } else {
                throw ParseError("eval needs --at <x> or --range <a> <b> <n>");
            }
            return kSuccess;
        }

        if (canon->parsed()) {
            const PotentialSpec spec = load_spec(spec_src);
            const CanonicalMap map = canonicalize(spec);
            if (format == "json") {
                nlohmann::ordered_json j{{"spec", to_string(spec)},
                                         {"plain_spec", to_string(map.plain_spec)},
                                         {"shift", map.shift},
                                         {"transform_note", map.transform_note}};
                sink.emit(j.dump(2) + "\n");
            } else {
                sink.emit("plain_spec: " + to_string(map.plain_spec) + "\nshift: " + format_real(map.shift) +
                          "\ntransform: " + map.transform_note + "\n");
            }
            return kSuccess;
        }

        if (spectrum->parsed()) {
            const PotentialSpec spec = load_spec(spec_src);
            const SolverConfig config = make_config(solver);
            const auto* rm = std::get_if<RosenMorseQ>(&spec);
            if (want_analytic || (want_both && rm == nullptr)) {
                require_rosen_morse(spec, "the closed-form spectrum");
            }
            const bool analytic = want_analytic || want_both || (!want_numeric && rm != nullptr);
            const bool numeric = want_numeric || want_both || !want_analytic;

            Interpretation interp = kPinnedInterpretation;
            interp.sign = parse_sign_mode(sign_mode);

            std::optional<Spectrum> closed;
            if (analytic) closed = analytic_spectrum(*rm, interp);
            std::optional<BoundStates> solved;
            if (numeric) solved = solve_bound_states_detailed(spec, config);
            if (solved && !eigvec_path.empty()) write_text_file(eigvec_path, eigenvector_csv(*solved));

            if (closed && solved) {
                std::ostringstream os;
                os << "n,E_analytic,E_numeric,err,abs_diff\n";
                const std::size_t n = std::max(closed->levels.size(), solved->spectrum.levels.size());
                for (std::size_t i = 0; i < n; ++i) {
                    const bool has_a = i < closed->levels.size();
                    const bool has_n = i < solved->spectrum.levels.size();
                    const double ea = has_a ? closed->levels[i].E : std::nan("");
                    const double en = has_n ? solved->spectrum.levels[i].E : std::nan("");
                    const double e = has_n ? solved->spectrum.levels[i].err : std::nan("");
                    os << i << ',' << format_real(ea) << ',' << format_real(en) << ',' << format_real(e) << ','
                       << format_real(std::abs(ea - en)) << '\n';
                }
                sink.emit(os.str());
            } else if (closed) {
                sink.emit(spectrum_csv(*closed));
            } else {
                sink.emit(spectrum_csv(solved->spectrum));
            }
            return kSuccess;
        }

        if (wave->parsed()) {
            const PotentialSpec spec = load_spec(spec_src);
            const RosenMorseQ& rm = require_rosen_morse(spec, "the closed-form eigenfunction");
            const auto plain = std::get<RosenMorseQ>(canonicalize(spec).plain_spec);
            WavefunctionForm form = build_wavefunction(level, plain.B0, plain.U0, plain.alpha);
            if (rm.q != 1.0) form = deform_wavefunction(form, rm.q);
            const Range r = parse_range(wave_range);
            sink.emit(wavefunction_csv(form, r.a, r.b, r.n));
            return kSuccess;
        }

        if (verify->parsed()) {
            const PotentialSpec spec = load_spec(spec_src);
            const VerificationReport report = verify_equivalence(spec, make_config(solver));
            sink.emit(export_report(report, parse_report_format(format)));
            return report.pass() ? kSuccess : kVerificationFailed;
        }

        if (sweep->parsed()) {
            const SolverConfig config = make_config(solver);
            SweepTable table;
            if (!q_list.empty()) {
                const PotentialSpec spec = load_spec(spec_src);
                std::vector<double> qs;
                for (const std::string& item : split(q_list, ',')) qs.push_back(parse_real(trim(item)));
                table = q_invariance_sweep(require_rosen_morse(spec, "a q sweep"), qs, config);
            } else if (!morse_pairs.empty()) {
                double alpha = 1.0;
                if (sweep_alpha) {
                    alpha = *sweep_alpha;
                } else if (!spec_src.text.empty() || !spec_src.file.empty()) {
                    alpha = alpha_of(load_spec(spec_src));
                }
                table = morse_collapse(parse_pairs(morse_pairs), alpha, config);
            } else {
                throw ParseError("sweep needs --q <list> or --morse-pairs <pairs>");
            }
            sink.emit(sweep_csv(table));
            for (const SweepGroup& g : table.groups) {
                err << "group " << format_real(g.effective_parameter) << ": " << g.rows.size() << " rows, "
                    << (g.pass ? "flat" : "NOT flat");
                for (std::size_t n = 0; n < g.spread.size(); ++n) {
                    err << "  E_" << n << " spread=" << format_real(g.spread[n]);
                }
                err << '\n';
            }
            for (const std::string& w : table.warnings) err << "warning: " << w << '\n';
            return table.pass() ? kSuccess : kVerificationFailed;
        }

        if (pin->parsed()) {
            const PinRecord record = pin_formula(make_config(solver));
            sink.emit(export_pin_record(record, parse_report_format(format)));
            return kSuccess;
        }
    } catch (const ParseError& e) {
        err << "qshift: usage: " << e.what() << '\n';
        return kUsage;
    } catch (const WrongFamilyError& e) {
        err << "qshift: usage: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "qshift: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}

} // namespace qshift::cli
