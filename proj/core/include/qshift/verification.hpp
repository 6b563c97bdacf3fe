#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qshift/analytic.hpp"
#include "qshift/equivalence.hpp"
#include "qshift/oracle.hpp"
#include "qshift/potential.hpp"

namespace qshift {

// Tolerance policy: algebraic identities at roundoff scale, spectra at the
// Richardson-error scale with a floor, closed forms vs numerics relative.
inline constexpr double kPotentialResidualTol = 1e-10;
inline constexpr double kSpectrumFloor = 1e-8;
inline constexpr double kAnalyticRelTol = 1e-6;
inline constexpr double kPinLevelTol = 1e-4;
inline constexpr double kPinResidualTol = 1e-6;
inline constexpr double kOverlapTol = 0.9999;

/// One candidate reading of the closed forms and how it fared against the oracle.
struct CandidateRow {
    Interpretation interp;
    bool counts_agree;      // same number of bound levels as the oracle in both cases
    double level_deviation; // max relative |E_candidate - E_oracle| over common levels
    double residual;        // max ||H psi - E psi|| / (||psi|| |E|) over common levels
    bool matches;
};

struct PinRecord {
    Interpretation selected;
    std::vector<CandidateRow> candidates;
};

/// Decides the sign of the B0^2 term, the power of g and the exponent sign by
/// comparing every candidate against finite-difference solves of
/// (B0=1, U0=6, alpha=1) and (B0=1, U0=6, alpha=sqrt(2)).
/// Throws PinningError when no candidate matches.
PinRecord pin_formula(const SolverConfig& config);

struct LevelRow {
    int n;
    double E_deformed;
    double E_plain;
    std::optional<double> E_analytic;
    double delta_numeric;                    // |E_deformed - E_plain|
    double tol_numeric;                      // err_deformed + err_plain + floor
    std::optional<double> delta_analytic;    // |E_plain - E_analytic| / |E_analytic|
    double err_deformed;
    double err_plain;
};

struct OverlapRow {
    int n;
    double overlap;
};

struct Check {
    std::string name;
    bool pass;
    double value;
    double tolerance;
};

struct VerificationReport {
    PotentialSpec spec;
    CanonicalMap canonical;
    double potential_residual;
    std::vector<LevelRow> levels;
    std::vector<OverlapRow> overlaps;
    PinRecord pinned;
    std::vector<Check> checks;
    std::vector<std::string> warnings;

    bool pass() const;
};

VerificationReport verify_equivalence(const PotentialSpec& spec, const SolverConfig& config,
                                      const PinRecord& pinned);
VerificationReport verify_equivalence(const PotentialSpec& spec, const SolverConfig& config);

struct SweepRow {
    double key; // q for deformation sweeps, V2^2/V1 for Morse pairs
    PotentialSpec spec;
    std::vector<Level> levels;
};

struct SweepGroup {
    double effective_parameter;
    std::vector<std::size_t> rows;
    std::vector<double> spread;    // per level: max - min of E_n across rows
    std::vector<double> tolerance; // per level: 2 max err + floor
    bool pass;
};

struct SweepTable {
    std::string key_name;
    std::vector<SweepRow> rows;
    std::vector<SweepGroup> groups;
    std::vector<std::string> warnings;

    bool pass() const;
};

/// Solves equivalent_family(base, q) for every q concurrently; rows keep input order.
SweepTable q_invariance_sweep(const RosenMorseQ& base, const std::vector<double>& q_values,
                              const SolverConfig& config);

/// Solves each GeneralizedMorse(V1, V2, alpha) and groups rows by V2^2 / V1.
SweepTable morse_collapse(const std::vector<std::pair<double, double>>& pairs, double alpha,
                          const SolverConfig& config);

enum class ReportFormat { json, csv, text };

ReportFormat parse_report_format(std::string_view name);

std::string export_report(const VerificationReport& report, ReportFormat format);
std::string export_pin_record(const PinRecord& record, ReportFormat format);
std::string sweep_csv(const SweepTable& table);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& contents);

} // namespace qshift
