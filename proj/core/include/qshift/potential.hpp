#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace qshift {

// Units throughout: hbar = 2M = 1, so the kinetic term is -d^2/dx^2.

/// B0 tanh_q(alpha x) - U0 sech_q^2(alpha x)
struct RosenMorseQ {
    double B0;
    double U0;
    double alpha;
    double q = 1.0;
    friend bool operator==(const RosenMorseQ&, const RosenMorseQ&) = default;
};

/// V1/2 (1 + tanh_q(alpha x)) + V2/4 (1 + tanh_q^2(alpha x))
struct ShiftedTanhQ {
    double V1;
    double V2;
    double alpha;
    double q = 1.0;
    friend bool operator==(const ShiftedTanhQ&, const ShiftedTanhQ&) = default;
};

/// V1 e^{-2 alpha x} - V2 e^{-alpha x}
struct GeneralizedMorse {
    double V1;
    double V2;
    double alpha;
    friend bool operator==(const GeneralizedMorse&, const GeneralizedMorse&) = default;
};

/// Superpotential W = Q1 + Q2/(e^{2 alpha x} + q) + Q3 e^{alpha x}/(e^{2 alpha x} + q).
struct FiveParamSuper {
    double Q1;
    double Q2;
    double Q3;
    double alpha;
    double q = 1.0;
    friend bool operator==(const FiveParamSuper&, const FiveParamSuper&) = default;
};

using PotentialSpec = std::variant<RosenMorseQ, ShiftedTanhQ, GeneralizedMorse, FiveParamSuper>;

enum class Family { rosen_morse_q, shifted_tanh_q, generalized_morse, five_param_super };

Family family_of(const PotentialSpec& spec);
std::string_view family_name(Family family);

/// Deformation parameter of the spec, 1 for families without one.
double deformation_of(const PotentialSpec& spec);
double alpha_of(const PotentialSpec& spec);

/// Throws DomainError when alpha <= 0, q <= 0 or any parameter is non-finite.
void validate(const PotentialSpec& spec);

/// Canonical textual form, e.g. "rosen_morse_q B0=1 U0=10 alpha=1 q=4".
/// Numbers use the shortest representation that round-trips.
std::string to_string(const PotentialSpec& spec);

/// Parses the canonical textual form. Family and parameter names are
/// case-insensitive; q may be omitted (defaults to 1). Throws ParseError.
PotentialSpec parse_spec(std::string_view text);

/// Potential energy at x. FiveParamSuper is rejected with WrongFamilyError.
double eval_potential(const PotentialSpec& spec, double x);

/// W(x) of a FiveParamSuper spec; overflow-free for |alpha x| <= 700.
double eval_superpotential(const PotentialSpec& spec, double x);

/// Analytic W'(x).
double eval_superpotential_derivative(const PotentialSpec& spec, double x);

struct PartnerPotentials {
    double minus; // W^2 - W'
    double plus;  // W^2 + W'
};

PartnerPotentials partner_potentials(const PotentialSpec& spec, double x);

/// Limits of V at -infinity and +infinity. An infinite limit is +inf.
struct Asymptotics {
    double left_limit;
    double right_limit;
    double continuum_threshold; // smaller finite limit
};

Asymptotics asymptotics(const PotentialSpec& spec);

} // namespace qshift
