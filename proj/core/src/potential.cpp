#include "qshift/potential.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "qshift/deformed_hyperbolic.hpp"
#include "qshift/error.hpp"
#include "qshift/format.hpp"

namespace qshift {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string("parameter ") + name + " must be finite");
}

void require_alpha(double alpha) {
    require_finite(alpha, "alpha");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive, got " + format_real(alpha));
}

void require_q(double q) {
    require_finite(q, "q");
    if (!(q > 0.0)) throw DomainError("deformation q must be positive, got " + format_real(q));
}

const FiveParamSuper& as_super(const PotentialSpec& spec) {
    const auto* s = std::get_if<FiveParamSuper>(&spec);
    if (s == nullptr) {
        throw WrongFamilyError("superpotential requested for non-superpotential family " +
                               std::string(family_name(family_of(spec))));
    }
    return *s;
}

// Parameter tables for the textual form, in canonical print order.
struct ParamSpec {
    const char* name;
    bool optional;
};

constexpr std::array<ParamSpec, 4> kRosenMorseParams{{{"B0", false}, {"U0", false}, {"alpha", false}, {"q", true}}};
constexpr std::array<ParamSpec, 4> kShiftedTanhParams{{{"V1", false}, {"V2", false}, {"alpha", false}, {"q", true}}};
constexpr std::array<ParamSpec, 3> kMorseParams{{{"V1", false}, {"V2", false}, {"alpha", false}}};
constexpr std::array<ParamSpec, 5> kSuperParams{
    {{"Q1", false}, {"Q2", false}, {"Q3", false}, {"alpha", false}, {"q", true}}};

template <std::size_t N>
std::array<double, N> collect(const std::array<ParamSpec, N>& table,
                              const std::vector<std::string_view>& tokens, std::string_view family) {
    std::array<std::optional<double>, N> values{};
    for (std::string_view token : tokens) {
        const auto eq = token.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError("expected key=value, got '" + std::string(token) + "'");
        }
        const std::string key = lower(token.substr(0, eq));
        std::size_t idx = N;
        for (std::size_t i = 0; i < N; ++i) {
            if (lower(table[i].name) == key) idx = i;
        }
        if (idx == N) {
            throw ParseError("unknown parameter '" + std::string(token.substr(0, eq)) + "' for family " +
                             std::string(family));
        }
        if (values[idx]) {
            throw ParseError("duplicate parameter '" + std::string(token.substr(0, eq)) + "'");
        }
        values[idx] = parse_real(token.substr(eq + 1));
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!values[i]) {
            if (!table[i].optional) {
                throw ParseError("missing parameter " + std::string(table[i].name) + " for family " +
                                 std::string(family));
            }
            values[i] = 1.0;
        }
        out[i] = *values[i];
    }
    return out;
}

} // namespace

Family family_of(const PotentialSpec& spec) {
    return std::visit(Overloaded{
                          [](const RosenMorseQ&) { return Family::rosen_morse_q; },
                          [](const ShiftedTanhQ&) { return Family::shifted_tanh_q; },
                          [](const GeneralizedMorse&) { return Family::generalized_morse; },
                          [](const FiveParamSuper&) { return Family::five_param_super; },
                      },
                      spec);
}

std::string_view family_name(Family family) {
    switch (family) {
    case Family::rosen_morse_q: return "rosen_morse_q";
    case Family::shifted_tanh_q: return "shifted_tanh_q";
    case Family::generalized_morse: return "generalized_morse";
    case Family::five_param_super: return "five_param_super";
    }
    return "?";
}

double deformation_of(const PotentialSpec& spec) {
    return std::visit(Overloaded{
                          [](const GeneralizedMorse&) { return 1.0; },
                          [](const auto& s) { return s.q; },
                      },
                      spec);
}

double alpha_of(const PotentialSpec& spec) {
    return std::visit([](const auto& s) { return s.alpha; }, spec);
}

void validate(const PotentialSpec& spec) {
    std::visit(Overloaded{
                   [](const RosenMorseQ& s) {
                       require_finite(s.B0, "B0");
                       require_finite(s.U0, "U0");
                       require_alpha(s.alpha);
                       require_q(s.q);
                   },
                   [](const ShiftedTanhQ& s) {
                       require_finite(s.V1, "V1");
                       require_finite(s.V2, "V2");
                       require_alpha(s.alpha);
                       require_q(s.q);
                   },
                   [](const GeneralizedMorse& s) {
                       require_finite(s.V1, "V1");
                       require_finite(s.V2, "V2");
                       require_alpha(s.alpha);
                   },
                   [](const FiveParamSuper& s) {
                       require_finite(s.Q1, "Q1");
                       require_finite(s.Q2, "Q2");
                       require_finite(s.Q3, "Q3");
                       require_alpha(s.alpha);
                       require_q(s.q);
                   },
               },
               spec);
}

std::string to_string(const PotentialSpec& spec) {
    std::ostringstream os;
    os << family_name(family_of(spec));
    auto kv = [&os](const char* k, double v) { os << ' ' << k << '=' << format_real(v); };
    std::visit(Overloaded{
                   [&](const RosenMorseQ& s) {
                       kv("B0", s.B0), kv("U0", s.U0), kv("alpha", s.alpha), kv("q", s.q);
                   },
                   [&](const ShiftedTanhQ& s) {
                       kv("V1", s.V1), kv("V2", s.V2), kv("alpha", s.alpha), kv("q", s.q);
                   },
                   [&](const GeneralizedMorse& s) { kv("V1", s.V1), kv("V2", s.V2), kv("alpha", s.alpha); },
                   [&](const FiveParamSuper& s) {
                       kv("Q1", s.Q1), kv("Q2", s.Q2), kv("Q3", s.Q3), kv("alpha", s.alpha), kv("q", s.q);
                   },
               },
               spec);
    return os.str();
}

PotentialSpec parse_spec(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) tokens.push_back(text.substr(i, j - i));
        i = j;
    }
    if (tokens.empty()) throw ParseError("empty potential spec");

    const std::string family = lower(tokens.front());
    const std::vector<std::string_view> params(tokens.begin() + 1, tokens.end());

    PotentialSpec spec;
    if (family == "rosen_morse_q") {
        auto v = collect(kRosenMorseParams, params, family);
        spec = RosenMorseQ{v[0], v[1], v[2], v[3]};
    } else if (family == "shifted_tanh_q") {
        auto v = collect(kShiftedTanhParams, params, family);
        spec = ShiftedTanhQ{v[0], v[1], v[2], v[3]};
    } else if (family == "generalized_morse") {
        auto v = collect(kMorseParams, params, family);
        spec = GeneralizedMorse{v[0], v[1], v[2]};
    } else if (family == "five_param_super") {
        auto v = collect(kSuperParams, params, family);
        spec = FiveParamSuper{v[0], v[1], v[2], v[3], v[4]};
    } else {
        throw ParseError("unknown potential family '" + std::string(tokens.front()) + "'");
    }
    try {
        validate(spec);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return spec;
}

double eval_potential(const PotentialSpec& spec, double x) {
    if (!std::isfinite(x)) throw DomainError("potential evaluated at non-finite x");
    return std::visit(
        Overloaded{
            [x](const RosenMorseQ& s) {
                const double u = s.alpha * x;
                const double sech = sech_q(u, s.q);
                return s.B0 * tanh_q(u, s.q) - s.U0 * sech * sech;
            },
            [x](const ShiftedTanhQ& s) {
                const double t = tanh_q(s.alpha * x, s.q);
                return 0.5 * s.V1 * (1.0 + t) + 0.25 * s.V2 * (1.0 + t * t);
            },
            [x](const GeneralizedMorse& s) {
                const double e = std::exp(-s.alpha * x);
                return e * (s.V1 * e - s.V2);
            },
            [](const FiveParamSuper&) -> double {
                throw WrongFamilyError("five_param_super is a superpotential; use eval_superpotential");
            },
        },
        spec);
}

double eval_superpotential(const PotentialSpec& spec, double x) {
    const FiveParamSuper& s = as_super(spec);
    if (!std::isfinite(x)) throw DomainError("superpotential evaluated at non-finite x");
    const double u = s.alpha * x;
    if (u > 0.0) {
        // Divide through by e^{2u}.
        const double e1 = std::exp(-u);
        const double e2 = e1 * e1;
        const double den = 1.0 + s.q * e2;
        return s.Q1 + (s.Q2 * e2 + s.Q3 * e1) / den;
    }
    const double e1 = std::exp(u);
    const double den = e1 * e1 + s.q;
    return s.Q1 + (s.Q2 + s.Q3 * e1) / den;
}

double eval_superpotential_derivative(const PotentialSpec& spec, double x) {
    const FiveParamSuper& s = as_super(spec);
    if (!std::isfinite(x)) throw DomainError("superpotential evaluated at non-finite x");
    // W' = alpha [-2 Q2 e^{2u} + Q3 e^u (q - e^{2u})] / (e^{2u} + q)^2
    const double u = s.alpha * x;
    if (u > 0.0) {
        const double e1 = std::exp(-u);
        const double e2 = e1 * e1;
        const double den = 1.0 + s.q * e2;
        return s.alpha * (-2.0 * s.Q2 * e2 + s.Q3 * e1 * (s.q * e2 - 1.0)) / (den * den);
    }
    const double e1 = std::exp(u);
    const double e2 = e1 * e1;
    const double den = e2 + s.q;
    return s.alpha * (-2.0 * s.Q2 * e2 + s.Q3 * e1 * (s.q - e2)) / (den * den);
}

PartnerPotentials partner_potentials(const PotentialSpec& spec, double x) {
    const double w = eval_superpotential(spec, x);
    const double dw = eval_superpotential_derivative(spec, x);
    return {w * w - dw, w * w + dw};
}

Asymptotics asymptotics(const PotentialSpec& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(Overloaded{
                          [](const RosenMorseQ& s) {
                              return Asymptotics{-s.B0, s.B0, -std::abs(s.B0)};
                          },
                          [](const ShiftedTanhQ& s) {
                              const double left = 0.5 * s.V2;
                              const double right = s.V1 + 0.5 * s.V2;
                              return Asymptotics{left, right, std::min(left, right)};
                          },
                          [](const GeneralizedMorse&) { return Asymptotics{inf, 0.0, 0.0}; },
                          [](const FiveParamSuper&) -> Asymptotics {
                              throw WrongFamilyError("asymptotics requested for a superpotential");
                          },
                      },
                      spec);
}

} // namespace qshift
