#include "qshift/equivalence.hpp"

#include <algorithm>
#include <cmath>

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

double deformation_shift(double q, double alpha) {
    return shift_representation(q).shift / alpha;
}

bool same_real(double a, double b) {
    return a == b || std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool same_spec(const PotentialSpec& a, const PotentialSpec& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&b](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b);
            if constexpr (std::is_same_v<T, RosenMorseQ>) {
                return same_real(lhs.B0, rhs.B0) && same_real(lhs.U0, rhs.U0) &&
                       same_real(lhs.alpha, rhs.alpha) && same_real(lhs.q, rhs.q);
            } else if constexpr (std::is_same_v<T, ShiftedTanhQ>) {
                return same_real(lhs.V1, rhs.V1) && same_real(lhs.V2, rhs.V2) &&
                       same_real(lhs.alpha, rhs.alpha) && same_real(lhs.q, rhs.q);
            } else if constexpr (std::is_same_v<T, GeneralizedMorse>) {
                return same_real(lhs.V1, rhs.V1) && same_real(lhs.V2, rhs.V2) &&
                       same_real(lhs.alpha, rhs.alpha);
            } else {
                return same_real(lhs.Q1, rhs.Q1) && same_real(lhs.Q2, rhs.Q2) &&
                       same_real(lhs.Q3, rhs.Q3) && same_real(lhs.alpha, rhs.alpha) &&
                       same_real(lhs.q, rhs.q);
            }
        },
        a);
}

} // namespace

CanonicalMap canonicalize(const PotentialSpec& spec) {
    validate(spec);
    return std::visit(
        Overloaded{
            [](const RosenMorseQ& s) {
                return CanonicalMap{RosenMorseQ{s.B0, s.U0 / s.q, s.alpha, 1.0},
                                    deformation_shift(s.q, s.alpha), "U0 -> U0/q"};
            },
            [](const ShiftedTanhQ& s) {
                return CanonicalMap{ShiftedTanhQ{s.V1, s.V2, s.alpha, 1.0},
                                    deformation_shift(s.q, s.alpha), "parameters unchanged"};
            },
            [](const FiveParamSuper& s) {
                const double root = std::sqrt(s.q);
                return CanonicalMap{FiveParamSuper{s.Q1, s.Q2 / s.q, s.Q3 / root, s.alpha, 1.0},
                                    deformation_shift(s.q, s.alpha), "Q2 -> Q2/q, Q3 -> Q3/sqrt(q)"};
            },
            [](const GeneralizedMorse& s) {
                const double ratio = s.V1 / s.V2;
                if (!(ratio > 0.0) || !std::isfinite(ratio)) {
                    throw NoRealShiftError("generalized_morse needs V1/V2 > 0 for a real translation, got V1=" +
                                           format_real(s.V1) + " V2=" + format_real(s.V2));
                }
                // Equal parameters are already canonical; V2*V2/V1 need not round back to V2.
                const double eff = s.V1 == s.V2 ? s.V1 : s.V2 * s.V2 / s.V1;
                return CanonicalMap{GeneralizedMorse{eff, eff, s.alpha}, std::log(ratio) / s.alpha,
                                    "V1, V2 -> V2^2/V1"};
            },
        },
        spec);
}

double pointwise_residual(const PotentialSpec& spec, const CanonicalMap& map, int samples,
                          double half_width) {
    if (samples < 1) throw DomainError("pointwise_residual needs at least one sample");
    if (!(half_width >= 0.0) || !std::isfinite(half_width)) {
        throw DomainError("pointwise_residual half_width must be finite and nonnegative");
    }
    const CanonicalMap expected = canonicalize(spec);
    if (!same_spec(expected.plain_spec, map.plain_spec) || !same_real(expected.shift, map.shift)) {
        throw ConsistencyError("canonical map does not belong to spec " + to_string(spec));
    }

    const bool super = std::holds_alternative<FiveParamSuper>(spec);
    auto eval = [super](const PotentialSpec& s, double x) {
        return super ? eval_superpotential(s, x) : eval_potential(s, x);
    };

    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double y = samples == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (samples - 1);
        const double deformed = eval(spec, y + map.shift);
        const double plain = eval(map.plain_spec, y);
        worst = std::max(worst, std::abs(deformed - plain) / std::max(1.0, std::abs(plain)));
    }
    return worst;
}

RosenMorseQ equivalent_family(const RosenMorseQ& spec, double q_new) {
    if (!(q_new > 0.0) || !std::isfinite(q_new)) {
        throw DomainError("q_new must be positive and finite, got " + format_real(q_new));
    }
    validate(spec);
    return RosenMorseQ{spec.B0, spec.U0 * (q_new / spec.q), spec.alpha, q_new};
}

} // namespace qshift
