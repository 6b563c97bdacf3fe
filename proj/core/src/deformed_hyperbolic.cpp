#include "qshift/deformed_hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qshift/error.hpp"

namespace qshift {
namespace {

void check(const DeformedArg& arg) {
    if (!(arg.q > 0.0) || !std::isfinite(arg.q)) {
        throw DomainError("deformation parameter q must be positive and finite, got " +
                          std::to_string(arg.q));
    }
    if (!std::isfinite(arg.u)) throw DomainError("deformed hyperbolic argument must be finite");
}

} // namespace

ShiftScale shift_representation(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError("deformation parameter q must be positive and finite, got " +
                          std::to_string(q));
    }
    return {std::sqrt(q), 0.5 * std::log(q)};
}

double eval_deformed_direct(HyperbolicKind kind, DeformedArg arg) {
    check(arg);
    const double ep = std::exp(arg.u);
    const double em = arg.q * std::exp(-arg.u);
    switch (kind) {
    case HyperbolicKind::sinh: return 0.5 * (ep - em);
    case HyperbolicKind::cosh: return 0.5 * (ep + em);
    // the ratio form is not monotone at the last bit; the shifted tanh is the same value and is
    case HyperbolicKind::tanh: return std::tanh(arg.u - 0.5 * std::log(arg.q));
    case HyperbolicKind::sech: return 2.0 / (ep + em);
    }
    return 0.0;
}

double eval_deformed_shifted(HyperbolicKind kind, DeformedArg arg) {
    check(arg);
    const auto [scale, shift] = shift_representation(arg.q);
    const double v = arg.u - shift;
    switch (kind) {
    case HyperbolicKind::sinh: return scale * std::sinh(v);
    case HyperbolicKind::cosh: return scale * std::cosh(v);
    case HyperbolicKind::tanh: return std::tanh(v);
    case HyperbolicKind::sech: return 1.0 / (scale * std::cosh(v));
    }
    return 0.0;
}

double eval_deformed(HyperbolicKind kind, DeformedArg arg) {
    check(arg);
    if (std::abs(arg.u - 0.5 * std::log(arg.q)) > kStablePathThreshold) {
        return eval_deformed_shifted(kind, arg);
    }
    return eval_deformed_direct(kind, arg);
}

double log_cosh(double v) {
    const double a = std::abs(v);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_cosh_deformed(DeformedArg arg) {
    check(arg);
    const double shift = 0.5 * std::log(arg.q);
    return shift + log_cosh(arg.u - shift);
}

} // namespace qshift
