#pragma once

namespace qshift {

enum class HyperbolicKind { sinh, cosh, tanh, sech };

/// Argument of a q-deformed hyperbolic function: u = alpha * x, q > 0.
struct DeformedArg {
    double u;
    double q;
};

/// Exact amplitude/translation pair that removes the deformation:
/// sinh_q(u) = scale * sinh(u - shift), cosh_q(u) = scale * cosh(u - shift).
struct ShiftScale {
    double scale; // sqrt(q)
    double shift; // ln(scale) = ln(q) / 2
};

/// Beyond this distance from the deformation centre the shifted
/// representation is used instead of the defining exponentials.
inline constexpr double kStablePathThreshold = 30.0;

ShiftScale shift_representation(double q);

/// Evaluates sinh_q, cosh_q, tanh_q or sech_q where
///   sinh_q(u) = (e^u - q e^-u) / 2,  cosh_q(u) = (e^u + q e^-u) / 2.
/// Throws DomainError for q <= 0 or non-finite u.
double eval_deformed(HyperbolicKind kind, DeformedArg arg);

/// Same as eval_deformed but always through the defining exponentials.
/// Exposed so the two paths can be compared in their overlap region.
double eval_deformed_direct(HyperbolicKind kind, DeformedArg arg);

/// Same as eval_deformed but always through scale * f(u - shift).
double eval_deformed_shifted(HyperbolicKind kind, DeformedArg arg);

/// ln(cosh_q(u)) without overflow for any finite u.
double log_cosh_deformed(DeformedArg arg);

/// ln(cosh(v)) without overflow.
double log_cosh(double v);

inline double sinh_q(double u, double q) { return eval_deformed(HyperbolicKind::sinh, {u, q}); }
inline double cosh_q(double u, double q) { return eval_deformed(HyperbolicKind::cosh, {u, q}); }
inline double tanh_q(double u, double q) { return eval_deformed(HyperbolicKind::tanh, {u, q}); }
inline double sech_q(double u, double q) { return eval_deformed(HyperbolicKind::sech, {u, q}); }

} // namespace qshift
