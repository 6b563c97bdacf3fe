#pragma once

#include <string>
#include <string_view>

#include "qshift/potential.hpp"
#include "qshift/spectrum.hpp"

namespace qshift {

/// Sign of the B0^2 / X^2 term of the closed-form Rosen-Morse levels.
enum class SignMode {
    paper_plus,   // + B0^2 / X^2
    pinned_minus, // - B0^2 / X^2
};

/// How the scale g = alpha^2 enters the level formula and the exponents a, gamma.
enum class GScale {
    printed, // X = sqrt(4U + g^2) - g(2n+1), gamma = C / g^2
    sqrt_g,  // g replaced by sqrt(g) = alpha: X = sqrt(4U + g) - sqrt(g)(2n+1), gamma = C / g
};

/// Sign of the exponential factor of the eigenfunction.
enum class ExponentSign {
    printed, // e^{-a alpha x}
    flipped, // e^{+a alpha x}
};

/// One candidate reading of the closed-form levels and eigenfunctions.
struct Interpretation {
    SignMode sign = SignMode::pinned_minus;
    GScale g_scale = GScale::sqrt_g;
    ExponentSign exponent = ExponentSign::flipped;
    friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// The reading selected by pin_formula against the finite-difference oracle.
/// verification_test asserts that pin_formula still returns this value.
inline constexpr Interpretation kPinnedInterpretation{};

std::string_view to_string(SignMode mode);
std::string_view to_string(GScale scale);
std::string_view to_string(ExponentSign sign);
/// Exponent of g in gamma and a: -2 (printed) or -1.
int g_exponent(GScale scale);

struct SpectrumParams {
    double B0;
    double U0_eff; // U0 / q
    double g;      // alpha^2
    Interpretation interp = kPinnedInterpretation;
};

SpectrumParams spectrum_params(const RosenMorseQ& spec, Interpretation interp = kPinnedInterpretation);

/// X_n = sqrt(4 U0_eff + s^2) - s (2n + 1), with s = g or sqrt(g).
double level_gap(const SpectrumParams& params, int n);

/// E_n = -X_n^2 / 4 -/+ B0^2 / X_n^2. Throws NoSuchLevelError when X_n <= 0.
double rosen_morse_level(const SpectrumParams& params, int n);

/// Number of consecutive levels n = 0, 1, ... that are bound: X_n > 0,
/// normalizable (X_n^2 > 2|B0|) and E_n < -|B0|.
int bound_state_count(const SpectrumParams& params);

/// All bound levels of a (possibly deformed) Rosen-Morse spec, err = 0.
Spectrum analytic_spectrum(const RosenMorseQ& spec, Interpretation interp = kPinnedInterpretation);

/// Terminating Gauss series sum_{k=0}^{n} (-n)_k (b2)_k / (c)_k z^k / k!,
/// accumulated in increasing k with compensated summation.
/// Throws PoleError if c is in {0, -1, ..., -(n-1)}.
double hypergeometric_polynomial(int n, double b2, double c, double z);

/// Closed-form Rosen-Morse eigenfunction
///   psi(x) = norm * prefactor * e^{-/+ a alpha x} cosh_d^{-b}(alpha x)
///            * F(-n, sqrt(4 gamma + 1) - n; a + b + 1; (1 + tanh_d(alpha x)) / 2)
/// where d = deformation (1 for the plain potential).
struct WavefunctionForm {
    int n;
    double a;
    double b;
    double gamma;
    double alpha;
    double prefactor = 1.0;
    double norm = 1.0;
    double deformation = 1.0;
    ExponentSign exponent = ExponentSign::flipped;
};

/// Eigenfunction n of B tanh(alpha x) - C sech^2(alpha x), normalized by
/// adaptive trapezoid quadrature on [-40/alpha, 40/alpha].
WavefunctionForm build_wavefunction(int n, double B, double C, double alpha,
                                    Interpretation interp = kPinnedInterpretation);

/// Throws DomainError for non-finite x. Stable for |alpha x| <= 300.
double eval_wavefunction(const WavefunctionForm& form, double x);

/// Returns a form whose value at y equals eval_wavefunction(form, y + ln(sqrt(q)) / alpha):
/// the prefactor picks up q^{(a-b)/2} (for the flipped exponent) and the
/// deformation is divided by q.
WavefunctionForm translate_wavefunction(const WavefunctionForm& form, double q);

/// Eigenfunction of the deformed potential with deformation q built from
/// its plain counterpart: translate_wavefunction(form, 1/q).
WavefunctionForm deform_wavefunction(const WavefunctionForm& form, double q);

/// CSV "x,psi" sampled at n evenly spaced points of [a, b].
std::string wavefunction_csv(const WavefunctionForm& form, double a, double b, int n);

} // namespace qshift
