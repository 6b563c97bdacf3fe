#include "qshift/analytic.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qshift/deformed_hyperbolic.hpp"
#include "qshift/equivalence.hpp"
#include "qshift/error.hpp"
#include "qshift/format.hpp"

namespace qshift {
namespace {

double scale_of(double g, GScale mode) {
    return mode == GScale::printed ? g : std::sqrt(g);
}

double exponent_sign(ExponentSign sign) {
    return sign == ExponentSign::flipped ? 1.0 : -1.0;
}

// Neumaier's variant of Kahan summation.
#if defined(__SIZEOF_FLOAT128__)
#define QSHIFT_HAVE_FLOAT128 1
__extension__ typedef __float128 Quad;
#endif

// Sum of the terminating series and the sum of term magnitudes.
template <class T>
std::pair<T, T> hypergeometric_terms(int n, double b2, double c, double z) {
    T sum = 1;
    T magnitude = 1;
    T term = 1;
    for (int k = 1; k <= n; ++k) {
        term *= T(k - 1 - n) * (T(b2) + (k - 1)) / ((T(c) + (k - 1)) * k) * T(z);
        sum += term;
        magnitude += term < 0 ? -term : term;
    }
    return {sum, magnitude};
}

constexpr int kMaxLevels = 1 << 20;

} // namespace

std::string_view to_string(SignMode mode) {
    return mode == SignMode::paper_plus ? "paper_plus" : "pinned_minus";
}

std::string_view to_string(GScale scale) {
    return scale == GScale::printed ? "printed" : "sqrt_g";
}

std::string_view to_string(ExponentSign sign) {
    return sign == ExponentSign::printed ? "printed" : "flipped";
}

int g_exponent(GScale scale) { return scale == GScale::printed ? -2 : -1; }

SpectrumParams spectrum_params(const RosenMorseQ& spec, Interpretation interp) {
    const auto plain = std::get<RosenMorseQ>(canonicalize(spec).plain_spec);
    return {plain.B0, plain.U0, plain.alpha * plain.alpha, interp};
}

double level_gap(const SpectrumParams& params, int n) {
    if (n < 0) throw NoSuchLevelError("negative level index " + std::to_string(n));
    if (!(params.g > 0.0)) throw DomainError("g must be positive, got " + format_real(params.g));
    const double s = scale_of(params.g, params.interp.g_scale);
    const double disc = 4.0 * params.U0_eff + s * s;
    if (disc < 0.0) return -s * (2 * n + 1);
    return std::sqrt(disc) - s * (2 * n + 1);
}

double rosen_morse_level(const SpectrumParams& params, int n) {
    const double x = level_gap(params, n);
    if (!(x > 0.0)) {
        throw NoSuchLevelError("level " + std::to_string(n) + " does not exist (X_n = " + format_real(x) + ")");
    }
    const double x2 = x * x;
    const double tail = params.B0 * params.B0 / x2;
    return -0.25 * x2 + (params.interp.sign == SignMode::paper_plus ? tail : -tail);
}

int bound_state_count(const SpectrumParams& params) {
    const double limit = std::abs(params.B0);
    int n = 0;
    for (; n < kMaxLevels; ++n) {
        const double x = level_gap(params, n);
        if (!(x > 0.0) || !(x * x > 2.0 * limit)) break;
        if (!(rosen_morse_level(params, n) < -limit)) break;
    }
    return n;
}

Spectrum analytic_spectrum(const RosenMorseQ& spec, Interpretation interp) {
    const SpectrumParams params = spectrum_params(spec, interp);
    Spectrum out{{}, -std::abs(params.B0), SpectrumSource::analytic};
    const int count = bound_state_count(params);
    for (int n = 0; n < count; ++n) out.levels.push_back({n, rosen_morse_level(params, n), 0.0});
    return out;
}

double hypergeometric_polynomial(int n, double b2, double c, double z) {
    if (n < 0) throw DomainError("hypergeometric_polynomial needs n >= 0");
    for (int k = 0; k < n; ++k) {
        if (c + k == 0.0) {
            throw PoleError("hypergeometric lower parameter c = " + format_real(c) +
                            " makes (c)_k vanish for k <= n = " + std::to_string(n));
        }
    }
    const auto [sum, magnitude] = hypergeometric_terms<long double>(n, b2, c, z);
#ifdef QSHIFT_HAVE_FLOAT128
    // Strong cancellation: the long double rounding would survive into the result.
    if (magnitude > 100.0L * std::abs(sum)) {
        return static_cast<double>(hypergeometric_terms<Quad>(n, b2, c, z).first);
    }
#endif
    return static_cast<double>(sum);
}

WavefunctionForm build_wavefunction(int n, double B, double C, double alpha, Interpretation interp) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    if (!std::isfinite(B) || !std::isfinite(C)) throw DomainError("B and C must be finite");
    if (n < 0) throw NoSuchLevelError("negative level index " + std::to_string(n));

    const double g = alpha * alpha;
    const double s2 = std::pow(scale_of(g, interp.g_scale), 2);
    const double gamma = C / s2;
    const double root = std::sqrt(4.0 * gamma + 1.0);
    const double b = 0.5 * root - n - 0.5;
    if (!(b > 0.0)) {
        throw NotNormalizableError("level " + std::to_string(n) + " has b = " + format_real(b) + " <= 0");
    }
    const int count = bound_state_count({B, C, g, interp});
    if (n >= count) {
        throw NoSuchLevelError("level " + std::to_string(n) + " is not bound (" + std::to_string(count) +
                               " bound states)");
    }
    const double a = -B / (s2 * (root - 2.0 * n - 1.0));

    WavefunctionForm form{n, a, b, gamma, alpha, 1.0, 1.0, 1.0, interp.exponent};

    // Adaptive trapezoid on [-L, L]: halve the step until the integral settles.
    const double L = 40.0 / alpha;
    auto density = [&form](double x) {
        const double v = eval_wavefunction(form, x);
        return v * v;
    };
    int intervals = 1024;
    double h = 2.0 * L / intervals;
    double sum = 0.5 * (density(-L) + density(L));
    for (int i = 1; i < intervals; ++i) sum += density(-L + i * h);
    double integral = sum * h;
    for (int pass = 0; pass < 20; ++pass) {
        for (int i = 0; i < intervals; ++i) sum += density(-L + (i + 0.5) * h);
        intervals *= 2;
        h *= 0.5;
        const double refined = sum * h;
        const bool settled = std::abs(refined - integral) < 1e-10 * refined;
        integral = refined;
        if (settled && pass >= 1) break;
    }
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw NotNormalizableError("wavefunction norm integral is " + format_real(integral));
    }
    form.norm = 1.0 / std::sqrt(integral);
    return form;
}

double eval_wavefunction(const WavefunctionForm& form, double x) {
    if (!std::isfinite(x)) throw DomainError("wavefunction evaluated at non-finite x");
    const double u = form.alpha * x;
    const double root = std::sqrt(4.0 * form.gamma + 1.0);
    const double z = 0.5 * (1.0 + tanh_q(u, form.deformation));
    const double poly = hypergeometric_polynomial(form.n, root - form.n, form.a + form.b + 1.0, z);
    const double coef = form.norm * form.prefactor;
    if (poly == 0.0 || coef == 0.0) return 0.0;
    const double log_mag = exponent_sign(form.exponent) * form.a * u -
                           form.b * log_cosh_deformed({u, form.deformation}) + std::log(std::abs(poly)) +
                           std::log(std::abs(coef));
    const double sign = (poly < 0.0) != (coef < 0.0) ? -1.0 : 1.0;
    return sign * std::exp(log_mag);
}

namespace {

// Moves the form along x -> x + ln(q) / (2 alpha): the deformation is divided by q
// and the prefactor multiplied by q^{(sigma a - b) / 2}.
WavefunctionForm shift_form(const WavefunctionForm& form, double q, bool inverse) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError("translation parameter q must be positive, got " + format_real(q));
    }
    WavefunctionForm out = form;
    const double log_q = inverse ? -std::log(q) : std::log(q);
    out.prefactor *= std::exp(0.5 * (exponent_sign(form.exponent) * form.a - form.b) * log_q);
    out.deformation = inverse ? form.deformation * q : form.deformation / q;
    return out;
}

} // namespace

WavefunctionForm translate_wavefunction(const WavefunctionForm& form, double q) {
    return shift_form(form, q, false);
}

WavefunctionForm deform_wavefunction(const WavefunctionForm& form, double q) {
    return shift_form(form, q, true);
}

std::string wavefunction_csv(const WavefunctionForm& form, double a, double b, int n) {
    if (n < 1) throw DomainError("sample count must be positive");
    std::ostringstream os;
    os << "x,psi\n";
    for (int i = 0; i < n; ++i) {
        const double x = n == 1 ? a : a + (b - a) * i / (n - 1);
        os << format_real(x) << ',' << format_real(eval_wavefunction(form, x)) << '\n';
    }
    return os.str();
}

} // namespace qshift
