#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "qshift/deformed_hyperbolic.hpp"
#include "qshift/error.hpp"

namespace {

using qshift::HyperbolicKind;
using Big = boost::multiprecision::cpp_bin_float_50;

// sinh_q / cosh_q straight from the exponential definition in 50 digits.
Big big_deformed(HyperbolicKind kind, double u, double q) {
    const Big bu(u);
    const Big bq(q);
    const Big ep = exp(bu);
    const Big em = exp(-bu);
    const Big s = (ep - bq * em) / 2;
    const Big c = (ep + bq * em) / 2;
    switch (kind) {
    case HyperbolicKind::sinh: return s;
    case HyperbolicKind::cosh: return c;
    case HyperbolicKind::tanh: return s / c;
    case HyperbolicKind::sech: return 1 / c;
    }
    return 0;
}

double rel_err(double got, const Big& want) {
    const Big diff = abs(Big(got) - want);
    const Big denom = abs(want);
    return denom == 0 ? static_cast<double>(diff) : static_cast<double>(diff / denom);
}

} // namespace

TEST(DeformedHyperbolic, FixedValues) {
    EXPECT_EQ(qshift::sinh_q(0.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(qshift::cosh_q(0.0, 4.0), 2.5);
    EXPECT_NEAR(qshift::tanh_q(40.0, 7.0), 1.0, 1e-15);
}

TEST(DeformedHyperbolic, ShiftIdentityAgainstExtendedPrecision) {
    const double u = 1.3;
    const double q = 5.0;
    const Big want = sqrt(Big(q)) * sinh(Big(u) - log(Big(q)) / 2);
    EXPECT_LT(rel_err(qshift::sinh_q(u, q), want), 1e-14);
}

TEST(DeformedHyperbolic, ShiftRepresentation) {
    auto s1 = qshift::shift_representation(1.0);
    EXPECT_EQ(s1.scale, 1.0);
    EXPECT_EQ(s1.shift, 0.0);
    auto s4 = qshift::shift_representation(4.0);
    EXPECT_DOUBLE_EQ(s4.scale, 2.0);
    EXPECT_DOUBLE_EQ(s4.shift, std::log(2.0));
    auto se = qshift::shift_representation(std::exp(2.0));
    EXPECT_NEAR(se.scale, std::numbers::e, 1e-15);
    EXPECT_NEAR(se.shift, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(se.shift, std::log(se.scale));
}

TEST(DeformedHyperbolic, RejectsBadInput) {
    EXPECT_THROW(qshift::shift_representation(0.0), qshift::DomainError);
    EXPECT_THROW(qshift::shift_representation(-1.0), qshift::DomainError);
    EXPECT_THROW(qshift::sinh_q(1.0, -2.0), qshift::DomainError);
    EXPECT_THROW(qshift::cosh_q(NAN, 2.0), qshift::DomainError);
    EXPECT_THROW(qshift::tanh_q(INFINITY, 2.0), qshift::DomainError);
    EXPECT_THROW(qshift::log_cosh_deformed({1.0, 0.0}), qshift::DomainError);
}

TEST(DeformedHyperbolic, AllKindsMatchExtendedPrecision) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> du(-30.0, 30.0);
    std::uniform_real_distribution<double> dlq(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double u = du(rng);
        const double q = std::pow(10.0, dlq(rng));
        for (auto kind : {HyperbolicKind::sinh, HyperbolicKind::cosh, HyperbolicKind::tanh, HyperbolicKind::sech}) {
            const double got = qshift::eval_deformed(kind, {u, q});
            const Big want = big_deformed(kind, u, q);
            // sinh_q has a zero at u = ln(q)/2, so compare against the cancellation-free scale there
            const double scale = kind == HyperbolicKind::sinh
                ? 1.0 + std::sqrt(q) * std::abs(std::sinh(u - 0.5 * std::log(q)))
                : std::abs(static_cast<double>(want));
            EXPECT_LE(std::abs(static_cast<double>(Big(got) - want)), 4e-15 * scale)
                << "kind=" << static_cast<int>(kind) << " u=" << u << " q=" << q;
        }
    }
}

TEST(DeformedHyperbolic, PythagoreanIdentity) {
    for (double q : {1e-3, 0.3, 1.0, 7.0, 1e3}) {
        for (double u = -20.0; u <= 20.0; u += 0.37) {
            const double c = qshift::cosh_q(u, q);
            const double s = qshift::sinh_q(u, q);
            // c^2 - s^2 cancels, so the bound is relative to the larger of its terms
            EXPECT_LE(std::abs(c * c - s * s - q), 1e-12 * std::max(q, c * c)) << "u=" << u << " q=" << q;
        }
    }
}

TEST(DeformedHyperbolic, QEqualsOneIsStandard) {
    for (double u = -25.0; u <= 25.0; u += 0.41) {
        EXPECT_NEAR(qshift::sinh_q(u, 1.0), std::sinh(u), 1e-15 * (1 + std::abs(std::sinh(u))));
        EXPECT_NEAR(qshift::cosh_q(u, 1.0), std::cosh(u), 1e-15 * std::cosh(u));
        EXPECT_NEAR(qshift::tanh_q(u, 1.0), std::tanh(u), 1e-15);
        EXPECT_NEAR(qshift::sech_q(u, 1.0), 1.0 / std::cosh(u), 1e-15 / std::cosh(u) + 1e-300);
        EXPECT_NEAR(qshift::log_cosh(u), std::log(std::cosh(u)), 1e-14 * (1 + std::abs(u)));
    }
}

TEST(DeformedHyperbolic, TanhMonotoneAndBounded) {
    for (double q : {0.01, 1.0, 50.0}) {
        double prev = -2.0;
        for (double u = -25.0; u <= 25.0; u += 0.01) {
            const double t = qshift::tanh_q(u, q);
            // far from the centre tanh_q rounds to +-1, so strictness is only checked inside
            if (std::abs(u - 0.5 * std::log(q)) <= 15.0) {
                EXPECT_GT(t, prev) << "u=" << u << " q=" << q;
            } else {
                EXPECT_GE(t, prev);
            }
            EXPECT_GE(t, -1.0);
            EXPECT_LE(t, 1.0);
            prev = t;
        }
    }
}

TEST(DeformedHyperbolic, StablePathFarOut) {
    // beyond the threshold the shifted path must still be finite and exact
    const double q = 1e3;
    const double u = 300.0;
    EXPECT_TRUE(std::isfinite(qshift::sech_q(u, q)));
    EXPECT_GT(qshift::sech_q(u, q), 0.0);
    const double lc = qshift::log_cosh_deformed({u, q});
    EXPECT_NEAR(lc, u - std::log(2.0), 1e-12 * u);
    EXPECT_EQ(qshift::tanh_q(-300.0, q), -1.0);
}

TEST(DeformedHyperbolic, DirectAndShiftedPathsAgree) {
    for (double q : {0.05, 2.0, 20.0}) {
        for (double u = -10.0; u <= 10.0; u += 0.5) {
            for (auto kind : {HyperbolicKind::cosh, HyperbolicKind::tanh, HyperbolicKind::sech}) {
                const double d = qshift::eval_deformed_direct(kind, {u, q});
                const double s = qshift::eval_deformed_shifted(kind, {u, q});
                EXPECT_NEAR(d, s, 1e-14 * std::max(1.0, std::abs(d)));
            }
        }
    }
}
