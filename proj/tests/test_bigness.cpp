#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mgn;
using oracle::q;

TEST(Parameters, SAndT) {
    EXPECT_EQ(bigness_parameters(15).s, q(1823, 504));
    EXPECT_EQ(bigness_parameters(15).t, q(15, 56));
    EXPECT_EQ(bigness_parameters(14).s, q(125, 36));
    EXPECT_EQ(bigness_parameters(56).t, 1);
    EXPECT_EQ(bigness_parameters(56).s, q(86, 9));
    for (int n = 14; n <= 60; ++n) {
        EXPECT_EQ(bigness_parameters(n).s, oracle::s_of(n));
        EXPECT_EQ(bigness_parameters(n).t, oracle::t_of(n));
    }
}

TEST(Difference, LambdaAndPsiVanish) {
    for (int n = 14; n <= 200; ++n) {
        auto d = difference_class(n);
        EXPECT_EQ(d.known.coeff(SymKey::lambda()), 0);
        EXPECT_EQ(d.known.coeff(SymKey::psi()), 0);
    }
    EXPECT_THROW(difference_class(13), std::invalid_argument);
}

TEST(Difference, FrozenValuesAtFifteen) {
    auto d = difference_class(15);
    EXPECT_EQ(d.known.coeff(SymKey::delta_irr()), q(5, 504));
    EXPECT_EQ(d.known.coeff(SymKey::delta(0, 2)), q(13, 56));
    EXPECT_EQ(d.known.coeff(SymKey::delta(1, 0)), q(1319, 168));
}

TEST(Difference, MatchesClosedFormsPerOrbit) {
    for (int n : {14, 15, 16, 17, 20, 33, 56, 100, 200}) {
        auto d = difference_class(n);
        EXPECT_EQ(d.known.coeff(SymKey::delta_irr()), oracle::diff_delta_irr(n)) << n;
        for (int k = 2; k <= n; ++k) EXPECT_EQ(d.known.coeff(SymKey::delta(0, k)), oracle::diff_delta0(n, k)) << n << " " << k;
        for (int k = 0; k <= n; ++k) EXPECT_EQ(d.known.coeff(SymKey::delta(1, k)), oracle::diff_delta1(n, k)) << n << " " << k;
    }
}

TEST(Difference, NamedFamiliesEmergeWithNonNegativeResidues) {
    for (int n : {15, 16, 20, 56}) {
        const auto [s, t] = bigness_parameters(n);
        auto d = difference_class(n);
        EXPECT_EQ(d.known.coeff(SymKey::delta_irr()), s - 6 * t - 2);
        EXPECT_EQ(d.known.coeff(SymKey::delta(1, 0)), 3 * s - 3);
        for (int k = 1; k <= n; ++k) EXPECT_EQ(d.known.coeff(SymKey::delta(1, k)) - (3 * s - 3), 1);
        EXPECT_EQ(d.known.coeff(SymKey::delta(0, 2)), 182 * t / (n * (n - 1)));
        for (int k = 3; k <= n; ++k) {
            Rational residue = d.known.coeff(SymKey::delta(0, k)) - (k - 2);
            EXPECT_GE(residue, 0);
            EXPECT_EQ(residue, t * oracle::c_k(n, k));
        }
    }
}

TEST(Epsilon, MatchesEnumerationOracle) {
    EXPECT_EQ(epsilon_max(15), q(5, 1512));
    EXPECT_FALSE(epsilon_max(14).has_value());
    for (int n = 14; n <= 120; ++n) {
        auto want = oracle::epsilon_max(n);
        std::string binding;
        auto got = epsilon_max(difference_class(n), &binding);
        ASSERT_EQ(got.has_value(), want.eps.has_value()) << n;
        if (got) {
            EXPECT_EQ(*got, *want.eps) << n;
            EXPECT_EQ(binding, want.binding) << n;
        }
    }
}

TEST(Certificate, FifteenPasses) {
    auto c = certify(15);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.s, q(1823, 504));
    EXPECT_EQ(c.t, q(15, 56));
    EXPECT_EQ(c.coefficient(SymKey::delta_irr()), q(5, 504));
    EXPECT_EQ(*c.epsilon_max, q(5, 1512));
    EXPECT_EQ(c.binding, "delta_irr");
    EXPECT_EQ(c.lambda_residual, q(5, 189));
    EXPECT_EQ(c.psi_residual, 56 * q(5, 1512) / 15);
    EXPECT_EQ(c.delta1_aggregate, 3 * c.s - 3);
    EXPECT_FALSE(c.assumptions.empty());
}

TEST(Certificate, FourteenFailsOnDeltaIrr) {
    auto c = certify(14);
    EXPECT_EQ(c.verdict, Verdict::Fail);
    EXPECT_EQ(c.binding, "delta_irr");
    EXPECT_EQ(c.binding_value, q(-1, 36));
    EXPECT_FALSE(c.epsilon_max.has_value());
}

TEST(Certificate, FiftySix) {
    auto c = certify(56);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.t, 1);
    EXPECT_EQ(c.s, q(86, 9));
}

TEST(Sweep, MonotoneVerdictsAndSafeMultipliers) {
    auto certs = sweep(14, 200);
    ASSERT_EQ(certs.size(), 187u);
    bool passed = false;
    Rational prev_margin = -1;
    for (const auto& c : certs) {
        EXPECT_EQ(c.n, certs.front().n + (&c - &certs.front()));
        if (passed) EXPECT_EQ(c.verdict, Verdict::Pass) << c.n;
        passed |= c.verdict == Verdict::Pass;
        EXPECT_EQ(c.verdict == Verdict::Pass, c.n >= 15);
        Rational margin = c.coefficient(SymKey::delta_irr());
        EXPECT_GT(margin, prev_margin);
        prev_margin = margin;
        if (c.verdict == Verdict::Pass) {
            const Rational& e = *c.epsilon_max;
            EXPECT_GT(e, 0);
            EXPECT_GE(c.t, 0);
            EXPECT_GE(c.t - e, 0);
            EXPECT_GE(c.s, 0);
            EXPECT_GE(c.s - 9 * e, 0);
            EXPECT_EQ(c.lambda_residual, 8 * e);
            EXPECT_EQ(c.psi_residual, 56 * e / c.n);
            for (const auto& [k, r] : c.boundary_coefficients) EXPECT_GT(r, 0) << c.n << " " << k.name();
        }
    }
    EXPECT_THROW(sweep(13, 20), std::invalid_argument);
}

TEST(Difference, OmegaFormGivesTheShortFamiliesExactly) {
    for (int n : {15, 16, 20, 56, 150}) {
        const auto [s, t] = bigness_parameters(n);
        auto d = difference_class_omega_form(n);
        EXPECT_EQ(d.known.coeff(SymKey::lambda()), 0);
        EXPECT_EQ(d.known.coeff(SymKey::psi()), 0);
        EXPECT_EQ(d.known.coeff(SymKey::delta_irr()), s - 6 * t - 2);
        EXPECT_EQ(d.known.coeff(SymKey::delta(0, 2)), 182 * t / (n * (n - 1)));
        for (int k = 3; k <= n; ++k) EXPECT_EQ(d.known.coeff(SymKey::delta(0, k)), k - 2);
        EXPECT_EQ(d.known.coeff(SymKey::delta(1, 0)), 3 * s - 3);
        EXPECT_TRUE(d.farkas_average.slack.all_boundary);
        // the ω form only loses information: exact minus short is t·(spill-over) >= 0
        SymDivisorClass gap = difference_class(n).known - d.known;
        for (const auto& [k, r] : gap.terms()) EXPECT_GT(r, 0) << k.name();
    }
}
