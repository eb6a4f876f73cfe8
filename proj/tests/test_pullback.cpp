#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace mgn;
using oracle::q;

namespace {

BasisElement sep(int i, std::initializer_list<int> s) { return BasisElement::delta_sep(i, MarkingSet::of(s)); }

/// A class with every generator present and distinct coefficients.
DivisorClass generic_class(ModuliIndex idx, int salt = 0) {
    DivisorClass c(idx);
    int k = 1 + salt;
    for (const auto& e : basis_elements(idx)) c.add(e, q(k++, 1 + (k % 5)));
    return c;
}

std::vector<int> iota_vec(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

}  // namespace

TEST(Pullback, SinglePointRules) {
    auto psi = pullback(psi_class(1, {3, 1}));
    DivisorClass want({3, 2});
    want.add(BasisElement::psi(1), 1).add(sep(0, {1, 2}), -1);
    EXPECT_EQ(psi, want);

    DivisorClass d({3, 0});
    d.add(sep(1, {}), 1);
    DivisorClass want_d({3, 1});
    want_d.add(sep(1, {}), 1).add(sep(1, {1}), 1);
    EXPECT_EQ(pullback(d), want_d);

    for (int n = 0; n <= 5; ++n) EXPECT_EQ(pullback(lambda_class({3, n})), lambda_class({3, n + 1}));
}

TEST(Pullback, HalfGenusWithoutMarkings) {
    DivisorClass d({2, 0});
    d.add(sep(1, {}), 1);
    DivisorClass want({2, 1});
    want.add(sep(1, {}), 1);
    EXPECT_EQ(pullback(d), want);
    EXPECT_EQ(pullback(d), oracle::single_step(d));
}

TEST(Pullback, HyperellipticToOnePoint) {
    auto h = pullback(hyperelliptic_class());
    EXPECT_EQ(h.coeff(sep(1, {})), -3);
    EXPECT_EQ(h.coeff(sep(1, {1})), -3);
    EXPECT_EQ(h.coeff(BasisElement::lambda()), 9);
}

TEST(Pullback, MultiExamples) {
    DivisorClass d({3, 0});
    d.add(sep(1, {}), 1);
    DivisorClass want({3, 2});
    want.add(sep(1, {}), 1).add(sep(1, {1}), 1).add(sep(1, {2}), 1).add(sep(1, {1, 2}), 1);
    EXPECT_EQ(pullback_multi(d, 2, {}), want);

    auto c = canonical_class(3, 4);
    EXPECT_EQ(pullback_multi(c, 4, {1, 2, 3, 4}), c);

    for (int n = 1; n <= 8; ++n)
        for (int j = 1; j <= n; ++j) EXPECT_EQ(pullback_multi(psi_class(1, {3, 1}), n, {j}), omega_class(j, 3, n));
}

TEST(Pullback, Errors) {
    EXPECT_THROW(pullback_multi(psi_class(1, {3, 2}), 4, {1, 1}), std::invalid_argument);
    EXPECT_THROW(pullback_multi(psi_class(1, {3, 2}), 4, {1, 5}), std::invalid_argument);
    EXPECT_THROW(pullback_multi(psi_class(1, {3, 2}), 4, {1}), std::invalid_argument);
    EXPECT_THROW(pullback(lambda_class({3, 1}), ForgetfulSpec::forget_last({3, 2})), std::invalid_argument);
}

TEST(Pullback, MatchesStepwiseOracleForEveryForgettingOrder) {
    for (int g = 1; g <= 3; ++g)
        for (int m = 0; m <= 3; ++m)
            for (int n = m; n <= 6; ++n) {
                ModuliIndex tgt{g, m};
                if (!tgt.stable()) continue;
                auto c = generic_class(tgt);
                std::vector<int> kept = iota_vec(m);
                std::reverse(kept.begin(), kept.end());
                for (auto& x : kept) x = n + 1 - x;  // keep the last m markings, reversed
                auto direct = pullback_multi(c, n, kept);
                std::vector<int> forgotten;
                for (int j = 1; j <= n; ++j)
                    if (std::find(kept.begin(), kept.end(), j) == kept.end()) forgotten.push_back(j);
                do {
                    EXPECT_EQ(oracle::pullback_by_steps(c, n, kept, forgotten), direct) << g << " " << m << "->" << n;
                } while (std::next_permutation(forgotten.begin(), forgotten.end()));
            }
}

TEST(Pullback, Functoriality) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        ModuliIndex idx{3, static_cast<int>(rng() % 4)};
        auto c1 = generic_class(idx, trial);
        auto c2 = generic_class(idx, 3 * trial + 1);
        Rational a = q(static_cast<long long>(rng() % 11) - 5, 3), b = q(static_cast<long long>(rng() % 7) + 1, 4);
        int n = idx.n + 1 + static_cast<int>(rng() % 3);
        auto kept = iota_vec(idx.n);
        EXPECT_EQ(pullback_multi(a * c1 + b * c2, n, kept), a * pullback_multi(c1, n, kept) + b * pullback_multi(c2, n, kept));
        // composition: (g,m) -> (g,m+1) -> (g,n)
        EXPECT_EQ(pullback_multi(pullback(c1), n, iota_vec(idx.n + 1)), pullback_multi(c1, n, kept));
    }
}

TEST(AveragePullback, ClosedFormMatchesBruteForceOnSmallIndices) {
    for (int g = 1; g <= 3; ++g)
        for (int m = 1; m <= 3; ++m)
            for (int n = m; n <= 7; ++n) {
                ModuliIndex tgt{g, m};
                if (!tgt.stable()) continue;
                SymDivisorClass s(tgt);
                int k = 1;
                for (const auto& key : sym_keys(tgt)) s.add(key, q(k++, 3));
                EXPECT_EQ(expand(average_pullback(s, n)), average_pullback_bruteforce(expand(s), n))
                    << g << " " << m << "->" << n;
            }
}

TEST(Farkas, MarkingCountAndClasses) {
    EXPECT_EQ(farkas_marking_count(3, 3), 14);
    EXPECT_EQ(farkas_marking_count(2, 1), 3);
    EXPECT_THROW(farkas_marking_count(1, 1), std::invalid_argument);

    auto f = farkas_class_sym(3, 3);
    EXPECT_EQ(f.index(), (ModuliIndex{3, 14}));
    EXPECT_EQ(f.known.coeff(SymKey::lambda()), -73);
    EXPECT_EQ(f.known.coeff(SymKey::psi()), 4);
    EXPECT_EQ(f.known.coeff(SymKey::delta_irr()), 6);
    EXPECT_EQ(f.known.coeff(SymKey::delta(0, 2)), -9);  // 4ω gives -8, the explicit term -1
    for (int k = 3; k <= 14; ++k) EXPECT_EQ(f.known.coeff(SymKey::delta(0, k)), -4 * k);
    EXPECT_TRUE(f.slack.all_boundary);
    EXPECT_FALSE(f.slack.contains(SymKey::lambda()));
    EXPECT_FALSE(f.slack.contains(SymKey::psi()));

    auto small = farkas_class(2, 1);
    DivisorClass want = Rational(-13) * lambda_class({2, 3}) + Rational(2) * omega_total(2, 3);
    want.add(BasisElement::delta_irr(), 1);
    for (auto s : {sep(0, {1, 2}), sep(0, {1, 3}), sep(0, {2, 3})}) want.add(s, -1);
    EXPECT_EQ(small.known, want);
    EXPECT_EQ(symmetrize(farkas_class(3, 3).known), f.known);
}

TEST(Farkas, SymmetricAverageClosedForm) {
    for (int n : {14, 15, 16, 20, 37, 56, 120}) {
        auto d = symmetric_pullback_farkas(n).known;
        EXPECT_EQ(d.coeff(SymKey::lambda()), -73);
        EXPECT_EQ(d.coeff(SymKey::psi()), q(56, n));
        EXPECT_EQ(d.coeff(SymKey::delta_irr()), 6);
        EXPECT_EQ(d.coeff(SymKey::delta(0, 2)), -q(182, n * (n - 1)) - q(112, n));
        for (int k = 3; k <= n; ++k) EXPECT_EQ(d.coeff(SymKey::delta(0, k)), -q(56 * k, n) - oracle::c_k(n, k));
        for (int k = 0; k <= n; ++k) EXPECT_EQ(d.coeff(SymKey::delta(1, k)), 0);
    }
    auto d15 = symmetric_pullback_farkas(15).known;
    EXPECT_EQ(d15.coeff(SymKey::delta(0, 2)), -q(182, 210) - q(112, 15));
    EXPECT_THROW(symmetric_pullback_farkas(13), std::invalid_argument);
}

TEST(Farkas, DisplayedFormIsAnEffectiveRelaxation) {
    // The short form without the spill-over c_k on δ_{0,k}, k >= 3, differs
    // from the exact average by a non-negative boundary class.
    for (int n : {14, 15, 16, 30, 80}) {
        auto exact = symmetric_pullback_farkas(n);
        SymDivisorClass display({3, n});
        display.add(SymKey::lambda(), -73).add(SymKey::psi(), q(56, n)).add(SymKey::delta_irr(), 6);
        display.add_delta(0, 2, -q(182, n * (n - 1)));
        for (int k = 2; k <= n; ++k) display.add_delta(0, k, -q(56 * k, n));
        SymDivisorClass f = display - exact.known;
        for (const auto& [k, r] : f.terms()) {
            EXPECT_TRUE(k.kind == SymKind::DeltaSym && k.genus == 0 && k.size >= 3) << k.name();
            EXPECT_GT(r, 0);
        }
        auto relaxed = exact.absorb_into_slack(f);
        EXPECT_EQ(relaxed.known, display);
    }
}

TEST(Slack, PropagatesThroughPullback) {
    DivisorClass known({3, 1});
    known.add(BasisElement::lambda(), 1);
    SlackSupport<BasisElement> support;
    support.elements.insert(sep(1, {}));
    EffectiveClassWithSlack<DivisorClass> c(known, support);
    auto p = pullback(c, ForgetfulSpec::forget_last({3, 1}));
    EXPECT_EQ(p.known, lambda_class({3, 2}));
    EXPECT_TRUE(p.slack.contains(sep(1, {})));
    EXPECT_TRUE(p.slack.contains(sep(1, {2})));
    EXPECT_FALSE(p.slack.contains(sep(1, {1})));

    SlackSupport<BasisElement> bad;
    bad.elements.insert(BasisElement::lambda());
    EXPECT_THROW((EffectiveClassWithSlack<DivisorClass>(known, bad)), std::invalid_argument);
    EXPECT_THROW(c.absorb_into_slack(lambda_class({3, 1})), std::invalid_argument);
    EXPECT_THROW(c.absorb_into_slack(Rational(-1) * delta_irr_class({3, 1})), std::invalid_argument);
}
