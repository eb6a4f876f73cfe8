/**
 * @file bigness.hpp
 * @brief Exact certificates that K on M̄_{3,n} is big plus effective.
 *
 * With t = n/56 and s = (13 + 73t)/9,
 *
 *     K - s·π*H̄ - t·D̄_n
 *
 * has no λ and no ψ part. Everything here is computed from the canonical
 * class formula, the pull-back rules and the averaged divisor D̄_n; no
 * coefficient of the difference is written down by hand.
 *
 * Perturbing to K - (s-9ε)π*H̄ - (t-ε)D̄_n leaves 8ελ + (56ε/n)ψ plus a
 * boundary part that is affine in ε. The certificate records the largest ε
 * keeping that boundary part non-negative (and both multipliers of the
 * effective classes non-negative); K is then big plus effective.
 */
#pragma once

#include "mgn/pullback.hpp"

#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgn {

inline constexpr int kBignessGenus = 3;
inline constexpr int kDefaultSweepUpperBound = 200;

struct BignessParameters {
    Rational s;
    Rational t;
};

inline BignessParameters bigness_parameters(int n) {
    Rational t(n, 56);
    Rational s = (13 + 73 * t) / 9;
    return {s, t};
}

/// K - s π*H̄ - t D̄_n, split into what is known exactly and the slack
/// contributed by D̄_n (entering with the non-negative multiplier t).
struct DifferenceClass {
    int n = 0;
    BignessParameters params;
    SymDivisorClass canonical;
    SymDivisorClass hyperelliptic_pullback;
    EffectiveClassWithSlack<SymDivisorClass> farkas_average;
    SymDivisorClass known;
};

inline DifferenceClass difference_class(int n) {
    if (n < kFarkasMarkings) throw std::invalid_argument("difference_class needs n >= 14");
    auto params = bigness_parameters(n);
    SymDivisorClass k = sym::canonical_class(kBignessGenus, n);
    SymDivisorClass h = average_pullback(sym::hyperelliptic_class(), n);
    auto d = symmetric_pullback_farkas(n);
    SymDivisorClass diff = k - params.s * h - params.t * d.known;
    if (diff.coeff(SymKey::lambda()) != 0 || diff.coeff(SymKey::psi()) != 0)
        throw std::logic_error("lambda/psi part of K - sH - tD does not vanish at n = " + std::to_string(n) + ": " +
                               diff.to_string());
    return {n, params, std::move(k), std::move(h), std::move(d), std::move(diff)};
}

/// D̄_n written as -73λ + (56/n)ω + 6δ_irr - c·δ_{0,2} minus an effective
/// remainder: whatever δ_{0,k} (k >= 3) carries beyond its ω share moves into
/// the slack. Throws if that amount is ever negative.
inline EffectiveClassWithSlack<SymDivisorClass> farkas_average_omega_form(const EffectiveClassWithSlack<SymDivisorClass>& d) {
    const int n = d.index().n;
    const Rational psi = d.known.coeff(SymKey::psi());
    SymDivisorClass spill(d.index());
    for (int k = 3; k <= n; ++k) spill.add_delta(0, k, -k * psi - d.known.coeff(SymKey::delta(0, k)));
    return d.absorb_into_slack(spill);
}

/// K - sπ*H̄ - tD̄_n with D̄_n in its ω form; the δ_{0,k} coefficients for
/// k >= 3 are then exactly k - 2.
inline DifferenceClass difference_class_omega_form(int n) {
    DifferenceClass d = difference_class(n);
    d.farkas_average = farkas_average_omega_form(d.farkas_average);
    d.known = d.canonical - d.params.s * d.hyperelliptic_pullback - d.params.t * d.farkas_average.known;
    return d;
}

/// One boundary coefficient of the ε-perturbed class: value + slope·ε.
struct LinearConstraint {
    std::string name;
    Rational value;
    Rational slope;
};

/// Every constraint that must stay >= 0: all boundary orbits, then t - ε and s - 9ε.
inline std::vector<LinearConstraint> perturbation_constraints(const DifferenceClass& d) {
    std::vector<LinearConstraint> out;
    // -(s-9ε)H - (t-ε)D = -sH - tD + ε(9H + D)
    SymDivisorClass direction = Rational(9) * d.hyperelliptic_pullback + d.farkas_average.known;
    for (const auto& key : sym_keys(d.known.index())) {
        if (!key.is_boundary()) continue;
        out.push_back({key.name(), d.known.coeff(key), direction.coeff(key)});
    }
    out.push_back({"t - epsilon", d.params.t, Rational(-1)});
    out.push_back({"s - 9 epsilon", d.params.s, Rational(-9)});
    return out;
}

enum class Verdict { Pass, Fail };

struct BignessCertificate {
    int n = 0;
    Rational s;
    Rational t;
    /// Exact boundary coefficients of K - sπ*H̄ - tD̄_n, per orbit.
    std::vector<std::pair<SymKey, Rational>> boundary_coefficients;
    /// Largest c with every δ_{1,k} coefficient >= c.
    Rational delta1_aggregate;
    std::optional<Rational> epsilon_max;
    /// λ and ψ coefficients of the perturbed class at epsilon_max.
    Rational lambda_residual;
    Rational psi_residual;
    Verdict verdict = Verdict::Fail;
    /// On Pass the constraint that pins epsilon_max; on Fail the violated one.
    std::string binding;
    Rational binding_value;
    std::vector<std::string> assumptions;

    Rational coefficient(const SymKey& key) const {
        for (const auto& [k, r] : boundary_coefficients)
            if (k == key) return r;
        return 0;
    }
};

inline std::vector<std::string> bigness_assumptions() {
    return {"a*lambda + b*psi is big on M_{g,n} for a, b > 0",
            "the closure of the hyperelliptic locus in M_3 is effective",
            "D^3_{3,14} is effective, known up to an effective boundary remainder"};
}

/// Largest ε > 0 admissible for the perturbation, or nullopt if some
/// coefficient is already non-positive at ε = 0.
inline std::optional<Rational> epsilon_max(const DifferenceClass& d, std::string* binding = nullptr) {
    std::optional<Rational> best;
    for (const auto& c : perturbation_constraints(d)) {
        if (c.value <= 0) return std::nullopt;
        if (c.slope >= 0) continue;
        Rational bound = c.value / -c.slope;
        if (!best || bound < *best) {
            best = bound;
            if (binding) *binding = c.name;
        }
    }
    return best;
}

inline std::optional<Rational> epsilon_max(int n) { return epsilon_max(difference_class(n)); }

inline BignessCertificate certify(int n) {
    DifferenceClass d = difference_class(n);
    BignessCertificate cert;
    cert.n = n;
    cert.s = d.params.s;
    cert.t = d.params.t;
    cert.assumptions = bigness_assumptions();

    std::optional<Rational> delta1_min;
    for (const auto& key : sym_keys(d.known.index())) {
        if (!key.is_boundary()) continue;
        Rational r = d.known.coeff(key);
        cert.boundary_coefficients.emplace_back(key, r);
        if (key.kind == SymKind::DeltaSym && key.genus == 1 && (!delta1_min || r < *delta1_min)) delta1_min = r;
    }
    cert.delta1_aggregate = delta1_min.value_or(0);

    for (const auto& c : perturbation_constraints(d)) {
        if (c.value <= 0) {
            cert.verdict = Verdict::Fail;
            cert.binding = c.name;
            cert.binding_value = c.value;
            return cert;
        }
    }

    std::string binding;
    auto eps = epsilon_max(d, &binding);
    if (!eps || *eps <= 0) {
        cert.verdict = Verdict::Fail;
        cert.binding = "epsilon";
        cert.binding_value = eps.value_or(0);
        return cert;
    }

    // Rebuild the perturbed class outright rather than trusting the constraint algebra.
    const Rational& e = *eps;
    SymDivisorClass perturbed = d.canonical - (d.params.s - 9 * e) * d.hyperelliptic_pullback -
                                (d.params.t - e) * d.farkas_average.known;
    cert.lambda_residual = perturbed.coeff(SymKey::lambda());
    cert.psi_residual = perturbed.coeff(SymKey::psi());
    if (cert.lambda_residual != 8 * e || cert.psi_residual != 56 * e / n)
        throw std::logic_error("perturbed class has unexpected lambda/psi part at n = " + std::to_string(n));
    for (const auto& [key, r] : perturbed.terms())
        if (key.is_boundary() && r < 0) throw std::logic_error("perturbed boundary coefficient negative: " + key.name());

    cert.epsilon_max = e;
    cert.verdict = Verdict::Pass;
    cert.binding = binding;
    cert.binding_value = e;
    return cert;
}

/// Certificates for n_lo..n_hi, computed concurrently, returned in order of n.
inline std::vector<BignessCertificate> sweep(int n_lo, int n_hi = kDefaultSweepUpperBound) {
    if (n_lo < kFarkasMarkings || n_hi < n_lo) throw std::invalid_argument("sweep needs 14 <= n_lo <= n_hi");
    std::vector<std::future<BignessCertificate>> jobs;
    for (int n = n_lo; n <= n_hi; ++n) jobs.push_back(std::async(std::launch::async, [n] { return certify(n); }));
    std::vector<BignessCertificate> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace mgn
