/**
 * @file reid_tai.hpp
 * @brief Ages, quasi-reflections and pluricanonical lifting for diagonal
 *        cyclic actions.
 *
 * A generator of order k acting on C^d as diag(ζ_k^{a_1}, ..., ζ_k^{a_d}).
 * The age of g^l is Σ_j {l·a_j/k}. An element is junior when 0 < age < 1 and
 * a quasi-reflection when exactly one eigenvalue differs from 1. After
 * quotienting by the subgroup generated by quasi-reflections, V/G has
 * canonical singularities iff no element is junior, and an m-canonical form
 * vanishing to order b_j along {x_j = 0} lifts to a resolution when
 *
 *     Σ_j (b_j + m){l·a_j/k} >= m   for l = 1..k-1.
 *
 * Eigenvalues are kept as exact exponent/order pairs throughout.
 */
#pragma once

#include "mgn/rational.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgn::reid_tai {

/// Junior searches scan every power, so orders are capped.
inline constexpr int kMaxOrder = 10000;

/// exp(2πi·p/q) with 0 <= p < q and gcd(p,q) = 1.
struct RootOfUnity {
    int numerator = 0;
    int denominator = 1;

    static RootOfUnity turn(long long p, long long q) {
        if (q <= 0) throw std::invalid_argument("root of unity needs a positive denominator");
        p %= q;
        if (p < 0) p += q;
        long long g = std::gcd(p, q);
        if (g == 0) g = 1;
        return {static_cast<int>(p / g), static_cast<int>(q / g)};
    }
    static RootOfUnity one() { return {0, 1}; }
    static RootOfUnity minus_one() { return {1, 2}; }
    /// ζ_q^p
    static RootOfUnity zeta(int q, int p = 1) { return turn(p, q); }

    int order() const { return denominator; }
    Rational fraction() const { return Rational(numerator, denominator); }
    RootOfUnity operator*(const RootOfUnity& o) const {
        return turn(static_cast<long long>(numerator) * o.denominator + static_cast<long long>(o.numerator) * denominator,
                    static_cast<long long>(denominator) * o.denominator);
    }
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

    /// "1", "-1", or the turn fraction "p/q".
    std::string to_string() const {
        if (denominator == 1) return "1";
        if (denominator == 2) return "-1";
        return std::to_string(numerator) + "/" + std::to_string(denominator);
    }
};

/// Parses "1", "-1", "i", "-i", or a turn fraction "p/q" meaning exp(2πi p/q).
inline RootOfUnity parse_root(std::string_view text) {
    if (text == "1") return RootOfUnity::one();
    if (text == "-1") return RootOfUnity::minus_one();
    if (text == "i") return RootOfUnity::zeta(4);
    if (text == "-i") return RootOfUnity::zeta(4, 3);
    Rational r = parse_rational(text);
    Integer num = numerator_of(r), den = denominator_of(r);
    if (den > kMaxOrder) throw std::invalid_argument("root of unity order too large: " + std::string(text));
    return RootOfUnity::turn(num.convert_to<long long>() % den.convert_to<long long>(), den.convert_to<long long>());
}

inline Rational age_of(const std::vector<RootOfUnity>& eigenvalues) {
    Rational total = 0;
    for (const auto& z : eigenvalues) total += z.fraction();
    return total;
}

/// Order of a in Z/k.
inline int additive_order(long long a, int k) { return static_cast<int>(k / std::gcd(((a % k) + k) % k, static_cast<long long>(k))); }

/// A faithful diagonal action of a cyclic group of order k.
class CyclicAction {
public:
    CyclicAction(int order, std::vector<int> exponents) : order_(order), exponents_(std::move(exponents)) {
        if (order_ < 1 || order_ > kMaxOrder)
            throw std::invalid_argument("action order must lie in 1.." + std::to_string(kMaxOrder));
        if (exponents_.empty()) throw std::invalid_argument("action needs at least one coordinate");
        long long lcm = 1;
        for (int a : exponents_) {
            if (a < 0 || a >= order_) throw std::invalid_argument("exponent " + std::to_string(a) + " outside 0..k-1");
            lcm = std::lcm(lcm, static_cast<long long>(additive_order(a, order_)));
        }
        if (lcm != order_)
            throw std::invalid_argument("exponents generate a group of order " + std::to_string(lcm) + ", not " +
                                        std::to_string(order_));
    }

    /// The cyclic group generated by diag(z_1, ..., z_d), with k = lcm of the orders.
    static CyclicAction from_eigenvalues(const std::vector<RootOfUnity>& eigenvalues) {
        long long k = 1;
        for (const auto& z : eigenvalues) k = std::lcm(k, static_cast<long long>(z.denominator));
        if (k > kMaxOrder) throw std::invalid_argument("eigenvalues generate a group that is too large");
        std::vector<int> exps;
        for (const auto& z : eigenvalues) exps.push_back(static_cast<int>(z.numerator * (k / z.denominator)));
        return CyclicAction(static_cast<int>(k), std::move(exps));
    }

    int order() const { return order_; }
    int dimension() const { return static_cast<int>(exponents_.size()); }
    const std::vector<int>& exponents() const { return exponents_; }

    /// {l·a_j/k}
    Rational fraction(int j, int l) const {
        long long e = (static_cast<long long>(l) * exponents_[j]) % order_;
        return Rational(e, order_);
    }
    bool moves(int j, int l) const { return (static_cast<long long>(l) * exponents_[j]) % order_ != 0; }

    std::vector<RootOfUnity> eigenvalues(int l = 1) const {
        std::vector<RootOfUnity> out;
        for (int a : exponents_) out.push_back(RootOfUnity::turn(static_cast<long long>(l) * a, order_));
        return out;
    }

    friend bool operator==(const CyclicAction&, const CyclicAction&) = default;

    std::string to_string() const {
        std::string out = "k=" + std::to_string(order_) + " (";
        for (std::size_t j = 0; j < exponents_.size(); ++j) out += (j ? "," : "") + std::to_string(exponents_[j]);
        return out + ")";
    }

private:
    int order_;
    std::vector<int> exponents_;
};

namespace detail {

inline void require_power(const CyclicAction& g, int l) {
    if (l < 1 || l > g.order() - 1)
        throw std::invalid_argument("power " + std::to_string(l) + " outside 1.." + std::to_string(g.order() - 1));
}

}  // namespace detail

inline Rational age(const CyclicAction& g, int l) {
    detail::require_power(g, l);
    Rational total = 0;
    for (int j = 0; j < g.dimension(); ++j) total += g.fraction(j, l);
    return total;
}

inline bool is_quasi_reflection(const CyclicAction& g, int l) {
    int moved = 0;
    for (int j = 0; j < g.dimension(); ++j) moved += g.moves(j, l) ? 1 : 0;
    return moved == 1;
}

inline bool has_quasi_reflections(const CyclicAction& g) {
    for (int l = 1; l < g.order(); ++l)
        if (is_quasi_reflection(g, l)) return true;
    return false;
}

struct JuniorElement {
    int power;
    Rational age;
};

inline std::vector<JuniorElement> junior_elements(const CyclicAction& g) {
    std::vector<JuniorElement> out;
    for (int l = 1; l < g.order(); ++l) {
        Rational a = age(g, l);
        if (a > 0 && a < 1) out.push_back({l, a});
    }
    return out;
}

struct ReductionResult {
    CyclicAction reduced;
    /// y_j = x_j^{λ_j}
    std::vector<int> lambdas;
    /// m_j: least m > 0 with g^m fixing every x_i, i != j.
    std::vector<int> quasi_reflection_powers;
};

/// Quotient by the subgroup H = <g^{m_1}, ..., g^{m_d}> generated by the
/// quasi-reflections. C^d/H is affine space in y_j = x_j^{λ_j}, λ_j = k/m_j,
/// and gH acts on it with eigenvalue fractions {λ_j a_j / k} = {a_j / m_j}.
inline ReductionResult reduce_quasi_reflections(const CyclicAction& g) {
    const int k = g.order();
    const int d = g.dimension();
    std::vector<int> m(d), lambdas(d);
    for (int j = 0; j < d; ++j) {
        long long mj = 1;
        for (int i = 0; i < d; ++i)
            if (i != j) mj = std::lcm(mj, static_cast<long long>(additive_order(g.exponents()[i], k)));
        m[j] = static_cast<int>(mj);
        lambdas[j] = k / m[j];
    }
    // H = <g^{gcd(m_j)}>, so G/H has order gcd(m_1, ..., m_d).
    int reduced_order = 0;
    for (int mj : m) reduced_order = std::gcd(reduced_order, mj);
    std::vector<int> exps(d);
    for (int j = 0; j < d; ++j) {
        // {a_j/m_j} written over the denominator reduced_order; m_j | k' would
        // be false in general, but a_j·k'/m_j is integral because g^{k'} ∈ H
        // acts trivially on y_j.
        long long num = static_cast<long long>(g.exponents()[j]) * reduced_order;
        if (num % m[j] != 0) throw std::logic_error("quasi-reflection quotient is not well defined for " + g.to_string());
        exps[j] = static_cast<int>((num / m[j]) % reduced_order);
    }
    return {CyclicAction(reduced_order, std::move(exps)), std::move(lambdas), std::move(m)};
}

/// Canonical iff the quasi-reflection-free quotient has no junior element.
inline bool is_canonical(const CyclicAction& g) { return junior_elements(reduce_quasi_reflections(g).reduced).empty(); }

struct LiftingQuery {
    CyclicAction action;
    int m = 1;
    std::vector<int> vanishing;
};

class QuasiReflectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void validate(const LiftingQuery& q) {
    if (q.m < 1) throw std::invalid_argument("pluricanonical weight must be positive");
    if (static_cast<int>(q.vanishing.size()) != q.action.dimension())
        throw std::invalid_argument("need one vanishing order per coordinate");
    for (int b : q.vanishing)
        if (b < 0) throw std::invalid_argument("vanishing orders must be non-negative");
    if (has_quasi_reflections(q.action))
        throw QuasiReflectionError("action " + q.action.to_string() +
                                   " contains quasi-reflections; reduce it with reduce_quasi_reflections() first");
}

}  // namespace detail

/// Σ_j (b_j + m){l r_j} - m for l = 1..k-1 (index l-1). Requires a quasi-reflection-free action.
inline std::vector<Rational> lifting_margins(const LiftingQuery& q) {
    detail::validate(q);
    std::vector<Rational> out;
    for (int l = 1; l < q.action.order(); ++l) {
        Rational lhs = 0;
        for (int j = 0; j < q.action.dimension(); ++j) lhs += (q.vanishing[j] + q.m) * q.action.fraction(j, l);
        out.push_back(lhs - q.m);
    }
    return out;
}

inline bool lifts(const LiftingQuery& q) {
    for (const auto& margin : lifting_margins(q))
        if (margin < 0) return false;
    return true;
}

struct ConventionalLift {
    ReductionResult reduction;
    bool lifts = false;
    /// Vanishing orders are carried to the quotient coordinates unchanged.
    static constexpr bool convention_dependent = true;
};

/// Reduces first, then tests the lifting inequality with b carried over index by index.
inline ConventionalLift reduce_then_lift(const CyclicAction& g, int m, const std::vector<int>& vanishing) {
    auto red = reduce_quasi_reflections(g);
    bool ok = lifts(LiftingQuery{red.reduced, m, vanishing});
    return {std::move(red), ok};
}

/// Least β >= 0 such that vanishing β·m along coordinate j (and nothing else)
/// satisfies the lifting inequality; nullopt if no β works. The inequality is
/// homogeneous in (b, m), so β does not depend on m.
inline std::optional<Rational> minimal_relative_vanishing(const CyclicAction& g, int j) {
    if (j < 0 || j >= g.dimension()) throw std::invalid_argument("coordinate out of range");
    if (has_quasi_reflections(g)) throw QuasiReflectionError("reduce the action before asking for vanishing orders");
    Rational beta = 0;
    for (int l = 1; l < g.order(); ++l) {
        Rational a = age(g, l);
        if (a >= 1) continue;
        Rational r = g.fraction(j, l);
        if (r == 0) return std::nullopt;
        Rational need = (1 - a) / r;
        if (need > beta) beta = need;
    }
    return beta;
}

// ---------------------------------------------------------------------------
// Elliptic tails
// ---------------------------------------------------------------------------

enum class TailVerdict { Canonical, LiftsGivenVanishing, NonCanonicalWithoutVanishing };

enum class TailRoute {
    RealEigenvalues,         ///< (±1, ..., ±1)
    Order4Tail,              ///< (±i, -1, ±1, ...): g² is a quasi-reflection, the quotient has no junior
    Order6JuniorLifts,       ///< (ζ6, ζ6², 1, ...): junior after reduction, lifts when b_1 >= m
    Order6ReducedCanonical,  ///< quasi-reflection removed, quotient has no junior
    Order6NoJunior,          ///< no junior element at all
};

inline std::string to_string(TailVerdict v) {
    switch (v) {
        case TailVerdict::Canonical: return "canonical";
        case TailVerdict::LiftsGivenVanishing: return "non-canonical; lifts given vanishing";
        case TailVerdict::NonCanonicalWithoutVanishing: return "non-canonical";
    }
    return {};
}

inline std::string to_string(TailRoute r) {
    switch (r) {
        case TailRoute::RealEigenvalues: return "real eigenvalues: all ages are half-integers";
        case TailRoute::Order4Tail: return "j=1728 tail: square is a quasi-reflection, quotient has no junior";
        case TailRoute::Order6JuniorLifts: return "j=0 tail: junior after removing the cube, lifts when b1 >= m";
        case TailRoute::Order6ReducedCanonical: return "j=0 tail: quotient by the quasi-reflection has no junior";
        case TailRoute::Order6NoJunior: return "j=0 tail: no junior elements";
    }
    return {};
}

struct TailClassification {
    TailVerdict verdict;
    TailRoute route;
    CyclicAction action;
    ReductionResult reduction;
    std::vector<JuniorElement> juniors;
    /// Least b_1/m making forms lift, when non-canonical.
    std::optional<Rational> required_vanishing;
    /// Non-canonical j=0 tail signature (ζ6, ζ6², 1, ..., 1).
    bool j0_signature = false;
};

/// Classifies the automorphism of a curve with an elliptic tail from its
/// eigenvalues on first-order deformations; the first coordinate is the
/// smoothing parameter of the node joining the tail.
inline TailClassification classify_elliptic_tail(const std::vector<RootOfUnity>& pattern) {
    auto real = [](const RootOfUnity& z) { return z.denominator <= 2; };
    auto rest_real = [&](std::size_t from) {
        for (std::size_t j = from; j < pattern.size(); ++j)
            if (!real(pattern[j])) return false;
        return true;
    };
    if (pattern.size() < 1) throw std::invalid_argument("empty eigenvalue pattern");

    std::optional<TailRoute> family;
    if (rest_real(0)) {
        family = TailRoute::RealEigenvalues;
    } else if (pattern.size() >= 2 && pattern[0].denominator == 4 && pattern[1] == RootOfUnity::minus_one() &&
               rest_real(2)) {
        family = TailRoute::Order4Tail;
    } else if (pattern.size() >= 2 && (pattern[0] == RootOfUnity::zeta(6) || pattern[0] == RootOfUnity::zeta(6, 4)) &&
               pattern[1] == RootOfUnity::zeta(6, 2) && rest_real(2)) {
        family = TailRoute::Order6NoJunior;
    }
    if (!family)
        throw std::invalid_argument("eigenvalues are not of the form (±1,..), (±i,-1,±1,..) or (±ζ6,ζ6²,±1,..)");

    CyclicAction action = CyclicAction::from_eigenvalues(pattern);
    auto reduction = reduce_quasi_reflections(action);
    auto juniors = junior_elements(reduction.reduced);

    TailClassification out{TailVerdict::Canonical, *family, action, reduction, juniors, std::nullopt, false};
    if (juniors.empty()) {
        if (*family == TailRoute::Order6NoJunior && has_quasi_reflections(action))
            out.route = TailRoute::Order6ReducedCanonical;
        return out;
    }
    out.required_vanishing = minimal_relative_vanishing(reduction.reduced, 0);
    const bool b1_is_enough = out.required_vanishing && *out.required_vanishing <= 1;
    out.verdict = b1_is_enough ? TailVerdict::LiftsGivenVanishing : TailVerdict::NonCanonicalWithoutVanishing;
    if (*family == TailRoute::Order6NoJunior) {
        out.route = TailRoute::Order6JuniorLifts;
        out.j0_signature = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nodes permuted by an automorphism
// ---------------------------------------------------------------------------

namespace detail {

inline void validate_orbit(int order, int orbit) {
    if (order < 1 || orbit < 1) throw std::invalid_argument("orders must be positive");
    if (order % orbit != 0)
        throw std::invalid_argument("orbit length " + std::to_string(orbit) + " does not divide " + std::to_string(order));
}

}  // namespace detail

/// Age contributed by the smoothing parameters of an orbit of m nodes cyclically
/// permuted by φ of order N, on the eigenspace of residue l: m·l/N + (m-1)/2.
inline Rational node_orbit_contribution(int order, int orbit, int l) {
    detail::validate_orbit(order, orbit);
    const int period = order / orbit;
    if (l < 1 || l > period - 1)
        throw std::invalid_argument("residue must lie in 1.." + std::to_string(period - 1));
    return Rational(orbit * (l % period), order) + Rational(orbit - 1, 2);
}

/// m/N + (m-1)/2, the minimum over l.
inline Rational node_orbit_lower_bound(int order, int orbit) {
    detail::validate_orbit(order, orbit);
    return Rational(orbit, order) + Rational(orbit - 1, 2);
}

// ---------------------------------------------------------------------------
// Junior automorphisms of smooth pointed curves
// ---------------------------------------------------------------------------

struct AutomorphismCase {
    int case_number;
    int genus;
    int fixed_points;    ///< r
    int swapped_pairs;   ///< s
    std::string curve;
    std::string automorphism;
    int order;
    std::vector<RootOfUnity> eigenvalues;

    Rational age() const { return age_of(eigenvalues); }
    int nontrivial_eigenvalues() const {
        int c = 0;
        for (const auto& z : eigenvalues) c += z.denominator != 1 ? 1 : 0;
        return c;
    }
};

/// Smooth pointed curves with a junior automorphism outside the generic exceptions.
inline std::vector<AutomorphismCase> table1_catalog() {
    using R = RootOfUnity;
    return {
        {1, 1, 1, 0, "any", "order 2", 2, {R::one()}},
        {2, 1, 2, 0, "any", "order 2", 2, {R::one(), R::minus_one()}},
        {3, 1, 1, 0, "j = 0", "order 3", 3, {R::zeta(3, 2)}},
        {4, 1, 1, 0, "j = 0", "order 6", 6, {R::zeta(6, 2)}},
        {5, 1, 1, 0, "j = 1728", "order 4", 4, {R::minus_one()}},
        {6, 1, 2, 0, "j = 1728", "order 4", 4, {R::minus_one(), R::zeta(4)}},
        {7, 2, 1, 0, "any", "hyperelliptic involution", 2, {R::one(), R::one(), R::one(), R::minus_one()}},
        {8, 3, 0, 0, "hyperelliptic", "hyperelliptic involution", 2,
         {R::one(), R::one(), R::one(), R::one(), R::one(), R::minus_one()}},
    };
}

}  // namespace mgn::reid_tai
