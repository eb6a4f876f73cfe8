/**
 * @file intersection.hpp
 * @brief The elliptic-tail test curve γ on M̄_{3,n} and rigid boundary components.
 *
 * γ is the class of the curve obtained by gluing a moving elliptic tail to a
 * fixed genus-2 curve with n+1 markings. Its pairing with the generators:
 *
 *     γ·κ₁ = 1/12,  γ·δ_irr = 1,  γ·δ_{1,∅} = -1/12,  everything else 0
 *
 * (ψ_j and every δ_{i,S} other than δ_{1,∅} included). The λ entry is not part
 * of that list; it follows from Mumford's relation κ₁ = 12λ + ψ - δ:
 *
 *     1/12 = 12(γ·λ) + 0 - (γ·δ_irr + γ·δ_{1,∅}) = 12(γ·λ) - 11/12,
 *
 * so γ·λ = 1/12. gamma_dot() uses the λ-basis table with this derived entry;
 * gamma_dot_kappa() uses the κ₁ table directly, and the two must agree.
 */
#pragma once

#include "mgn/picard.hpp"

#include <optional>

namespace mgn {

inline constexpr int kTestCurveGenus = 3;

namespace detail {

inline void require_genus3(ModuliIndex idx) {
    if (idx.g != kTestCurveGenus)
        throw std::invalid_argument("the elliptic-tail curve lives on M_{3,n}, got M_" + idx.to_string());
}

}  // namespace detail

/// Pairing of γ with one generator of the λ-basis (canonical, on (3,n)).
inline Rational gamma_pairing(const BasisElement& e, ModuliIndex idx) {
    detail::require_genus3(idx);
    switch (e.kind) {
        case BasisKind::Lambda: return Rational(1, 12);  // derived, see file comment
        case BasisKind::Psi: return 0;
        case BasisKind::DeltaIrr: return 1;
        case BasisKind::DeltaSep: return normalize(e, idx) == canonicalize(1, MarkingSet{}, idx) ? Rational(-1, 12) : Rational(0);
    }
    return 0;
}

inline Rational gamma_dot(const DivisorClass& c) {
    detail::require_genus3(c.index());
    Rational total = 0;
    for (const auto& [e, r] : c.terms()) total += r * gamma_pairing(e, c.index());
    return total;
}

inline Rational gamma_dot(const SymDivisorClass& c) {
    detail::require_genus3(c.index());
    return c.coeff(SymKey::lambda()) * Rational(1, 12) + c.coeff(SymKey::delta_irr()) -
           c.coeff(SymKey::delta(1, 0)) * Rational(1, 12);
}

/// Uses γ·κ₁ = 1/12 and the boundary entries; no λ entry is involved.
inline Rational gamma_dot_kappa(const KappaBasisClass& c) {
    detail::require_genus3(c.index());
    Rational total = c.kappa1 * Rational(1, 12);
    for (const auto& [e, r] : c.rest.terms()) {
        switch (e.kind) {
            case BasisKind::Lambda: throw std::invalid_argument("kappa-basis class carries a lambda term");
            case BasisKind::Psi: break;
            case BasisKind::DeltaIrr: total += r; break;
            case BasisKind::DeltaSep:
                if (e == canonicalize(1, MarkingSet{}, c.index())) total -= r * Rational(1, 12);
                break;
        }
    }
    return total;
}

/// A boundary divisor of the coarse space, as opposed to a stack class δ.
struct CoarseBoundaryDivisor {
    bool irreducible = false;
    int genus = 0;
    MarkingSet set;

    static CoarseBoundaryDivisor delta_irr() { return {true, 0, {}}; }
    static CoarseBoundaryDivisor separating(int i, MarkingSet s) { return {false, i, s}; }

    DivisorClass class_on(ModuliIndex idx) const {
        return irreducible ? coarse_irreducible_class(idx.g, idx.n) : coarse_boundary_class(genus, set, idx.g, idx.n);
    }
    std::string name() const { return irreducible ? "Delta_irr" : "Delta_" + std::to_string(genus) + "_" + set.to_string(); }
};

/// Thrown when the divisor is not swept out by curves of class γ.
class NotCoveredByTestCurve : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Δ_{1,∅} is alone in its S_n-orbit on M̄_{3,n}, so the size of the marking
/// set decides; this also works past the bitmask limit.
inline bool is_elliptic_tail(const CoarseBoundaryDivisor& e, ModuliIndex idx) {
    if (e.irreducible || !valid_separating_size(e.genus, e.set.size(), idx)) return false;
    if (idx.n <= kMaxMarkings && !e.set.subset_of(MarkingSet::all(idx.n))) return false;
    return canonical_sym_key(e.genus, e.set.size(), idx) == SymKey::delta(1, 0);
}

}  // namespace detail

inline bool covered_by_gamma(const CoarseBoundaryDivisor& e, ModuliIndex idx) {
    detail::require_genus3(idx);
    return detail::is_elliptic_tail(e, idx);
}

/// γ·[Δ_{1,∅}] = 2·(-1/12); γ meets no other separating divisor.
inline Rational gamma_dot_coarse(const CoarseBoundaryDivisor& e, ModuliIndex idx) {
    detail::require_genus3(idx);
    if (e.irreducible) return 1;
    return detail::is_elliptic_tail(e, idx) ? Rational(-1, 6) : Rational(0);
}

namespace detail {

inline std::optional<Rational> rigid_ratio(const Rational& dot_d, const CoarseBoundaryDivisor& e, ModuliIndex idx) {
    if (!covered_by_gamma(e, idx))
        throw NotCoveredByTestCurve(e.name() + " is not covered by elliptic-tail test curves on M_" + idx.to_string());
    Rational dot_e = gamma_dot_coarse(e, idx);
    if (dot_d < 0 && dot_e < 0) return dot_d / dot_e;
    return std::nullopt;
}

}  // namespace detail

/// If γ·d < 0 and γ·e < 0, (γ·d)/(γ·e)·e is a fixed part of |d|; returns that coefficient.
inline std::optional<Rational> rigid_component(const DivisorClass& d, const CoarseBoundaryDivisor& e) {
    return detail::rigid_ratio(gamma_dot(d), e, d.index());
}

inline std::optional<Rational> rigid_component(const SymDivisorClass& d, const CoarseBoundaryDivisor& e) {
    return detail::rigid_ratio(gamma_dot(d), e, d.index());
}

}  // namespace mgn
