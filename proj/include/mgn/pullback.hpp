/**
 * @file pullback.hpp
 * @brief Pull-backs along forgetful maps and the symmetric pull-back of the
 *        divisor of pointed curves with h^0(ω^{r+1}(-Σp)) >= 1.
 *
 * For π_T : M̄_{g,n} -> M̄_{g,m} keeping the markings T (target marking a sits
 * at source marking kept[a-1]):
 *
 *     π*λ = λ,  π*δ_irr = δ_irr,
 *     π*ψ_a = ψ_{kept(a)} - Σ δ_{0,S}            over S ∩ T = {kept(a)}, |S| >= 2,
 *     π*δ_{i,S'} = Σ δ_{i,S}                      over S ∩ T = kept(S'),
 *
 * where the last sum runs over distinct divisors; this reproduces the single
 * point rule including its exception at n = 0, i = g/2.
 */
#pragma once

#include "mgn/picard.hpp"

#include <future>
#include <set>
#include <thread>
#include <type_traits>

namespace mgn {

struct ForgetfulSpec {
    ModuliIndex target;     ///< (g, m)
    int source_n = 0;       ///< n
    std::vector<int> kept;  ///< kept[a-1]: source marking carrying target marking a

    ModuliIndex source() const { return {target.g, source_n}; }

    /// π : M̄_{g,n+1} -> M̄_{g,n} forgetting marking n+1.
    static ForgetfulSpec forget_last(ModuliIndex target) {
        ForgetfulSpec f{target, target.n + 1, {}};
        for (int a = 1; a <= target.n; ++a) f.kept.push_back(a);
        return f;
    }

    void validate() const {
        require_stable(target);
        require_stable(source());
        if (static_cast<int>(kept.size()) != target.n)
            throw std::invalid_argument("forgetful map: kept list must name every target marking");
        if (source_n < target.n) throw std::invalid_argument("forgetful map: source has fewer markings than target");
        MarkingSet seen;
        for (int j : kept) {
            if (j < 1 || j > source_n) throw std::invalid_argument("forgetful map: kept marking out of range");
            if (seen.contains(j)) throw std::invalid_argument("forgetful map: kept map is not injective");
            seen = seen.with(j);
        }
    }
};

namespace detail {

template <class F>
void for_each_subset(MarkingSet ground, F&& f) {
    const std::uint32_t g = ground.bits();
    std::uint32_t u = g;
    while (true) {
        f(MarkingSet::from_bits(u));
        if (u == 0) break;
        u = (u - 1) & g;
    }
}

}  // namespace detail

inline DivisorClass pullback(const DivisorClass& c, const ForgetfulSpec& f) {
    f.validate();
    if (c.index() != f.target)
        throw std::invalid_argument("pullback: class lives on M_" + c.index().to_string() + ", map targets M_" +
                                    f.target.to_string());
    const ModuliIndex src = f.source();
    DivisorClass out(src);
    const MarkingSet kept_set = MarkingSet::of(f.kept);
    const MarkingSet forgotten = kept_set.complement(src.n);
    auto image = [&](MarkingSet s) {
        MarkingSet t;
        for (int a : s.elements()) t = t.with(f.kept[a - 1]);
        return t;
    };

    for (const auto& [e, r] : c.terms()) {
        switch (e.kind) {
            case BasisKind::Lambda:
            case BasisKind::DeltaIrr: out.add_canonical(e, r); break;
            case BasisKind::Psi: {
                const int j = f.kept[e.index - 1];
                out.add(BasisElement::psi(j), r);
                const MarkingSet single = MarkingSet{}.with(j);
                detail::for_each_subset(forgotten, [&](MarkingSet u) {
                    if (!u.empty()) out.add_delta(0, single | u, -r);
                });
                break;
            }
            case BasisKind::DeltaSep: {
                const MarkingSet base = image(e.set);
                if (2 * e.index == src.g) {
                    // Both sides have genus g/2; S and its complement can both restrict to base.
                    std::set<BasisElement> distinct;
                    detail::for_each_subset(forgotten,
                                            [&](MarkingSet u) { distinct.insert(canonicalize(e.index, base | u, src)); });
                    for (const auto& d : distinct) out.add_canonical(d, r);
                } else {
                    detail::for_each_subset(forgotten, [&](MarkingSet u) { out.add_delta(e.index, base | u, r); });
                }
                break;
            }
        }
    }
    return out;
}

/// Single-point pull-back M̄_{g,n} -> M̄_{g,n+1}.
inline DivisorClass pullback(const DivisorClass& c) { return pullback(c, ForgetfulSpec::forget_last(c.index())); }

/// Pull-back from (g,m) to (g,n) along the map keeping markings kept[0..m-1].
inline DivisorClass pullback_multi(const DivisorClass& c, int n, const std::vector<int>& kept) {
    return pullback(c, ForgetfulSpec{c.index(), n, kept});
}

// ---------------------------------------------------------------------------
// Averaging over all forgetful maps
// ---------------------------------------------------------------------------

/// (1/C(n,m)) Σ_{|T|=m} π_T* c for a symmetric class c on (g,m), in closed form.
///
/// A divisor Δ_{i,S} with |S| = k meets a random T of size m in j points with
/// hypergeometric weight C(k,j)C(n-k,m-j)/C(n,m); its coefficient is the
/// expected value of what the restricted divisor (i, S∩T) and the ψ
/// corrections contribute.
inline SymDivisorClass average_pullback(const SymDivisorClass& c, int n) {
    const ModuliIndex tgt = c.index();
    const int m = tgt.n;
    const int g = tgt.g;
    if (n < m) throw std::invalid_argument("average_pullback: cannot pull back to fewer markings");
    const ModuliIndex src{g, n};
    SymDivisorClass out(src);
    const Rational psi_coeff = c.coeff(SymKey::psi());
    if (g >= 1) {
        out.add(SymKey::lambda(), c.coeff(SymKey::lambda()));
        out.add(SymKey::delta_irr(), c.coeff(SymKey::delta_irr()));
    }
    if (n > 0 && psi_coeff != 0) out.add(SymKey::psi(), psi_coeff * Rational(m, n));

    const Integer total = binomial(n, m);
    auto restricted_value = [&](int i, int j) -> Rational {
        Rational v = 0;
        if (valid_separating_size(i, j, tgt)) v += c.coeff(canonical_sym_key(i, j, tgt));
        if (i == 0 && j == 1) v -= psi_coeff;
        if (g - i == 0 && m - j == 1) v -= psi_coeff;
        return v;
    };
    for (const auto& key : sym_keys(src)) {
        if (key.kind != SymKind::DeltaSym) continue;
        const int i = key.genus;
        const int k = key.size;
        Rational acc = 0;
        for (int j = 0; j <= std::min(k, m); ++j) {
            Integer weight = binomial(k, j) * binomial(n - k, m - j);
            if (weight == 0) continue;
            Rational v = restricted_value(i, j);
            if (v != 0) acc += Rational(weight) * v;
        }
        if (acc != 0) out.add(key, acc / Rational(total));
    }
    return out;
}

/// Brute-force counterpart of average_pullback(): every m-subset T, relabeled
/// order-preservingly, pulled back in the full basis and averaged. Oracle only.
inline DivisorClass average_pullback_bruteforce(const DivisorClass& c, int n) {
    constexpr int kMaxBruteForceMarkings = 16;
    const int m = c.index().n;
    if (n > kMaxBruteForceMarkings) throw std::invalid_argument("brute-force averaging is limited to n <= 16");
    if (n < m) throw std::invalid_argument("average_pullback_bruteforce: cannot pull back to fewer markings");

    std::vector<std::vector<int>> subsets;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits)
        if (std::popcount(bits) == m) subsets.push_back(MarkingSet::from_bits(bits).elements());

    // Fixed chunking and in-order reduction keep the result independent of scheduling.
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(8, std::thread::hardware_concurrency()));
    const std::size_t chunk = (subsets.size() + workers - 1) / workers;
    std::vector<std::future<DivisorClass>> parts;
    for (std::size_t start = 0; start < subsets.size(); start += chunk) {
        const std::size_t stop = std::min(subsets.size(), start + chunk);
        parts.push_back(std::async(std::launch::async, [&, start, stop] {
            DivisorClass partial(ModuliIndex{c.index().g, n});
            for (std::size_t s = start; s < stop; ++s) partial += pullback_multi(c, n, subsets[s]);
            return partial;
        }));
    }
    DivisorClass sum(ModuliIndex{c.index().g, n});
    for (auto& p : parts) sum += p.get();
    return sum * Rational(Integer(1), binomial(n, m));
}

// ---------------------------------------------------------------------------
// Classes known up to an effective boundary remainder
// ---------------------------------------------------------------------------

template <class Class>
struct ClassKey;
template <>
struct ClassKey<DivisorClass> {
    using type = BasisElement;
};
template <>
struct ClassKey<SymDivisorClass> {
    using type = SymKey;
};

/// Boundary generators on which an unknown effective combination may sit.
template <class Key>
struct SlackSupport {
    bool all_boundary = false;
    std::set<Key> elements;

    static SlackSupport everything() { return {true, {}}; }
    bool contains(const Key& k) const { return k.is_boundary() && (all_boundary || elements.contains(k)); }
    bool empty() const { return !all_boundary && elements.empty(); }

    friend bool operator==(const SlackSupport&, const SlackSupport&) = default;
};

/// known - E, where E is effective and supported on `slack`.
template <class Class>
struct EffectiveClassWithSlack {
    using Key = typename ClassKey<Class>::type;

    Class known;
    SlackSupport<Key> slack;

    EffectiveClassWithSlack(Class k, SlackSupport<Key> s) : known(std::move(k)), slack(std::move(s)) {
        for (const auto& e : slack.elements)
            if (!e.is_boundary()) throw std::invalid_argument("slack support must be boundary generators, got " + e.name());
    }

    ModuliIndex index() const { return known.index(); }

    /// known - E = (known + F) - (E + F): a non-negative boundary class F may
    /// always be moved from the known part into the slack.
    EffectiveClassWithSlack absorb_into_slack(const Class& f) const {
        EffectiveClassWithSlack out = *this;
        for (const auto& [k, r] : f.terms()) {
            if (!k.is_boundary() || r < 0)
                throw std::invalid_argument("only non-negative boundary terms can be absorbed, got " + k.name());
            if (!out.slack.all_boundary) out.slack.elements.insert(k);
        }
        out.known += f;
        return out;
    }
};

/// The known part is pulled back exactly; the support of π* of each slack
/// generator becomes the new support.
inline EffectiveClassWithSlack<DivisorClass> pullback(const EffectiveClassWithSlack<DivisorClass>& c,
                                                      const ForgetfulSpec& f) {
    SlackSupport<BasisElement> support;
    support.all_boundary = c.slack.all_boundary;
    for (const auto& e : c.slack.elements) {
        DivisorClass unit(c.index());
        unit.add_canonical(e, 1);
        const DivisorClass pulled = pullback(unit, f);
        for (const auto& [pe, r] : pulled.terms()) support.elements.insert(pe);
    }
    return {pullback(c.known, f), std::move(support)};
}

inline EffectiveClassWithSlack<SymDivisorClass> average_pullback(const EffectiveClassWithSlack<SymDivisorClass>& c, int n) {
    SlackSupport<SymKey> support;
    support.all_boundary = c.slack.all_boundary;
    for (const auto& k : c.slack.elements) {
        SymDivisorClass unit(c.index());
        unit.add(k, 1);
        const SymDivisorClass pulled = average_pullback(unit, n);
        for (const auto& [pk, r] : pulled.terms()) support.elements.insert(pk);
    }
    return {average_pullback(c.known, n), std::move(support)};
}

// ---------------------------------------------------------------------------
// The pointed-curve divisor D̄^r_{g,n}
// ---------------------------------------------------------------------------

/// n = (2r+1)(g-1): the number of points for which h^0(ω^{r+1}(-p_1-...-p_n)) >= 1 is a divisorial condition.
inline int farkas_marking_count(int g, int r) {
    if (g < 2 || r < 1) throw std::invalid_argument("D^r_{g,n} needs g >= 2 and r >= 1");
    return (2 * r + 1) * (g - 1);
}

/// -(6r²+6r+1)λ + (r+1)ω + C(r+1,2)δ_irr - δ_{0,2} - (effective boundary).
inline EffectiveClassWithSlack<DivisorClass> farkas_class(int g, int r) {
    const int n = farkas_marking_count(g, r);
    const ModuliIndex idx{g, n};
    DivisorClass known = Rational(-(6 * r * r + 6 * r + 1)) * lambda_class(idx) + Rational(r + 1) * omega_total(g, n);
    known.add(BasisElement::delta_irr(), Rational(binomial(r + 1, 2)));
    for (const auto& e : separating_elements(idx))
        if (e.index == 0 && e.set.size() == 2) known.add_canonical(e, -1);
    return {std::move(known), SlackSupport<BasisElement>::everything()};
}

inline EffectiveClassWithSlack<SymDivisorClass> farkas_class_sym(int g, int r) {
    const int n = farkas_marking_count(g, r);
    SymDivisorClass known = Rational(r + 1) * sym::omega_total(g, n);
    known.add(SymKey::lambda(), -(6 * r * r + 6 * r + 1));
    known.add(SymKey::delta_irr(), Rational(binomial(r + 1, 2)));
    known.add_delta(0, 2, -1);
    return {std::move(known), SlackSupport<SymKey>::everything()};
}

inline constexpr int kFarkasGenus = 3;
inline constexpr int kFarkasR = 3;
inline constexpr int kFarkasMarkings = 14;

/// D̄_n = (1/C(n,14)) Σ_{|T|=14} π_T* D̄³_{3,14} on M̄_{3,n}.
inline EffectiveClassWithSlack<SymDivisorClass> symmetric_pullback_farkas(int n) {
    if (n < kFarkasMarkings) throw std::invalid_argument("symmetric pull-back of D^3_{3,14} needs n >= 14");
    return average_pullback(farkas_class_sym(kFarkasGenus, kFarkasR), n);
}

/// Same class through literal averaging over all C(n,14) forgetful maps; n in 14..16.
inline DivisorClass symmetric_pullback_farkas_bruteforce(int n) {
    if (n < kFarkasMarkings) throw std::invalid_argument("symmetric pull-back of D^3_{3,14} needs n >= 14");
    return average_pullback_bruteforce(farkas_class(kFarkasGenus, kFarkasR).known, n);
}

}  // namespace mgn
