/**
 * @file picard.hpp
 * @brief Rational divisor classes on the moduli spaces of stable pointed curves.
 *
 * A class on M̄_{g,n} is a sparse vector over the generators
 *
 *     λ, ψ_1..ψ_n, δ_irr, δ_{i,S}
 *
 * with exact rational coefficients. Boundary generators are stored in a
 * canonical orientation: Δ_{i,S} and Δ_{g-i,S^c} are the same divisor, and we
 * keep the side with i < g/2, breaking the tie at i = g/2 by putting marking n
 * on the complement.
 *
 * δ_{1,∅} is the stack class, i.e. half the class of the coarse divisor
 * Δ_{1,∅}. The coarse classes are only reachable through
 * coarse_boundary_class().
 *
 * For g >= 3 these generators form a basis of Pic_Q. For smaller genus they
 * still generate, and the formulas below are used verbatim.
 *
 * S_n-invariant classes have a compact form, SymDivisorClass, whose
 * coefficients are per-divisor values for each orbit of generators; this is
 * what large-n computations use.
 */
#pragma once

#include "mgn/rational.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgn {

/// Full-basis classes carry one coefficient per subset of markings.
inline constexpr int kMaxFullBasisMarkings = 20;
/// Marking sets are bitmasks. Symmetric classes have no such limit.
inline constexpr int kMaxMarkings = 31;

struct ModuliIndex {
    int g = 0;
    int n = 0;

    constexpr bool stable() const { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

    friend constexpr bool operator==(const ModuliIndex&, const ModuliIndex&) = default;
    friend constexpr auto operator<=>(const ModuliIndex&, const ModuliIndex&) = default;

    std::string to_string() const { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }
};

inline void require_stable(ModuliIndex idx) {
    if (!idx.stable()) throw std::invalid_argument("unstable moduli index " + idx.to_string() + ": need 2g-2+n > 0");
}

/// A subset of {1..n}; marking j is bit j-1.
class MarkingSet {
public:
    constexpr MarkingSet() = default;

    static constexpr MarkingSet from_bits(std::uint32_t bits) {
        MarkingSet s;
        s.bits_ = bits;
        return s;
    }
    static MarkingSet of(std::initializer_list<int> markings) {
        MarkingSet s;
        for (int j : markings) s = s.with(j);
        return s;
    }
    static MarkingSet of(const std::vector<int>& markings) {
        MarkingSet s;
        for (int j : markings) s = s.with(j);
        return s;
    }
    /// {1..n}
    static constexpr MarkingSet all(int n) {
        return from_bits(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int j) const { return j >= 1 && j <= 32 && ((bits_ >> (j - 1)) & 1u) != 0; }

    MarkingSet with(int j) const {
        if (j < 1 || j > kMaxMarkings) throw std::invalid_argument("marking index out of range: " + std::to_string(j));
        return from_bits(bits_ | (std::uint32_t{1} << (j - 1)));
    }
    constexpr MarkingSet complement(int n) const { return from_bits(all(n).bits_ & ~bits_); }
    constexpr bool subset_of(MarkingSet other) const { return (bits_ & ~other.bits_) == 0; }

    friend constexpr MarkingSet operator|(MarkingSet a, MarkingSet b) { return from_bits(a.bits_ | b.bits_); }
    friend constexpr MarkingSet operator&(MarkingSet a, MarkingSet b) { return from_bits(a.bits_ & b.bits_); }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int j : elements()) {
            if (!first) out += ",";
            out += std::to_string(j);
            first = false;
        }
        return out + "}";
    }

    friend constexpr bool operator==(MarkingSet a, MarkingSet b) { return a.bits_ == b.bits_; }

    /// Lexicographic order of the ascending element lists: {} < {1} < {1,2} < {1,3} < {2}.
    friend constexpr std::strong_ordering operator<=>(MarkingSet a, MarkingSet b) {
        std::uint32_t diff = a.bits_ ^ b.bits_;
        if (diff == 0) return std::strong_ordering::equal;
        std::uint32_t lowest = diff & (~diff + 1);
        std::uint32_t above = ~((lowest << 1) - 1);
        // The lists agree up to the first difference; whichever holds the smaller
        // element there is smaller, unless the other list has already ended.
        if (a.bits_ & lowest)
            return (b.bits_ & above) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return (a.bits_ & above) != 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    }

private:
    std::uint32_t bits_ = 0;
};

enum class BasisKind : std::uint8_t { Lambda, Psi, DeltaIrr, DeltaSep };

/// One generator. `index` is the marking for Psi and the genus i for DeltaSep.
struct BasisElement {
    BasisKind kind = BasisKind::Lambda;
    int index = 0;
    MarkingSet set;

    static constexpr BasisElement lambda() { return {BasisKind::Lambda, 0, {}}; }
    static constexpr BasisElement psi(int j) { return {BasisKind::Psi, j, {}}; }
    static constexpr BasisElement delta_irr() { return {BasisKind::DeltaIrr, 0, {}}; }
    /// Not canonicalized; see canonicalize().
    static constexpr BasisElement delta_sep(int i, MarkingSet s) { return {BasisKind::DeltaSep, i, s}; }

    constexpr bool is_boundary() const { return kind == BasisKind::DeltaIrr || kind == BasisKind::DeltaSep; }

    friend constexpr bool operator==(const BasisElement&, const BasisElement&) = default;
    friend constexpr std::strong_ordering operator<=>(const BasisElement& a, const BasisElement& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.index <=> b.index; c != 0) return c;
        return a.set <=> b.set;
    }

    /// Serialized key: lambda, psi_3, delta_irr, delta_1_{}, delta_0_{1,2}.
    std::string name() const {
        switch (kind) {
            case BasisKind::Lambda: return "lambda";
            case BasisKind::Psi: return "psi_" + std::to_string(index);
            case BasisKind::DeltaIrr: return "delta_irr";
            case BasisKind::DeltaSep: return "delta_" + std::to_string(index) + "_" + set.to_string();
        }
        return {};
    }
};

/// Whether a genus-i side carrying k of the n markings is a boundary divisor.
inline bool valid_separating_size(int i, int k, ModuliIndex idx) {
    if (i < 0 || i > idx.g || k < 0 || k > idx.n) return false;
    if (i == 0 && k < 2) return false;
    if (i == idx.g && k > idx.n - 2) return false;
    return true;
}

/// Whether (i,S) names a boundary divisor of M̄_{g,n} in this orientation.
/// The condition is symmetric under (i,S) -> (g-i,S^c).
inline bool valid_separating(int i, MarkingSet s, ModuliIndex idx) {
    if (idx.n > kMaxMarkings || !s.subset_of(MarkingSet::all(idx.n))) return false;
    return valid_separating_size(i, s.size(), idx);
}

/// The canonical representative of Δ_{i,S} = Δ_{g-i,S^c}.
inline BasisElement canonicalize(int i, MarkingSet s, ModuliIndex idx) {
    if (!valid_separating(i, s, idx))
        throw std::invalid_argument("no boundary divisor delta_" + std::to_string(i) + "_" + s.to_string() +
                                    " on M_" + idx.to_string());
    int other = idx.g - i;
    bool flip = false;
    if (i > other)
        flip = true;
    else if (i == other)
        flip = idx.n > 0 && s.contains(idx.n);
    if (flip) return BasisElement::delta_sep(other, s.complement(idx.n));
    return BasisElement::delta_sep(i, s);
}

inline bool is_canonical_element(const BasisElement& e, ModuliIndex idx) {
    switch (e.kind) {
        case BasisKind::Lambda:
        case BasisKind::DeltaIrr: return idx.g >= 1;
        case BasisKind::Psi: return e.index >= 1 && e.index <= idx.n;
        case BasisKind::DeltaSep:
            return valid_separating(e.index, e.set, idx) && canonicalize(e.index, e.set, idx) == e;
    }
    return false;
}

/// Brings a generator to canonical form, validating it against idx.
inline BasisElement normalize(const BasisElement& e, ModuliIndex idx) {
    if (e.kind == BasisKind::DeltaSep) return canonicalize(e.index, e.set, idx);
    if (!is_canonical_element(e, idx)) throw std::invalid_argument(e.name() + " is not a generator on M_" + idx.to_string());
    return e;
}

/// Canonical separating boundary generators in the serialization order.
inline std::vector<BasisElement> separating_elements(ModuliIndex idx) {
    require_stable(idx);
    if (idx.n > kMaxFullBasisMarkings)
        throw std::invalid_argument("full basis enumeration is limited to n <= " + std::to_string(kMaxFullBasisMarkings));
    std::vector<BasisElement> out;
    const std::uint32_t limit = std::uint32_t{1} << idx.n;
    for (int i = 0; 2 * i <= idx.g; ++i) {
        for (std::uint32_t bits = 0; bits < limit; ++bits) {
            MarkingSet s = MarkingSet::from_bits(bits);
            if (!valid_separating(i, s, idx)) continue;
            BasisElement e = BasisElement::delta_sep(i, s);
            if (canonicalize(i, s, idx) == e) out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<BasisElement> basis_elements(ModuliIndex idx) {
    std::vector<BasisElement> out;
    if (idx.g >= 1) out.push_back(BasisElement::lambda());
    for (int j = 1; j <= idx.n; ++j) out.push_back(BasisElement::psi(j));
    if (idx.g >= 1) out.push_back(BasisElement::delta_irr());
    auto sep = separating_elements(idx);
    out.insert(out.end(), sep.begin(), sep.end());
    return out;
}

/// Exact rational class in the full basis. Keys are canonical, values non-zero.
class DivisorClass {
public:
    using Terms = std::map<BasisElement, Rational>;

    explicit DivisorClass(ModuliIndex idx) : index_(idx) {
        require_stable(idx);
        if (idx.n > kMaxFullBasisMarkings)
            throw std::invalid_argument("full-basis classes need n <= " + std::to_string(kMaxFullBasisMarkings) +
                                        "; use SymDivisorClass");
    }

    ModuliIndex index() const { return index_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const BasisElement& e) const {
        auto it = terms_.find(normalize(e, index_));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds r times the generator; separating generators are canonicalized first.
    DivisorClass& add(const BasisElement& e, const Rational& r) {
        if (r == 0) return *this;
        add_canonical(normalize(e, index_), r);
        return *this;
    }
    DivisorClass& add_delta(int i, MarkingSet s, const Rational& r) { return add(BasisElement::delta_sep(i, s), r); }

    /// Caller guarantees e is canonical for index().
    void add_canonical(const BasisElement& e, const Rational& r) {
        auto [it, inserted] = terms_.try_emplace(e, r);
        if (!inserted) {
            it->second += r;
            if (it->second == 0) terms_.erase(it);
        }
    }

    DivisorClass& operator+=(const DivisorClass& other) {
        require_same_index(other);
        for (const auto& [e, r] : other.terms_) add_canonical(e, r);
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& other) {
        require_same_index(other);
        for (const auto& [e, r] : other.terms_) add_canonical(e, -r);
        return *this;
    }
    DivisorClass& operator*=(const Rational& r) {
        if (r == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= r;
        return *this;
    }

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rational& r, DivisorClass a) { return a *= r; }
    friend DivisorClass operator*(DivisorClass a, const Rational& r) { return a *= r; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return a.index_ == b.index_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, r] : terms_) {
            if (!out.empty()) out += " ";
            out += (r < 0 ? "" : "+") + mgn::to_string(r) + "*" + e.name();
        }
        return out;
    }

private:
    void require_same_index(const DivisorClass& other) const {
        if (other.index_ != index_)
            throw std::invalid_argument("index mismatch: " + index_.to_string() + " vs " + other.index_.to_string());
    }

    ModuliIndex index_;
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Symmetric classes
// ---------------------------------------------------------------------------

enum class SymKind : std::uint8_t { Lambda, PsiTotal, DeltaIrr, DeltaSym };

/// An S_n-orbit of generators. For DeltaSym, `genus` is i and `size` is |S|.
struct SymKey {
    SymKind kind = SymKind::Lambda;
    int genus = 0;
    int size = 0;

    static constexpr SymKey lambda() { return {SymKind::Lambda, 0, 0}; }
    static constexpr SymKey psi() { return {SymKind::PsiTotal, 0, 0}; }
    static constexpr SymKey delta_irr() { return {SymKind::DeltaIrr, 0, 0}; }
    static constexpr SymKey delta(int i, int k) { return {SymKind::DeltaSym, i, k}; }

    constexpr bool is_boundary() const { return kind == SymKind::DeltaIrr || kind == SymKind::DeltaSym; }

    friend constexpr bool operator==(const SymKey&, const SymKey&) = default;
    friend constexpr auto operator<=>(const SymKey&, const SymKey&) = default;

    /// lambda, psi, delta_irr, delta_0_2 (genus 0, two markings).
    std::string name() const {
        switch (kind) {
            case SymKind::Lambda: return "lambda";
            case SymKind::PsiTotal: return "psi";
            case SymKind::DeltaIrr: return "delta_irr";
            case SymKind::DeltaSym: return "delta_" + std::to_string(genus) + "_" + std::to_string(size);
        }
        return {};
    }
};

/// Orbit key of boundary divisors Δ_{i,S} with |S| = k, normalized like canonicalize().
inline SymKey canonical_sym_key(int i, int k, ModuliIndex idx) {
    if (!valid_separating_size(i, k, idx))
        throw std::invalid_argument("no boundary orbit delta_" + std::to_string(i) + "_" + std::to_string(k) + " on M_" +
                                    idx.to_string());
    if (2 * i > idx.g) return SymKey::delta(idx.g - i, idx.n - k);
    if (2 * i == idx.g) return SymKey::delta(i, std::min(k, idx.n - k));
    return SymKey::delta(i, k);
}

inline SymKey sym_key_of(const BasisElement& e, ModuliIndex idx) {
    switch (e.kind) {
        case BasisKind::Lambda: return SymKey::lambda();
        case BasisKind::Psi: return SymKey::psi();
        case BasisKind::DeltaIrr: return SymKey::delta_irr();
        case BasisKind::DeltaSep: return canonical_sym_key(e.index, e.set.size(), idx);
    }
    return {};
}

inline bool is_valid_sym_key(const SymKey& key, ModuliIndex idx) {
    switch (key.kind) {
        case SymKind::Lambda:
        case SymKind::DeltaIrr: return idx.g >= 1;
        case SymKind::PsiTotal: return idx.n >= 1;
        case SymKind::DeltaSym:
            try {
                return canonical_sym_key(key.genus, key.size, idx) == key;
            } catch (const std::invalid_argument&) {
                return false;
            }
    }
    return false;
}

/// Number of distinct generators in the orbit.
inline Integer orbit_size(const SymKey& key, ModuliIndex idx) {
    switch (key.kind) {
        case SymKind::Lambda:
        case SymKind::DeltaIrr: return 1;
        case SymKind::PsiTotal: return idx.n;
        case SymKind::DeltaSym: {
            Integer c = binomial(idx.n, key.size);
            if (idx.n > 0 && 2 * key.genus == idx.g && 2 * key.size == idx.n) c /= 2;
            return c;
        }
    }
    return 0;
}

/// All orbit keys of M̄_{g,n}, in key order.
inline std::vector<SymKey> sym_keys(ModuliIndex idx) {
    require_stable(idx);
    std::vector<SymKey> out;
    if (idx.g >= 1) out.push_back(SymKey::lambda());
    if (idx.n >= 1) out.push_back(SymKey::psi());
    if (idx.g >= 1) out.push_back(SymKey::delta_irr());
    for (int i = 0; 2 * i <= idx.g; ++i)
        for (int k = 0; k <= idx.n; ++k) {
            SymKey key = SymKey::delta(i, k);
            if (is_valid_sym_key(key, idx)) out.push_back(key);
        }
    return out;
}

/// S_n-invariant class; each coefficient is the value carried by every
/// generator in the orbit. So SymKey::delta(0,2) with coefficient 1 is
/// δ_{0,2} = Σ_{|S|=2} δ_{0,S}.
class SymDivisorClass {
public:
    using Terms = std::map<SymKey, Rational>;

    explicit SymDivisorClass(ModuliIndex idx) : index_(idx) { require_stable(idx); }

    ModuliIndex index() const { return index_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Zero for orbits that do not exist on this index (e.g. ψ when n = 0).
    Rational coeff(const SymKey& key) const {
        SymKey k = key;
        if (key.kind == SymKind::DeltaSym) {
            if (!valid_separating_size(key.genus, key.size, index_)) return 0;
            k = canonical_sym_key(key.genus, key.size, index_);
        } else if (!is_valid_sym_key(key, index_)) {
            return 0;
        }
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    SymDivisorClass& add(const SymKey& key, const Rational& r) {
        if (r == 0) return *this;
        SymKey k = normalize_key(key);
        auto [it, inserted] = terms_.try_emplace(k, r);
        if (!inserted) {
            it->second += r;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }
    SymDivisorClass& add_delta(int i, int k, const Rational& r) { return add(SymKey::delta(i, k), r); }

    SymDivisorClass& operator+=(const SymDivisorClass& other) {
        require_same_index(other);
        for (const auto& [k, r] : other.terms_) add(k, r);
        return *this;
    }
    SymDivisorClass& operator-=(const SymDivisorClass& other) {
        require_same_index(other);
        for (const auto& [k, r] : other.terms_) add(k, -r);
        return *this;
    }
    SymDivisorClass& operator*=(const Rational& r) {
        if (r == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= r;
        return *this;
    }

    friend SymDivisorClass operator+(SymDivisorClass a, const SymDivisorClass& b) { return a += b; }
    friend SymDivisorClass operator-(SymDivisorClass a, const SymDivisorClass& b) { return a -= b; }
    friend SymDivisorClass operator*(const Rational& r, SymDivisorClass a) { return a *= r; }
    friend SymDivisorClass operator*(SymDivisorClass a, const Rational& r) { return a *= r; }
    friend SymDivisorClass operator-(SymDivisorClass a) { return a *= Rational(-1); }

    friend bool operator==(const SymDivisorClass& a, const SymDivisorClass& b) {
        return a.index_ == b.index_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, r] : terms_) {
            if (!out.empty()) out += " ";
            out += (r < 0 ? "" : "+") + mgn::to_string(r) + "*" + k.name();
        }
        return out;
    }

private:
    SymKey normalize_key(const SymKey& key) const {
        if (key.kind == SymKind::DeltaSym) return canonical_sym_key(key.genus, key.size, index_);
        if (!is_valid_sym_key(key, index_)) throw std::invalid_argument(key.name() + " is not an orbit on M_" + index_.to_string());
        return key;
    }
    void require_same_index(const SymDivisorClass& other) const {
        if (other.index_ != index_)
            throw std::invalid_argument("index mismatch: " + index_.to_string() + " vs " + other.index_.to_string());
    }

    ModuliIndex index_;
    Terms terms_;
};

/// The generators in one orbit (full basis, so n <= 20).
inline std::vector<BasisElement> orbit_elements(const SymKey& key, ModuliIndex idx) {
    std::vector<BasisElement> out;
    switch (key.kind) {
        case SymKind::Lambda: out.push_back(BasisElement::lambda()); break;
        case SymKind::DeltaIrr: out.push_back(BasisElement::delta_irr()); break;
        case SymKind::PsiTotal:
            for (int j = 1; j <= idx.n; ++j) out.push_back(BasisElement::psi(j));
            break;
        case SymKind::DeltaSym:
            for (const auto& e : separating_elements(idx))
                if (sym_key_of(e, idx) == key) out.push_back(e);
            break;
    }
    return out;
}

inline DivisorClass expand(const SymDivisorClass& s) {
    DivisorClass out(s.index());
    if (s.terms().empty()) return out;
    bool need_separating = false;
    for (const auto& [k, r] : s.terms()) need_separating |= k.kind == SymKind::DeltaSym;
    std::vector<BasisElement> sep;
    if (need_separating) sep = separating_elements(s.index());
    for (const auto& [k, r] : s.terms()) {
        switch (k.kind) {
            case SymKind::Lambda: out.add_canonical(BasisElement::lambda(), r); break;
            case SymKind::DeltaIrr: out.add_canonical(BasisElement::delta_irr(), r); break;
            case SymKind::PsiTotal:
                for (int j = 1; j <= s.index().n; ++j) out.add_canonical(BasisElement::psi(j), r);
                break;
            case SymKind::DeltaSym: break;
        }
    }
    for (const auto& e : sep) {
        Rational r = s.coeff(sym_key_of(e, s.index()));
        if (r != 0) out.add_canonical(e, r);
    }
    return out;
}

/// Reads off orbit coefficients; throws if two generators in one orbit disagree.
inline SymDivisorClass symmetrize(const DivisorClass& c) {
    const ModuliIndex idx = c.index();
    SymDivisorClass out(idx);
    std::map<SymKey, std::pair<BasisElement, Rational>> seen;
    for (const auto& e : basis_elements(idx)) {
        Rational r = 0;
        if (auto it = c.terms().find(e); it != c.terms().end()) r = it->second;
        SymKey key = sym_key_of(e, idx);
        auto [it, inserted] = seen.try_emplace(key, e, r);
        if (!inserted && it->second.second != r)
            throw std::invalid_argument("class is not S_n-symmetric: " + it->second.first.name() + " has " +
                                        to_string(it->second.second) + " but " + e.name() + " has " + to_string(r));
    }
    for (const auto& [key, entry] : seen) out.add(key, entry.second);
    return out;
}

// ---------------------------------------------------------------------------
// Marking relabeling
// ---------------------------------------------------------------------------

/// Pushes markings through an injection {1..m} -> {1..n}: marking a becomes
/// image[a-1]. Only classes without boundary terms survive a proper injection
/// unchanged; callers that change n use pullback_multi() instead. Here n = m.
inline DivisorClass relabel(const DivisorClass& c, const std::vector<int>& permutation) {
    const ModuliIndex idx = c.index();
    if (static_cast<int>(permutation.size()) != idx.n) throw std::invalid_argument("relabel: permutation has wrong length");
    std::vector<bool> hit(idx.n + 1, false);
    for (int p : permutation) {
        if (p < 1 || p > idx.n || hit[p]) throw std::invalid_argument("relabel: not a permutation");
        hit[p] = true;
    }
    auto map_set = [&](MarkingSet s) {
        MarkingSet t;
        for (int j : s.elements()) t = t.with(permutation[j - 1]);
        return t;
    };
    DivisorClass out(idx);
    for (const auto& [e, r] : c.terms()) {
        switch (e.kind) {
            case BasisKind::Psi: out.add(BasisElement::psi(permutation[e.index - 1]), r); break;
            case BasisKind::DeltaSep: out.add_delta(e.index, map_set(e.set), r); break;
            default: out.add_canonical(e, r); break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Named classes
// ---------------------------------------------------------------------------

inline DivisorClass lambda_class(ModuliIndex idx) {
    DivisorClass c(idx);
    c.add(BasisElement::lambda(), 1);
    return c;
}

inline DivisorClass psi_class(int j, ModuliIndex idx) {
    DivisorClass c(idx);
    c.add(BasisElement::psi(j), 1);
    return c;
}

inline DivisorClass delta_irr_class(ModuliIndex idx) {
    DivisorClass c(idx);
    c.add(BasisElement::delta_irr(), 1);
    return c;
}

inline DivisorClass psi_total(ModuliIndex idx) {
    DivisorClass c(idx);
    for (int j = 1; j <= idx.n; ++j) c.add_canonical(BasisElement::psi(j), 1);
    return c;
}

/// δ_i: the sum over canonical δ_{i,S}.
inline DivisorClass delta_genus_class(int i, ModuliIndex idx) {
    DivisorClass c(idx);
    for (const auto& e : separating_elements(idx))
        if (e.index == i) c.add_canonical(e, 1);
    return c;
}

/// δ = δ_irr + every separating generator.
inline DivisorClass delta_total(ModuliIndex idx) {
    DivisorClass c(idx);
    if (idx.g >= 1) c.add_canonical(BasisElement::delta_irr(), 1);
    for (const auto& e : separating_elements(idx)) c.add_canonical(e, 1);
    return c;
}

inline void require_canonical_class_range(int g, int n) {
    if (g < 1 || g + n < 4 || n < 0)
        throw std::invalid_argument("canonical class formula needs g >= 1 and g + n >= 4, got (" + std::to_string(g) + "," +
                                    std::to_string(n) + ")");
}

/// K = 13λ + ψ_1 + ... + ψ_n - 2δ - δ_{1,∅}.
inline DivisorClass canonical_class(int g, int n) {
    require_canonical_class_range(g, n);
    ModuliIndex idx{g, n};
    DivisorClass k = 13 * lambda_class(idx) + psi_total(idx) - Rational(2) * delta_total(idx);
    k.add_delta(1, MarkingSet{}, -1);
    return k;
}

/// Mumford: κ₁ = 12λ + ψ - δ.
inline DivisorClass kappa1(int g, int n) {
    ModuliIndex idx{g, n};
    require_stable(idx);
    return 12 * lambda_class(idx) + psi_total(idx) - delta_total(idx);
}

/// ω_j = ψ_j - Σ_{S ∋ j, |S| >= 2} δ_{0,S}.
inline DivisorClass omega_class(int j, int g, int n) {
    ModuliIndex idx{g, n};
    require_stable(idx);
    if (g < 1) throw std::invalid_argument("omega classes need g >= 1");
    if (j < 1 || j > n) throw std::invalid_argument("omega_class: marking out of range");
    DivisorClass c = psi_class(j, idx);
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t bits = 0; bits < limit; ++bits) {
        MarkingSet s = MarkingSet::from_bits(bits);
        if (s.contains(j) && s.size() >= 2 && valid_separating(0, s, idx)) c.add_delta(0, s, -1);
    }
    return c;
}

/// ω = ψ - Σ_k k δ_{0,k}.
inline DivisorClass omega_total(int g, int n) {
    ModuliIndex idx{g, n};
    require_stable(idx);
    if (g < 1) throw std::invalid_argument("omega classes need g >= 1");
    DivisorClass c = psi_total(idx);
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t bits = 0; bits < limit; ++bits) {
        MarkingSet s = MarkingSet::from_bits(bits);
        if (s.size() >= 2 && valid_separating(0, s, idx)) c.add_delta(0, s, -s.size());
    }
    return c;
}

/// Closure of the hyperelliptic locus in M̄_3: 9λ - δ_irr - 3δ_1.
inline DivisorClass hyperelliptic_class() {
    ModuliIndex idx{3, 0};
    DivisorClass c(idx);
    c.add(BasisElement::lambda(), 9);
    c.add(BasisElement::delta_irr(), -1);
    c.add_delta(1, MarkingSet{}, -3);
    return c;
}

/// [Δ_{i,S}] on the coarse space: 2δ_{1,∅} for (1,∅), δ_{i,S} otherwise.
inline DivisorClass coarse_boundary_class(int i, MarkingSet s, int g, int n) {
    ModuliIndex idx{g, n};
    DivisorClass c(idx);
    BasisElement e = canonicalize(i, s, idx);
    Rational factor = 1;
    if (valid_separating(1, MarkingSet{}, idx) && canonicalize(1, MarkingSet{}, idx) == e) factor = 2;
    c.add_canonical(e, factor);
    return c;
}

inline DivisorClass coarse_irreducible_class(int g, int n) { return delta_irr_class(ModuliIndex{g, n}); }

// ---------------------------------------------------------------------------
// κ₁-basis
// ---------------------------------------------------------------------------

/// A class written as a·κ₁ + (combination of ψ_j and boundary generators).
struct KappaBasisClass {
    Rational kappa1;
    DivisorClass rest;

    ModuliIndex index() const { return rest.index(); }
    friend bool operator==(const KappaBasisClass&, const KappaBasisClass&) = default;
};

/// Substitutes λ = (κ₁ - ψ + δ)/12.
inline KappaBasisClass to_kappa_basis(const DivisorClass& c) {
    const ModuliIndex idx = c.index();
    Rational a = c.coeff(BasisElement::lambda()) / 12;
    DivisorClass rest = c;
    rest.add(BasisElement::lambda(), -c.coeff(BasisElement::lambda()));
    rest += a * (delta_total(idx) - psi_total(idx));
    return {a, rest};
}

inline DivisorClass from_kappa_basis(const KappaBasisClass& k) {
    const ModuliIndex idx = k.index();
    if (k.rest.coeff(BasisElement::lambda()) != 0) throw std::invalid_argument("kappa-basis remainder must not contain lambda");
    return k.rest + k.kappa1 * kappa1(idx.g, idx.n);
}

// ---------------------------------------------------------------------------
// Symmetric named classes
// ---------------------------------------------------------------------------

namespace sym {

inline SymDivisorClass delta_total(ModuliIndex idx) {
    SymDivisorClass c(idx);
    for (const auto& key : sym_keys(idx))
        if (key.is_boundary()) c.add(key, 1);
    return c;
}

inline SymDivisorClass canonical_class(int g, int n) {
    require_canonical_class_range(g, n);
    ModuliIndex idx{g, n};
    SymDivisorClass c = Rational(-2) * sym::delta_total(idx);
    c.add(SymKey::lambda(), 13);
    if (n > 0) c.add(SymKey::psi(), 1);
    c.add_delta(1, 0, -1);
    return c;
}

inline SymDivisorClass kappa1(int g, int n) {
    ModuliIndex idx{g, n};
    SymDivisorClass c = -sym::delta_total(idx);
    if (g >= 1) c.add(SymKey::lambda(), 12);
    if (n > 0) c.add(SymKey::psi(), 1);
    return c;
}

inline SymDivisorClass omega_total(int g, int n) {
    ModuliIndex idx{g, n};
    if (g < 1) throw std::invalid_argument("omega classes need g >= 1");
    SymDivisorClass c(idx);
    if (n > 0) c.add(SymKey::psi(), 1);
    for (int k = 2; k <= n; ++k) c.add_delta(0, k, -k);
    return c;
}

inline SymDivisorClass hyperelliptic_class() {
    SymDivisorClass c(ModuliIndex{3, 0});
    c.add(SymKey::lambda(), 9);
    c.add(SymKey::delta_irr(), -1);
    c.add_delta(1, 0, -3);
    return c;
}

}  // namespace sym

}  // namespace mgn
