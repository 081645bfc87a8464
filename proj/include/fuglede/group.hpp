#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fuglede {

/// Position of an element in the fixed encoding index = (u1 * p + u2) * q + v.
using ElementIndex = std::uint32_t;

/// Largest group order accepted by make_group. Bit vectors are addressed by ElementIndex.
inline constexpr std::uint64_t kMaxGroupOrder = std::uint64_t{1} << 20;

/// A point (u, v) of Z_p^2 x Z_q with u = (u1, u2). Doubles as a character index.
struct Element {
    std::uint32_t u1 = 0;
    std::uint32_t u2 = 0;
    std::uint32_t v = 0;

    friend auto operator<=>(const Element&, const Element&) = default;
};

std::string to_string(const Element& e);

/// A vector of Z_p^2.
struct PlaneVector {
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    bool is_zero() const noexcept { return x == 0 && y == 0; }
    friend auto operator<=>(const PlaneVector&, const PlaneVector&) = default;
};

/// Exponent pair (j, k) of the root of unity zeta_p^j * zeta_q^k.
struct CharExponents {
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    friend auto operator<=>(const CharExponents&, const CharExponents&) = default;
};

bool is_prime(std::uint64_t n);

/// The group G = Z_p^2 x Z_q for distinct primes p, q. Immutable once built.
class GroupSpec {
public:
    friend GroupSpec make_group(std::uint64_t p, std::uint64_t q);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t order() const noexcept { return n_; }

    ElementIndex index(const Element& e) const;
    Element element(ElementIndex i) const;
    bool contains(const Element& e) const noexcept { return e.u1 < p_ && e.u2 < p_ && e.v < q_; }

    Element add(const Element& g, const Element& h) const;
    Element neg(const Element& g) const;
    Element sub(const Element& g, const Element& h) const { return add(g, neg(h)); }
    Element scale(const Element& g, std::uint64_t k) const;

    ElementIndex add(ElementIndex g, ElementIndex h) const;
    ElementIndex sub(ElementIndex g, ElementIndex h) const;
    ElementIndex neg(ElementIndex g) const;

    /// Element order: 1, p, q or pq.
    std::uint32_t element_order(const Element& g) const;

    Element identity() const noexcept { return {}; }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) noexcept
    {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }

private:
    GroupSpec(std::uint32_t p, std::uint32_t q);

    std::uint32_t p_;
    std::uint32_t q_;
    std::uint32_t n_;
    std::vector<Element> elements_;
};

/// Validates and builds Z_p^2 x Z_q. Throws NotPrime, EqualPrimes or GroupTooLarge.
GroupSpec make_group(std::uint64_t p, std::uint64_t q);

/// <u, a> mod p.
std::uint32_t inner_p(std::uint32_t p, const PlaneVector& u, const PlaneVector& a);

/// Exponents of chi_(a,b)(u,v) = zeta_p^<u,a> * zeta_q^(v*b).
CharExponents char_exponents(const GroupSpec& g, const Element& chi, const Element& x);

/// A subset of G stored as a bit vector over element indices, with cached cardinality.
class SubsetMask {
public:
    SubsetMask() = default;
    explicit SubsetMask(std::uint32_t universe);

    static SubsetMask full(std::uint32_t universe);
    static SubsetMask from_indices(std::uint32_t universe, std::span<const ElementIndex> indices);
    static SubsetMask from_elements(const GroupSpec& g, std::span<const Element> elements);
    /// Only for universe <= 64: bit i of `bits` is element i.
    static SubsetMask from_u64(std::uint32_t universe, std::uint64_t bits);

    std::uint32_t universe() const noexcept { return universe_; }
    std::uint32_t count() const noexcept { return card_; }
    bool empty() const noexcept { return card_ == 0; }

    bool contains(ElementIndex i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void insert(ElementIndex i);
    void erase(ElementIndex i);

    std::vector<ElementIndex> indices() const;
    std::uint64_t to_u64() const;
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool is_subset_of(const SubsetMask& other) const;
    bool intersects(const SubsetMask& other) const;
    SubsetMask operator|(const SubsetMask& other) const;
    SubsetMask operator&(const SubsetMask& other) const;

    /// Order of sorted index lists; among sets of equal size this matches lexicographic order of the lists.
    friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b);
    friend bool operator==(const SubsetMask& a, const SubsetMask& b)
    {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

private:
    std::uint32_t universe_ = 0;
    std::uint32_t card_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Nonnegative integer weights over G; `total` is the sum of the weights.
class Multiset {
public:
    Multiset() = default;
    explicit Multiset(std::uint32_t universe) : counts_(universe, 0) {}

    static Multiset indicator(const SubsetMask& s);
    static Multiset constant(std::uint32_t universe, std::uint64_t value);

    std::uint32_t universe() const noexcept { return static_cast<std::uint32_t>(counts_.size()); }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t operator[](ElementIndex i) const { return counts_[i]; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    void add(ElementIndex i, std::uint64_t count = 1);
    void add(const Multiset& other);

    bool is_constant() const;

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Multiples of g.
SubsetMask cyclic_subgroup(const GroupSpec& g, const Element& gen);
/// Sums of multiples of the generators.
SubsetMask span(const GroupSpec& g, std::span<const Element> gens);
bool is_subgroup(const GroupSpec& g, const SubsetMask& s);

/// counts[d] = #{(s, s') in S x S : s - s' = d}.
Multiset difference_multiset(const GroupSpec& g, const SubsetMask& s);
/// Support of difference_multiset.
SubsetMask difference_set(const GroupSpec& g, const SubsetMask& s);
SubsetMask translate(const GroupSpec& g, const SubsetMask& s, ElementIndex by);

/// Z_p^2 embedded as u -> (u, 0).
SubsetMask plane_subgroup(const GroupSpec& g);
/// Z_q embedded as v -> (0, v).
SubsetMask q_subgroup(const GroupSpec& g);

/// All subgroups of G: products of a subgroup of Z_p^2 (trivial, one of the p + 1 lines, or the plane)
/// with a subgroup of Z_q. Ordered by (order, first differing index).
std::vector<SubsetMask> all_subgroups(const GroupSpec& g);

} // namespace fuglede
