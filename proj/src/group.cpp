#include "fuglede/group.hpp"

#include "fuglede/checked.hpp"
#include "fuglede/error.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace fuglede {

std::string to_string(const Element& e)
{
    return "[[" + std::to_string(e.u1) + "," + std::to_string(e.u2) + "]," + std::to_string(e.v) + "]";
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

GroupSpec make_group(std::uint64_t p, std::uint64_t q)
{
    if (!is_prime(p))
        throw NotPrime("p = " + std::to_string(p) + " is not prime");
    if (!is_prime(q))
        throw NotPrime("q = " + std::to_string(q) + " is not prime");
    if (p == q)
        throw EqualPrimes("p and q must differ (both are " + std::to_string(p) + ")");
    if (p > kMaxGroupOrder || q > kMaxGroupOrder || p * p * q > kMaxGroupOrder)
        throw GroupTooLarge("group order p^2 q exceeds " + std::to_string(kMaxGroupOrder));
    return GroupSpec(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q));
}

GroupSpec::GroupSpec(std::uint32_t p, std::uint32_t q) : p_(p), q_(q), n_(p * p * q)
{
    elements_.reserve(n_);
    for (std::uint32_t u1 = 0; u1 < p; ++u1)
        for (std::uint32_t u2 = 0; u2 < p; ++u2)
            for (std::uint32_t v = 0; v < q; ++v)
                elements_.push_back({u1, u2, v});
}

ElementIndex GroupSpec::index(const Element& e) const
{
    assert(contains(e));
    return (e.u1 * p_ + e.u2) * q_ + e.v;
}

Element GroupSpec::element(ElementIndex i) const
{
    assert(i < n_);
    return elements_[i];
}

Element GroupSpec::add(const Element& g, const Element& h) const
{
    return {(g.u1 + h.u1) % p_, (g.u2 + h.u2) % p_, (g.v + h.v) % q_};
}

Element GroupSpec::neg(const Element& g) const
{
    return {(p_ - g.u1) % p_, (p_ - g.u2) % p_, (q_ - g.v) % q_};
}

Element GroupSpec::scale(const Element& g, std::uint64_t k) const
{
    return {static_cast<std::uint32_t>(g.u1 * (k % p_) % p_), static_cast<std::uint32_t>(g.u2 * (k % p_) % p_),
        static_cast<std::uint32_t>(g.v * (k % q_) % q_)};
}

ElementIndex GroupSpec::add(ElementIndex g, ElementIndex h) const
{
    return index(add(elements_[g], elements_[h]));
}

ElementIndex GroupSpec::sub(ElementIndex g, ElementIndex h) const
{
    return index(sub(elements_[g], elements_[h]));
}

ElementIndex GroupSpec::neg(ElementIndex g) const
{
    return index(neg(elements_[g]));
}

std::uint32_t GroupSpec::element_order(const Element& g) const
{
    std::uint32_t o = 1;
    if (g.u1 != 0 || g.u2 != 0)
        o *= p_;
    if (g.v != 0)
        o *= q_;
    return o;
}

std::uint32_t inner_p(std::uint32_t p, const PlaneVector& u, const PlaneVector& a)
{
    const std::uint64_t s = std::uint64_t{u.x} * a.x + std::uint64_t{u.y} * a.y;
    return static_cast<std::uint32_t>(s % p);
}

CharExponents char_exponents(const GroupSpec& g, const Element& chi, const Element& x)
{
    return {inner_p(g.p(), {x.u1, x.u2}, {chi.u1, chi.u2}),
        static_cast<std::uint32_t>(std::uint64_t{x.v} * chi.v % g.q())};
}

// ---------------------------------------------------------------------------
// SubsetMask

SubsetMask::SubsetMask(std::uint32_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

SubsetMask SubsetMask::full(std::uint32_t universe)
{
    SubsetMask s(universe);
    for (ElementIndex i = 0; i < universe; ++i)
        s.insert(i);
    return s;
}

SubsetMask SubsetMask::from_indices(std::uint32_t universe, std::span<const ElementIndex> indices)
{
    SubsetMask s(universe);
    for (auto i : indices) {
        assert(i < universe);
        s.insert(i);
    }
    return s;
}

SubsetMask SubsetMask::from_elements(const GroupSpec& g, std::span<const Element> elements)
{
    SubsetMask s(g.order());
    for (const auto& e : elements)
        s.insert(g.index(e));
    return s;
}

SubsetMask SubsetMask::from_u64(std::uint32_t universe, std::uint64_t bits)
{
    assert(universe <= 64);
    assert(universe == 64 || (bits >> universe) == 0);
    SubsetMask s(universe);
    if (universe > 0) {
        s.words_[0] = bits;
        s.card_ = static_cast<std::uint32_t>(std::popcount(bits));
    }
    return s;
}

void SubsetMask::insert(ElementIndex i)
{
    assert(i < universe_);
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) {
        w |= bit;
        ++card_;
    }
}

void SubsetMask::erase(ElementIndex i)
{
    assert(i < universe_);
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) {
        w &= ~bit;
        --card_;
    }
}

std::vector<ElementIndex> SubsetMask::indices() const
{
    std::vector<ElementIndex> out;
    out.reserve(card_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            out.push_back(static_cast<ElementIndex>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::uint64_t SubsetMask::to_u64() const
{
    assert(universe_ <= 64);
    return words_.empty() ? 0 : words_[0];
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const
{
    assert(universe_ == other.universe_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w])
            return false;
    return true;
}

bool SubsetMask::intersects(const SubsetMask& other) const
{
    assert(universe_ == other.universe_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & other.words_[w])
            return true;
    return false;
}

SubsetMask SubsetMask::operator|(const SubsetMask& other) const
{
    assert(universe_ == other.universe_);
    SubsetMask out(universe_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        out.words_[w] = words_[w] | other.words_[w];
        out.card_ += static_cast<std::uint32_t>(std::popcount(out.words_[w]));
    }
    return out;
}

SubsetMask SubsetMask::operator&(const SubsetMask& other) const
{
    assert(universe_ == other.universe_);
    SubsetMask out(universe_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        out.words_[w] = words_[w] & other.words_[w];
        out.card_ += static_cast<std::uint32_t>(std::popcount(out.words_[w]));
    }
    return out;
}

std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b)
{
    if (a.universe_ != b.universe_)
        return a.universe_ <=> b.universe_;
    // At the lowest differing index i, the set containing i has i as its next element while
    // the other continues with something larger, unless the other has nothing left at all.
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        const std::uint64_t diff = a.words_[w] ^ b.words_[w];
        if (!diff)
            continue;
        const int bit = std::countr_zero(diff);
        const bool a_has = (a.words_[w] >> bit) & 1U;
        const SubsetMask& other = a_has ? b : a;
        const std::uint64_t above_in_word = bit == 63 ? 0 : other.words_[w] >> (bit + 1);
        bool other_continues = above_in_word != 0;
        for (std::size_t x = w + 1; !other_continues && x < other.words_.size(); ++x)
            other_continues = other.words_[x] != 0;
        const bool a_smaller = a_has == other_continues;
        return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Multiset

Multiset Multiset::indicator(const SubsetMask& s)
{
    Multiset m(s.universe());
    for (auto i : s.indices())
        m.add(i);
    return m;
}

Multiset Multiset::constant(std::uint32_t universe, std::uint64_t value)
{
    Multiset m(universe);
    for (ElementIndex i = 0; i < universe; ++i)
        m.add(i, value);
    return m;
}

void Multiset::add(ElementIndex i, std::uint64_t count)
{
    assert(i < counts_.size());
    counts_[i] = checked_add(counts_[i], count);
    total_ = checked_add(total_, count);
}

void Multiset::add(const Multiset& other)
{
    assert(other.universe() == universe());
    for (ElementIndex i = 0; i < universe(); ++i)
        add(i, other.counts_[i]);
}

bool Multiset::is_constant() const
{
    return std::adjacent_find(counts_.begin(), counts_.end(), std::not_equal_to<>()) == counts_.end();
}

// ---------------------------------------------------------------------------
// Subgroups and difference sets

SubsetMask cyclic_subgroup(const GroupSpec& g, const Element& gen)
{
    return span(g, std::span<const Element>(&gen, 1));
}

SubsetMask span(const GroupSpec& g, std::span<const Element> gens)
{
    SubsetMask out(g.order());
    out.insert(0);
    std::vector<ElementIndex> frontier{0};
    // Closure under adding generators; in a finite group this is the generated subgroup.
    while (!frontier.empty()) {
        const auto x = frontier.back();
        frontier.pop_back();
        for (const auto& gen : gens) {
            const auto y = g.index(g.add(g.element(x), gen));
            if (!out.contains(y)) {
                out.insert(y);
                frontier.push_back(y);
            }
        }
    }
    return out;
}

bool is_subgroup(const GroupSpec& g, const SubsetMask& s)
{
    if (s.universe() != g.order() || !s.contains(0))
        return false;
    const auto idx = s.indices();
    for (auto a : idx)
        for (auto b : idx)
            if (!s.contains(g.sub(a, b)))
                return false;
    return true;
}

Multiset difference_multiset(const GroupSpec& g, const SubsetMask& s)
{
    Multiset m(g.order());
    const auto idx = s.indices();
    for (auto a : idx)
        for (auto b : idx)
            m.add(g.sub(a, b));
    return m;
}

SubsetMask difference_set(const GroupSpec& g, const SubsetMask& s)
{
    SubsetMask d(g.order());
    const auto idx = s.indices();
    for (auto a : idx)
        for (auto b : idx)
            d.insert(g.sub(a, b));
    return d;
}

SubsetMask translate(const GroupSpec& g, const SubsetMask& s, ElementIndex by)
{
    SubsetMask out(g.order());
    for (auto i : s.indices())
        out.insert(g.add(i, by));
    return out;
}

SubsetMask plane_subgroup(const GroupSpec& g)
{
    const Element gens[] = {{1, 0, 0}, {0, 1, 0}};
    return span(g, gens);
}

SubsetMask q_subgroup(const GroupSpec& g)
{
    return cyclic_subgroup(g, {0, 0, 1});
}

std::vector<SubsetMask> all_subgroups(const GroupSpec& g)
{
    std::vector<std::vector<Element>> p_parts;
    p_parts.push_back({});
    p_parts.push_back({{1, 0, 0}, {0, 1, 0}});
    // Lines of Z_p^2: direction (1, t) for each t, plus (0, 1).
    for (std::uint32_t t = 0; t < g.p(); ++t)
        p_parts.push_back({{1, t, 0}});
    p_parts.push_back({{0, 1, 0}});

    std::vector<SubsetMask> out;
    for (const auto& base : p_parts) {
        for (bool with_q : {false, true}) {
            auto gens = base;
            if (with_q)
                gens.push_back({0, 0, 1});
            out.push_back(span(g, gens));
        }
    }
    std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) {
        if (a.count() != b.count())
            return a.count() < b.count();
        return a < b;
    });
    return out;
}

} // namespace fuglede
