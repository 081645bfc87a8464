#include "fuglede/tiling.hpp"

#include "fuglede/error.hpp"

#include <bit>
#include <cassert>

namespace fuglede {

namespace {

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, ElementIndex i)
{
    return (b[i >> 6] >> (i & 63)) & 1U;
}

void set(Bits& b, ElementIndex i)
{
    b[i >> 6] |= std::uint64_t{1} << (i & 63);
}

// Exact cover of G by translates S + t, always covering the least uncovered element next.
class ComplementSearcher {
public:
    ComplementSearcher(const GroupSpec& g, const SubsetMask& s)
        : g_(g), set_(s.indices()), diffs_(difference_set(g, s).indices()), words_((g.order() + 63) / 64)
    {
    }

    bool run(std::uint32_t target)
    {
        target_ = target;
        Bits covered(words_, 0);
        Bits forbidden(words_, 0);
        for (auto x : set_)
            set(covered, x);
        for (auto d : diffs_)
            set(forbidden, d);
        shifts_ = {0};
        return extend(covered, forbidden, 0);
    }

    const std::vector<ElementIndex>& shifts() const noexcept { return shifts_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    ElementIndex least_uncovered(const Bits& covered, ElementIndex from) const
    {
        for (std::size_t w = from >> 6; w < words_; ++w) {
            std::uint64_t free = ~covered[w];
            if (w == (from >> 6))
                free &= ~std::uint64_t{0} << (from & 63);
            if (free) {
                const auto i = static_cast<ElementIndex>(w * 64 + std::countr_zero(free));
                return i;
            }
        }
        return g_.order();
    }

    bool extend(const Bits& covered, const Bits& forbidden, ElementIndex from)
    {
        if (shifts_.size() == target_)
            return true;
        const auto gap = least_uncovered(covered, from);
        assert(gap < g_.order());
        Bits next_covered(words_);
        Bits next_forbidden(words_);
        for (auto s : set_) {
            const auto t = g_.sub(gap, s);
            // t - t' in S - S for some placed t' means S + t meets S + t'.
            if (test(forbidden, t))
                continue;
            ++nodes_;
            next_covered = covered;
            next_forbidden = forbidden;
            for (auto x : set_)
                set(next_covered, g_.add(x, t));
            for (auto d : diffs_)
                set(next_forbidden, g_.add(d, t));
            shifts_.push_back(t);
            if (extend(next_covered, next_forbidden, gap + 1))
                return true;
            shifts_.pop_back();
        }
        return false;
    }

    const GroupSpec& g_;
    std::vector<ElementIndex> set_;
    std::vector<ElementIndex> diffs_;
    std::size_t words_;
    std::uint32_t target_ = 0;
    std::vector<ElementIndex> shifts_;
    std::uint64_t nodes_ = 0;
};

} // namespace

bool verify_tiling(const GroupSpec& g, const SubsetMask& s, const SubsetMask& t)
{
    if (s.universe() != g.order() || t.universe() != g.order())
        return false;
    if (std::uint64_t{s.count()} * t.count() != g.order())
        return false;
    SubsetMask hit(g.order());
    const auto tv = t.indices();
    for (auto a : s.indices())
        for (auto b : tv) {
            const auto x = g.add(a, b);
            if (hit.contains(x))
                return false;
            hit.insert(x);
        }
    return true;
}

ComplementSearch find_complement(const GroupSpec& g, const SubsetMask& s)
{
    ComplementSearch result;
    const auto k = s.count();
    if (k == 0 || g.order() % k != 0)
        return result;
    result.explored_nodes = 1;

    ComplementSearcher search(g, s);
    const bool found = search.run(g.order() / k);
    result.explored_nodes += search.nodes();
    if (!found)
        return result;

    SubsetMask t(g.order());
    for (auto x : search.shifts())
        t.insert(x);
    assert(verify_tiling(g, s, t));
    result.certificate = TilingCertificate{s, std::move(t), true};
    return result;
}

bool is_tile(const GroupSpec& g, const SubsetMask& s)
{
    return find_complement(g, s).found();
}

SubsetMask subgroup_complement(const GroupSpec& g, const SubsetMask& b)
{
    if (!is_subgroup(g, b))
        throw NotASubgroup("B is not a subgroup of G");

    // A subgroup is the product of its p-part (inside the plane) and its q-part.
    const auto p_part = b & plane_subgroup(g);
    const auto q_part = b & q_subgroup(g);

    std::vector<Element> gens;
    if (p_part.count() == 1) {
        gens.push_back({1, 0, 0});
        gens.push_back({0, 1, 0});
    } else if (p_part.count() == g.p()) {
        Element dir{};
        for (auto i : p_part.indices())
            if (i != 0) {
                dir = g.element(i);
                break;
            }
        // (1, 0) is independent of dir unless dir lies on the first axis.
        gens.push_back(dir.u2 != 0 ? Element{1, 0, 0} : Element{0, 1, 0});
    }
    if (q_part.count() == 1)
        gens.push_back({0, 0, 1});

    auto l = span(g, gens);
    assert(verify_tiling(g, b, l));
    return l;
}

} // namespace fuglede
