#include "fuglede/affine.hpp"

#include "fuglede/error.hpp"

namespace fuglede {

AffineMap identity_map()
{
    return {};
}

std::uint64_t affine_group_order(const GroupSpec& g)
{
    const std::uint64_t p = g.p();
    return (p * p - 1) * (p * p - p) * (g.q() - 1) * g.order();
}

std::vector<Mat2> general_linear_group(std::uint32_t p)
{
    std::vector<Mat2> out;
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c)
                for (std::uint32_t d = 0; d < p; ++d)
                    if ((std::uint64_t{a} * d + std::uint64_t{p - b} * c) % p != 0)
                        out.push_back({{a, b, c, d}});
    return out;
}

std::vector<AffineMap> enumerate_affine_maps(const GroupSpec& g, std::uint64_t cap)
{
    const std::uint64_t total = affine_group_order(g);
    if (total >= cap)
        throw SymmetryGroupTooLarge(std::to_string(total) + " affine maps exceed the cap of " + std::to_string(cap));
    std::vector<AffineMap> out;
    out.reserve(total);
    for (const auto& m : general_linear_group(g.p()))
        for (std::uint32_t r = 1; r < g.q(); ++r)
            for (ElementIndex t = 0; t < g.order(); ++t)
                out.push_back({m, r, g.element(t)});
    return out;
}

Element apply_map(const GroupSpec& g, const AffineMap& m, const Element& x)
{
    const auto p = g.p();
    const auto& a = m.linear.m;
    const Element linear{static_cast<std::uint32_t>((std::uint64_t{a[0]} * x.u1 + std::uint64_t{a[1]} * x.u2) % p),
        static_cast<std::uint32_t>((std::uint64_t{a[2]} * x.u1 + std::uint64_t{a[3]} * x.u2) % p),
        static_cast<std::uint32_t>(std::uint64_t{m.unit} * x.v % g.q())};
    return g.add(linear, m.shift);
}

SubsetMask apply_map(const GroupSpec& g, const AffineMap& m, const SubsetMask& s)
{
    SubsetMask out(g.order());
    for (auto i : s.indices())
        out.insert(g.index(apply_map(g, m, g.element(i))));
    return out;
}

std::vector<ElementIndex> map_permutation(const GroupSpec& g, const AffineMap& m)
{
    std::vector<ElementIndex> perm(g.order());
    for (ElementIndex i = 0; i < g.order(); ++i)
        perm[i] = g.index(apply_map(g, m, g.element(i)));
    return perm;
}

} // namespace fuglede
