#include "doctest.h"

#include "fuglede/affine.hpp"
#include "fuglede/error.hpp"
#include "fuglede/group.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace fuglede;

TEST_CASE("make_group validates its primes")
{
    const auto g = make_group(2, 3);
    CHECK(g.p() == 2);
    CHECK(g.q() == 3);
    CHECK(g.order() == 12);
    CHECK(make_group(3, 2).order() == 18);
    CHECK_THROWS_AS(make_group(4, 3), NotPrime);
    CHECK_THROWS_AS(make_group(3, 1), NotPrime);
    CHECK_THROWS_AS(make_group(5, 5), EqualPrimes);
    CHECK_THROWS_AS(make_group(1031, 3), GroupTooLarge);
}

TEST_CASE("group law, negation and element orders")
{
    const auto g = make_group(3, 2);
    CHECK(g.add(Element{1, 2, 1}, Element{2, 2, 1}) == Element{0, 1, 0});
    CHECK(g.neg(Element{0, 0, 0}) == Element{0, 0, 0});
    CHECK(g.neg(Element{1, 0, 1}) == Element{2, 0, 1});
    CHECK(g.element_order({0, 0, 0}) == 1);
    CHECK(g.element_order({1, 0, 0}) == 3);
    CHECK(g.element_order({1, 2, 1}) == 6);

    std::map<std::uint32_t, int> sizes;
    for (ElementIndex i = 0; i < g.order(); ++i) {
        CHECK(g.index(g.element(i)) == i);
        CHECK(g.add(i, g.neg(i)) == 0);
        ++sizes[g.element_order(g.element(i))];
    }
    CHECK(sizes[1] == 1);
    CHECK(sizes[3] == 8);
    CHECK(sizes[2] == 1);
    CHECK(sizes[6] == 8);
}

TEST_CASE("index encoding matches the reference")
{
    const auto g = make_group(2, 3);
    const oracle::Group o(2, 3);
    for (ElementIndex i = 0; i < g.order(); ++i) {
        const auto e = g.element(i);
        const auto c = o.at(static_cast<int>(i));
        CHECK(static_cast<int>(e.u1) == c.u1);
        CHECK(static_cast<int>(e.u2) == c.u2);
        CHECK(static_cast<int>(e.v) == c.v);
        for (ElementIndex j = 0; j < g.order(); ++j)
            CHECK(static_cast<int>(g.add(i, j)) == o.add(static_cast<int>(i), static_cast<int>(j)));
    }
}

TEST_CASE("inner products mod p")
{
    CHECK(inner_p(5, {1, 2}, {3, 1}) == 0);
    CHECK(inner_p(5, {0, 0}, {4, 4}) == 0);
    CHECK(inner_p(5, {1, 1}, {1, 1}) == 2);
}

TEST_CASE("character exponents")
{
    const auto g = make_group(3, 2);
    CHECK(char_exponents(g, {1, 0, 1}, {1, 2, 1}) == CharExponents{1, 1});
    for (ElementIndex i = 0; i < g.order(); ++i)
        CHECK(char_exponents(g, {0, 0, 0}, g.element(i)) == CharExponents{0, 0});
    CHECK(char_exponents(g, {1, 1, 0}, {2, 1, 1}) == CharExponents{0, 0});
    for (ElementIndex a = 0; a < g.order(); ++a)
        for (ElementIndex b = 0; b < g.order(); ++b)
            CHECK(char_exponents(g, g.element(a), g.element(b)) == char_exponents(g, g.element(b), g.element(a)));
}

TEST_CASE("cyclic subgroups and spans")
{
    const auto g = make_group(2, 3);
    CHECK(cyclic_subgroup(g, {0, 0, 0}).count() == 1);
    CHECK(cyclic_subgroup(g, {1, 0, 1}).count() == 6);
    const std::vector<Element> gens{{1, 0, 0}, {0, 1, 0}};
    const auto plane = span(g, gens);
    CHECK(plane.count() == 4);
    CHECK(plane == plane_subgroup(g));
    CHECK(is_subgroup(g, plane));
    CHECK_FALSE(is_subgroup(g, SubsetMask::from_u64(12, 0b11)));
}

TEST_CASE("difference multisets")
{
    const auto g = make_group(2, 3);
    const auto zero = difference_multiset(g, SubsetMask::from_u64(12, 1));
    CHECK(zero[0] == 1);
    CHECK(zero.total() == 1);

    const std::vector<Element> pair{{0, 0, 0}, {1, 0, 0}};
    const auto d = difference_multiset(g, SubsetMask::from_elements(g, pair));
    CHECK(d[0] == 2);
    CHECK(d[g.index({1, 0, 0})] == 2);
    CHECK(d.total() == 4);

    const auto full = difference_multiset(g, SubsetMask::full(12));
    for (ElementIndex i = 0; i < 12; ++i)
        CHECK(full[i] == 12);
}

TEST_CASE("subgroup lattice")
{
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 5}, std::pair{5, 2}}) {
        const auto g = make_group(p, q);
        const auto subs = all_subgroups(g);
        CHECK(subs.size() == 2 * (static_cast<std::size_t>(p) + 3));
        std::set<std::uint32_t> orders;
        for (const auto& s : subs) {
            CHECK(is_subgroup(g, s));
            orders.insert(s.count());
        }
        CHECK(orders.size() == 6);
    }
}

TEST_CASE("SubsetMask ordering is lexicographic on sorted lists")
{
    const std::vector<ElementIndex> a{0, 5};
    const std::vector<ElementIndex> b{1, 2};
    const std::vector<ElementIndex> c{0, 5, 7};
    CHECK(SubsetMask::from_indices(12, a) < SubsetMask::from_indices(12, b));
    CHECK(SubsetMask::from_indices(12, a) < SubsetMask::from_indices(12, c));
    CHECK(SubsetMask(12) < SubsetMask::from_indices(12, a));
}

TEST_CASE("affine group sizes")
{
    CHECK(general_linear_group(2).size() == oracle::count_invertible_2x2(2));
    CHECK(general_linear_group(3).size() == oracle::count_invertible_2x2(3));
    CHECK(general_linear_group(5).size() == oracle::count_invertible_2x2(5));

    const auto g23 = make_group(2, 3);
    CHECK(affine_group_order(g23) == 144);
    CHECK(enumerate_affine_maps(g23).size() == 144);
    const auto g32 = make_group(3, 2);
    CHECK(affine_group_order(g32) == 864);
    CHECK(enumerate_affine_maps(g32).size() == 864);
    CHECK_THROWS_AS(enumerate_affine_maps(g32, 100), SymmetryGroupTooLarge);
}

TEST_CASE("affine maps act as permutations")
{
    const auto g = make_group(2, 3);
    const auto s = SubsetMask::from_u64(12, 0b100100010011);
    CHECK(apply_map(g, identity_map(), s) == s);
    const auto diffs = difference_set(g, s);
    for (const auto& m : enumerate_affine_maps(g)) {
        const auto image = apply_map(g, m, s);
        CHECK(image.count() == s.count());
        auto perm = map_permutation(g, m);
        std::sort(perm.begin(), perm.end());
        CHECK(std::adjacent_find(perm.begin(), perm.end()) == perm.end());
        if (m.shift == Element{}) {
            CHECK(apply_map(g, m, diffs) == difference_set(g, image));
        }
    }
}
