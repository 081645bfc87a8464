#include "doctest.h"

#include "fuglede/error.hpp"
#include "fuglede/exact_sums.hpp"
#include "fuglede/spectral.hpp"
#include "fuglede/tiling.hpp"

#include "oracles.hpp"

using namespace fuglede;

namespace {

SubsetMask set_of(const GroupSpec& g, std::initializer_list<Element> elements)
{
    std::vector<Element> v(elements);
    return SubsetMask::from_elements(g, v);
}

// One representative per coset of b, taking the k-th element of each coset along `order`.
SubsetMask transversal(const GroupSpec& g, const SubsetMask& b, std::uint64_t salt)
{
    SubsetMask seen(g.order());
    SubsetMask out(g.order());
    for (ElementIndex x = 0; x < g.order(); ++x) {
        if (seen.contains(x))
            continue;
        const auto coset = translate(g, b, x);
        const auto members = coset.indices();
        out.insert(members[salt % members.size()]);
        salt = salt * 6364136223846793005ULL + 1442695040888963407ULL;
        seen = seen | coset;
    }
    return out;
}

} // namespace

TEST_CASE("spectral pair verification")
{
    const auto g = make_group(2, 3);
    const auto plane = plane_subgroup(g);
    CHECK(verify_spectral_pair(g, plane, plane));
    const auto zero = set_of(g, {{0, 0, 0}});
    CHECK(verify_spectral_pair(g, zero, zero));
    CHECK_FALSE(verify_spectral_pair(g, set_of(g, {{0, 0, 0}, {1, 0, 0}}), set_of(g, {{0, 0, 0}, {0, 0, 1}})));
    CHECK_FALSE(verify_spectral_pair(g, SubsetMask(12), SubsetMask(12)));
}

TEST_CASE("spectrum search")
{
    const auto g = make_group(2, 3);
    const auto pair = set_of(g, {{0, 0, 0}, {1, 0, 0}});
    const auto found = find_spectrum(g, pair);
    REQUIRE(found.found());
    CHECK(found.certificate->normalized);
    CHECK(found.certificate->spectrum.contains(0));
    CHECK(verify_spectral_pair(g, pair, found.certificate->spectrum));

    const auto missing = find_spectrum(g, set_of(g, {{0, 0, 0}, {0, 0, 1}}));
    CHECK_FALSE(missing.found());
    CHECK(missing.explored_nodes > 0);
    CHECK_FALSE(oracle::is_spectral(oracle::Group(2, 3), 0b11));

    const auto full = find_spectrum(g, SubsetMask::full(12));
    REQUIRE(full.found());
    CHECK(full.certificate->spectrum == SubsetMask::full(12));

    CHECK(is_spectral(g, pair));
    CHECK_FALSE(is_spectral(g, set_of(g, {{0, 0, 0}, {0, 0, 1}})));
    CHECK(is_spectral(g, SubsetMask::full(12)));
}

TEST_CASE("spectra of subgroup transversals")
{
    const auto g = make_group(2, 3);
    const auto zq = q_subgroup(g);
    for (std::uint64_t salt = 0; salt < 20; ++salt) {
        const auto a = transversal(g, zq, salt);
        const auto cert = subgroup_complement_spectrum(g, a, zq);
        CHECK(cert.spectrum == plane_subgroup(g));
        CHECK(verify_spectral_pair(g, a, cert.spectrum));
    }

    const auto zero = set_of(g, {{0, 0, 0}});
    CHECK(subgroup_complement_spectrum(g, zero, SubsetMask::full(12)).spectrum == zero);

    const auto b = cyclic_subgroup(g, {1, 0, 0});
    const auto a = transversal(g, b, 3);
    const auto cert = subgroup_complement_spectrum(g, a, b);
    CHECK(cert.spectrum.count() == 6);
    CHECK(cert.spectrum.contains(g.index({0, 1, 0})));
    CHECK(cert.spectrum.contains(g.index({0, 0, 1})));
    CHECK(verify_spectral_pair(g, a, cert.spectrum));
    CHECK(verify_tiling(g, cert.spectrum, b));

    CHECK_THROWS_AS(subgroup_complement_spectrum(g, a, set_of(g, {{0, 0, 0}, {0, 0, 1}})), NotASubgroup);
    CHECK_THROWS_AS(subgroup_complement_spectrum(g, set_of(g, {{0, 0, 0}}), b), NotATiling);
}

TEST_CASE("isotropic subgroup: transversals still get a spectrum")
{
    // With p = 2 the line through (1,1) is isotropic; the literal complement <(1,0)> x Z_3 fails for this A.
    const auto g = make_group(2, 3);
    const auto b = cyclic_subgroup(g, {1, 1, 0});
    for (std::uint64_t salt = 0; salt < 40; ++salt) {
        const auto a = transversal(g, b, salt);
        const auto cert = subgroup_complement_spectrum(g, a, b);
        CHECK(verify_spectral_pair(g, a, cert.spectrum));
        CHECK(is_subgroup(g, cert.spectrum));
    }
}

TEST_CASE("every subgroup is spectral and tiles")
{
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 5}}) {
        const auto g = make_group(p, q);
        for (const auto& b : all_subgroups(g)) {
            CHECK(is_spectral(g, b));
            const auto l = subgroup_complement(g, b);
            CHECK(is_subgroup(g, l));
            CHECK(verify_tiling(g, b, l));
            CHECK(verify_spectral_pair(g, b, subgroup_complement(g, annihilator(g, b))));
        }
    }
}

TEST_CASE("tiling verification")
{
    const auto g = make_group(2, 3);
    CHECK(verify_tiling(g, q_subgroup(g), plane_subgroup(g)));
    CHECK(verify_tiling(g, SubsetMask::full(12), set_of(g, {{0, 0, 0}})));
    const auto s = set_of(g, {{0, 0, 0}, {0, 0, 1}});
    bool any = false;
    for (std::uint64_t t = 0; t < 4096; ++t)
        if (std::popcount(t) == 6)
            any = any || verify_tiling(g, s, SubsetMask::from_u64(12, t));
    CHECK_FALSE(any);
    CHECK_FALSE(verify_tiling(g, q_subgroup(g), q_subgroup(g)));
}

TEST_CASE("complement search")
{
    const auto g = make_group(2, 3);
    const auto pair = set_of(g, {{0, 0, 0}, {1, 0, 0}});
    const auto found = find_complement(g, pair);
    REQUIRE(found.found());
    CHECK(found.certificate->complement.count() == 6);
    CHECK(found.certificate->complement.contains(0));
    CHECK(verify_tiling(g, pair, found.certificate->complement));

    const auto missing = find_complement(g, set_of(g, {{0, 0, 0}, {0, 0, 1}}));
    CHECK_FALSE(missing.found());
    CHECK(missing.explored_nodes > 0);

    const auto zero = find_complement(g, set_of(g, {{0, 0, 0}}));
    REQUIRE(zero.found());
    CHECK(zero.certificate->complement == SubsetMask::full(12));

    CHECK_FALSE(is_tile(g, SubsetMask::from_u64(12, 0b11111)));
    CHECK(is_tile(g, pair));
}

TEST_CASE("subgroup complements")
{
    const auto g = make_group(3, 2);
    const auto b = cyclic_subgroup(g, {1, 0, 0});
    const auto l = subgroup_complement(g, b);
    CHECK(l.count() == 6);
    CHECK(q_subgroup(g).is_subset_of(l));
    CHECK(verify_tiling(g, b, l));
    CHECK(subgroup_complement(g, set_of(g, {{0, 0, 0}})) == SubsetMask::full(18));
    CHECK(subgroup_complement(g, plane_subgroup(g)) == q_subgroup(g));
    CHECK_THROWS_AS(subgroup_complement(g, set_of(g, {{1, 0, 0}})), NotASubgroup);
}

TEST_CASE("fourier product identity on tilings of subgroups")
{
    const auto g = make_group(3, 2);
    for (const auto& b : all_subgroups(g)) {
        const auto l = subgroup_complement(g, b);
        const auto zb = zero_set(g, b);
        const auto zl = zero_set(g, l);
        for (ElementIndex chi = 1; chi < g.order(); ++chi)
            CHECK((zb.contains(chi) || zl.contains(chi)));
    }
}
