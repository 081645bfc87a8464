#include "doctest.h"

#include "fuglede/affine.hpp"
#include "fuglede/exact_sums.hpp"
#include "fuglede/spectral.hpp"
#include "fuglede/tiling.hpp"
#include "fuglede/verifier.hpp"

#include "oracles.hpp"

using namespace fuglede;

// Brute-force invariance checks on |G| = 12. Each subset is compared with its images under
// every translation and every automorphism (affine maps with zero shift).

namespace {

struct Decisions {
    std::vector<std::int8_t> spectral;
    std::vector<std::int8_t> tile;
};

const Decisions& decisions_2_3()
{
    static const Decisions d = [] {
        const auto g = make_group(2, 3);
        Decisions out;
        out.spectral.resize(4096);
        out.tile.resize(4096);
        for (std::uint64_t s = 1; s < 4096; ++s) {
            const auto mask = SubsetMask::from_u64(12, s);
            out.spectral[s] = is_spectral(g, mask);
            out.tile[s] = is_tile(g, mask);
        }
        return out;
    }();
    return d;
}

} // namespace

TEST_CASE("translation invariance on |G| = 12")
{
    const auto g = make_group(2, 3);
    const auto& d = decisions_2_3();
    std::uint64_t mismatches = 0;
    for (std::uint64_t s = 1; s < 4096; ++s)
        for (ElementIndex t = 1; t < 12; ++t) {
            const auto image = translate(g, SubsetMask::from_u64(12, s), t).to_u64();
            mismatches += d.spectral[s] != d.spectral[image];
            mismatches += d.tile[s] != d.tile[image];
        }
    CHECK(mismatches == 0);
}

TEST_CASE("automorphism invariance on |G| = 12")
{
    const auto g = make_group(2, 3);
    const auto& d = decisions_2_3();
    std::uint64_t mismatches = 0;
    for (const auto& m : enumerate_affine_maps(g)) {
        if (m.shift != Element{})
            continue;
        for (std::uint64_t s = 1; s < 4096; ++s) {
            const auto image = apply_map(g, m, SubsetMask::from_u64(12, s)).to_u64();
            mismatches += d.spectral[s] != d.spectral[image];
            mismatches += d.tile[s] != d.tile[image];
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("spectral pairs are symmetric and survive translation")
{
    const auto g = make_group(2, 3);
    for (std::uint64_t s = 1; s < 4096; s += 3) {
        const auto mask = SubsetMask::from_u64(12, s);
        const auto found = find_spectrum(g, mask);
        if (!found.found())
            continue;
        const auto& lambda = found.certificate->spectrum;
        CHECK(verify_spectral_pair(g, lambda, mask));
        CHECK(verify_spectral_pair(g, translate(g, mask, s % 12), translate(g, lambda, (s / 12) % 12)));
    }
}

TEST_CASE("tilings are symmetric and satisfy the fourier product identity")
{
    const auto g = make_group(3, 2);
    Rng rng(17);
    for (int trial = 0; trial < 400; ++trial) {
        const std::uint32_t sizes[] = {1, 2, 3, 6, 9, 18};
        const auto k = sizes[rng.below(6)];
        const auto s = random_subset(18, k, rng);
        const auto found = find_complement(g, s);
        if (!found.found())
            continue;
        const auto& t = found.certificate->complement;
        CHECK(verify_tiling(g, t, s));
        const auto zs = zero_set(g, s);
        const auto zt = zero_set(g, t);
        for (ElementIndex chi = 1; chi < 18; ++chi)
            CHECK((zs.contains(chi) || zt.contains(chi)));
        CHECK((difference_set(g, s) & difference_set(g, t)).count() == 1);
    }
}

TEST_CASE("searches agree with exhaustive enumeration on |G| = 12")
{
    const oracle::Group o(2, 3);
    const auto& d = decisions_2_3();
    std::uint64_t disagreements = 0;
    for (std::uint64_t s = 1; s < 4096; ++s) {
        disagreements += static_cast<bool>(d.spectral[s]) != oracle::is_spectral(o, s);
        disagreements += static_cast<bool>(d.tile[s]) != oracle::is_tile(o, s);
    }
    CHECK(disagreements == 0);
}

TEST_CASE("constant multisets are exactly the ones killed by every nonzero character")
{
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 5}}) {
        const auto g = make_group(p, q);
        Rng rng(static_cast<std::uint64_t>(p + 10 * q));
        for (int trial = 0; trial < 60; ++trial) {
            auto m = Multiset::constant(g.order(), rng.below(5));
            const bool perturb = trial % 2 == 1;
            if (perturb)
                m.add(static_cast<ElementIndex>(rng.below(g.order())), 1 + rng.below(2));
            bool all = true;
            for (ElementIndex chi = 1; chi < g.order(); ++chi)
                all = all && vanishes(g, g.element(chi), m);
            CHECK(all == m.is_constant());
            CHECK(all != perturb);
        }
    }
}
