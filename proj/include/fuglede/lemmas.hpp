#pragma once

#include "fuglede/group.hpp"
#include "fuglede/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fuglede {

/// Decides chi(M) = 0. The suites take it as a parameter so a harness self-test can substitute a broken one.
using VanishingOracle = std::function<bool(const GroupSpec&, const Element&, const Multiset&)>;

VanishingOracle exact_vanishing_oracle();

struct LemmaResult {
    std::string name;
    std::uint64_t checks = 0;
    bool passed = true;
    std::string counterexample; ///< first failure, empty when passed
};

struct LemmaReport {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::vector<LemmaResult> results;

    bool all_passed() const;
};

/// Exact vanishing agrees with |chi(M)| < 1e-9 on random and on coset-built multisets.
LemmaResult check_exact_numeric_agreement(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish);
/// A vanishing sum at an order-p (order-q) character has p | |M| (q | |M|).
LemmaResult check_divisibility(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish);
LemmaResult check_equidistribution(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish);
/// Coset sums decompose canonically and reconstruct; perturbed matrices are rejected; vanishing projections decompose.
LemmaResult check_lam_leung(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish);
LemmaResult check_projection_consistency(const GroupSpec& g, Rng& rng, std::uint64_t trials);
/// All nonzero characters vanish on M iff M is constant.
LemmaResult check_constant_multiset(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish);
/// A transversal of a subgroup B has the annihilator of B as a spectrum.
LemmaResult check_subgroup_complement_spectrum(const GroupSpec& g, Rng& rng, std::uint64_t trials);
/// Every divisor of n is the order of a subgroup that tiles with its constructed complement.
LemmaResult check_complemented_divisors(const GroupSpec& g);
/// If S + T = G then every nonzero character vanishes on S or on T.
LemmaResult check_fourier_product(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish);

LemmaReport lemma_suite(const GroupSpec& g, std::uint64_t seed, std::uint64_t trials, const VanishingOracle& vanish = {});

/// A random multiset on which chi vanishes, built from full fibers of chi plus balancing weight.
Multiset random_vanishing_multiset(const GroupSpec& g, const Element& chi, Rng& rng, std::uint64_t max_total);

} // namespace fuglede
