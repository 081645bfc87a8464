#pragma once

#include "fuglede/affine.hpp"
#include "fuglede/group.hpp"
#include "fuglede/rng.hpp"
#include "fuglede/spectral.hpp"
#include "fuglede/tiling.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fuglede {

/// gcd(|G|, |S|); one of 1, p, q, p^2, pq, p^2 q.
struct SizeClass {
    std::uint32_t m = 1;

    std::string label(const GroupSpec& g) const;
    friend auto operator<=>(const SizeClass&, const SizeClass&) = default;
};

SizeClass size_class(std::uint32_t card, const GroupSpec& g);

struct VerifierLimits {
    std::uint32_t direct_max_order = 20; ///< exhaustive scan of every subset
    std::uint32_t orbit_max_order = 28;  ///< exhaustive scan of orbit representatives
    std::uint64_t symmetry_cap = kDefaultSymmetryCap;
};

/// Lexicographically smallest sorted element list in the affine orbit of S.
SubsetMask canonical_form(const GroupSpec& g, const SubsetMask& s, std::uint64_t cap = kDefaultSymmetryCap);

struct Representative {
    SubsetMask set;
    std::uint64_t orbit_size = 0;
};

/// One canonical subset per affine orbit (optionally of one size), with orbit sizes.
/// Throws GroupTooLargeForExhaustive when n exceeds limits.orbit_max_order.
std::vector<Representative> enumerate_representatives(const GroupSpec& g, std::optional<std::uint32_t> size = {},
    const VerifierLimits& limits = {});

/// Every nonzero a in Z_p^2 has a nonzero multiple (c a, 0) in S - S.
bool direction_coverage(const GroupSpec& g, const SubsetMask& s);

struct ExhaustiveMode {
    bool orbit_reduction = true;
    std::optional<std::uint32_t> size;
};

struct SampledMode {
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    std::optional<std::uint32_t> size;
};

using VerifyMode = std::variant<ExhaustiveMode, SampledMode>;

/// Per-subset result handed to VerifyOptions::observer.
struct SubsetOutcome {
    SubsetMask set;
    std::uint64_t weight = 1; ///< orbit size in orbit-reduced mode
    SpectrumSearch spectrum;
    ComplementSearch complement;
};

struct VerifyOptions {
    VerifyMode mode = ExhaustiveMode{};
    unsigned threads = 0; ///< 0 picks hardware concurrency
    VerifierLimits limits;
    /// Called once per examined subset, serialized by the verifier.
    std::function<void(const SubsetOutcome&)> observer;
};

/// Counts of subsets by (spectral, tile).
struct Tally {
    std::uint64_t both = 0;
    std::uint64_t spectral_only = 0;
    std::uint64_t tile_only = 0;
    std::uint64_t neither = 0;

    std::uint64_t total() const noexcept { return both + spectral_only + tile_only + neither; }
    Tally& operator+=(const Tally& o) noexcept;
    friend bool operator==(const Tally&, const Tally&) = default;
};

struct Violation {
    SubsetMask set;
    bool spectral = false;
    bool tile = false;
    std::uint64_t spectrum_nodes = 0;
    std::uint64_t complement_nodes = 0;
    std::optional<SubsetMask> witness;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ConjectureReport {
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    VerifyMode mode;
    std::map<std::uint32_t, Tally> by_class;  ///< keyed by SizeClass::m, weighted by orbit size
    std::uint64_t empty_sets = 0;             ///< the empty set is in no size class
    std::uint64_t subsets_examined = 0;       ///< searches actually run
    std::uint64_t subsets_covered = 0;        ///< subsets accounted for, including empty_sets
    std::uint64_t orbits_scanned = 0;
    std::uint64_t spectrum_nodes = 0;
    std::uint64_t complement_nodes = 0;
    std::vector<Violation> violations;        ///< sorted by set

    std::uint64_t spectral_not_tile() const;
    std::uint64_t tile_not_spectral() const;
    bool consistent() const { return violations.empty(); }
};

ConjectureReport verify_conjecture(const GroupSpec& g, const VerifyOptions& options);

/// Sizes drawn from in sampled mode: divisors of n, then three non-divisors chosen from `seed`.
std::vector<std::uint32_t> sample_size_menu(const GroupSpec& g, std::uint64_t seed);
/// Uniform subset of the given size.
SubsetMask random_subset(std::uint32_t universe, std::uint32_t size, Rng& rng);

inline constexpr std::uint64_t kSampleBatchSize = 256;

} // namespace fuglede
