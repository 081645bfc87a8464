#pragma once

#include "fuglede/group.hpp"

#include <cstdint>
#include <optional>

namespace fuglede {

/// S + T = G with every element written uniquely.
struct TilingCertificate {
    SubsetMask set;
    SubsetMask complement;
    bool normalized = false; ///< 0 is in complement
};

struct ComplementSearch {
    std::optional<TilingCertificate> certificate;
    std::uint64_t explored_nodes = 0;

    bool found() const noexcept { return certificate.has_value(); }
};

bool verify_tiling(const GroupSpec& g, const SubsetMask& s, const SubsetMask& t);

/// Exact-cover search for a complement containing 0.
ComplementSearch find_complement(const GroupSpec& g, const SubsetMask& s);

bool is_tile(const GroupSpec& g, const SubsetMask& s);

/// A subgroup L with B + L = G, built from the isomorphism type of B. Throws NotASubgroup.
SubsetMask subgroup_complement(const GroupSpec& g, const SubsetMask& b);

} // namespace fuglede
