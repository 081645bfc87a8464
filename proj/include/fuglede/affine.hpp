#pragma once

#include "fuglede/group.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace fuglede {

/// Default bound on the number of affine maps we are willing to enumerate.
inline constexpr std::uint64_t kDefaultSymmetryCap = 5'000'000;

/// 2x2 matrix over Z_p, row-major.
struct Mat2 {
    std::array<std::uint32_t, 4> m{1, 0, 0, 1};

    friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

/// x -> (A u, r v) + t: an automorphism of G followed by a translation.
struct AffineMap {
    Mat2 linear;
    std::uint32_t unit = 1;
    Element shift;

    friend auto operator<=>(const AffineMap&, const AffineMap&) = default;
};

AffineMap identity_map();

/// |GL(2,p)| * (q - 1) * n.
std::uint64_t affine_group_order(const GroupSpec& g);

/// Every invertible 2x2 matrix over Z_p, in row-major lexicographic order.
std::vector<Mat2> general_linear_group(std::uint32_t p);

/// All affine maps, ordered by (matrix, unit, shift index). Throws SymmetryGroupTooLarge above `cap`.
std::vector<AffineMap> enumerate_affine_maps(const GroupSpec& g, std::uint64_t cap = kDefaultSymmetryCap);

Element apply_map(const GroupSpec& g, const AffineMap& m, const Element& x);
SubsetMask apply_map(const GroupSpec& g, const AffineMap& m, const SubsetMask& s);

/// The index permutation induced by an affine map.
std::vector<ElementIndex> map_permutation(const GroupSpec& g, const AffineMap& m);

} // namespace fuglede
