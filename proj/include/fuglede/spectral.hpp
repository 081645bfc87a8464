#pragma once

#include "fuglede/group.hpp"

#include <cstdint>
#include <optional>

namespace fuglede {

/// (S, Lambda) with |S| = |Lambda| and every nonzero difference of Lambda in zero_set(S).
struct SpectralCertificate {
    SubsetMask set;
    SubsetMask spectrum;
    bool normalized = false; ///< 0 is in spectrum
};

/// Outcome of a spectrum search. `explored_nodes` is the exhaustion record when no certificate exists.
struct SpectrumSearch {
    std::optional<SpectralCertificate> certificate;
    std::uint64_t explored_nodes = 0;

    bool found() const noexcept { return certificate.has_value(); }
};

bool verify_spectral_pair(const GroupSpec& g, const SubsetMask& s, const SubsetMask& spectrum);

/// Clique search for a spectrum containing 0 in the Cayley graph generated by zero_set(S).
SpectrumSearch find_spectrum(const GroupSpec& g, const SubsetMask& s);

bool is_spectral(const GroupSpec& g, const SubsetMask& s);

/// Subgroup of characters trivial on B.
SubsetMask annihilator(const GroupSpec& g, const SubsetMask& subgroup);

/// Spectrum of a transversal A of the subgroup B, i.e. A + B = G. Throws NotASubgroup / NotATiling.
SpectralCertificate subgroup_complement_spectrum(const GroupSpec& g, const SubsetMask& a, const SubsetMask& b);

} // namespace fuglede
