#pragma once

#include "fuglede/group.hpp"

#include <cstdint>
#include <vector>

namespace fuglede {

enum class CharOrder { Trivial, P, Q, PQ };

/// Order class of the character chi_(a,b).
CharOrder char_order(const Element& chi);

/// Exact form of a character sum: entry (j, k) is the multiplicity of zeta_p^j * zeta_q^k.
class CoefficientMatrix {
public:
    CoefficientMatrix(std::uint32_t rows, std::uint32_t cols);
    CoefficientMatrix(std::uint32_t rows, std::uint32_t cols, std::vector<std::int64_t> entries);
    static CoefficientMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }

    std::int64_t operator()(std::uint32_t j, std::uint32_t k) const { return c_[j * cols_ + k]; }
    std::int64_t& operator()(std::uint32_t j, std::uint32_t k) { return c_[j * cols_ + k]; }

    std::int64_t sum() const;
    std::vector<std::int64_t> row_sums() const;
    std::vector<std::int64_t> col_sums() const;
    bool nonnegative() const;
    std::vector<std::vector<std::int64_t>> to_rows() const;

    friend bool operator==(const CoefficientMatrix&, const CoefficientMatrix&) = default;

private:
    std::uint32_t rows_;
    std::uint32_t cols_;
    std::vector<std::int64_t> c_;
};

/// c[j][k] = y[j] + x[k]: x weights the Z_p-cosets (columns), y the Z_q-cosets (rows).
struct CosetDecomposition {
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> y;

    std::int64_t p_coset_count() const;
    std::int64_t q_coset_count() const;
    CoefficientMatrix reconstruct() const;

    friend bool operator==(const CosetDecomposition&, const CosetDecomposition&) = default;
};

CoefficientMatrix char_coeff_matrix(const GroupSpec& g, const Element& chi, const Multiset& m);

/// Exact vanishing test for a coefficient matrix whose roots come from a character of the given order.
bool vanishes(const CoefficientMatrix& c, CharOrder order);
bool vanishes(const GroupSpec& g, const Element& chi, const Multiset& m);

/// True iff each class {x : <u, a> = k} carries |M| / p of the weight.
bool equidistributed(const GroupSpec& g, const Multiset& m, const PlaneVector& a);

/// Pushforward onto the (<x, a>, v) grid; rows are inner-product classes, columns raw q-coordinates.
CoefficientMatrix project(const GroupSpec& g, const Multiset& m, const PlaneVector& a, std::uint32_t b);

/// Canonical nonnegative decomposition (min y = 0) of a vanishing order-pq matrix. Throws NotVanishing.
CosetDecomposition lam_leung(const CoefficientMatrix& c);

/// Nonzero characters whose sum over S vanishes.
SubsetMask zero_set(const GroupSpec& g, const SubsetMask& s);

/// Floating-point |chi(M)|; a cross-check only, never used for decisions.
double numeric_char_sum(const GroupSpec& g, const Element& chi, const Multiset& m);

} // namespace fuglede
