#include "fuglede/exact_sums.hpp"

#include "fuglede/checked.hpp"
#include "fuglede/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fuglede {

namespace {

std::int64_t to_signed(std::uint64_t x)
{
    if (x > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw ArithmeticOverflow("multiset weight does not fit a signed 64-bit entry");
    return static_cast<std::int64_t>(x);
}

bool all_equal(const std::vector<std::int64_t>& v)
{
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

} // namespace

CharOrder char_order(const Element& chi)
{
    const bool a = chi.u1 != 0 || chi.u2 != 0;
    const bool b = chi.v != 0;
    if (a && b)
        return CharOrder::PQ;
    if (a)
        return CharOrder::P;
    if (b)
        return CharOrder::Q;
    return CharOrder::Trivial;
}

// ---------------------------------------------------------------------------
// CoefficientMatrix

CoefficientMatrix::CoefficientMatrix(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols), c_(std::size_t{rows} * cols, 0)
{
}

CoefficientMatrix::CoefficientMatrix(std::uint32_t rows, std::uint32_t cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), c_(std::move(entries))
{
    if (c_.size() != std::size_t{rows} * cols)
        throw std::invalid_argument("coefficient matrix entry count does not match its shape");
}

CoefficientMatrix CoefficientMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows)
{
    if (rows.empty() || rows.front().empty())
        throw std::invalid_argument("coefficient matrix must be nonempty");
    CoefficientMatrix out(static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(rows.front().size()));
    for (std::uint32_t j = 0; j < out.rows_; ++j) {
        if (rows[j].size() != out.cols_)
            throw std::invalid_argument("coefficient matrix rows differ in length");
        for (std::uint32_t k = 0; k < out.cols_; ++k)
            out(j, k) = rows[j][k];
    }
    return out;
}

std::int64_t CoefficientMatrix::sum() const
{
    std::int64_t s = 0;
    for (auto x : c_)
        s = checked_add(s, x);
    return s;
}

std::vector<std::int64_t> CoefficientMatrix::row_sums() const
{
    std::vector<std::int64_t> out(rows_, 0);
    for (std::uint32_t j = 0; j < rows_; ++j)
        for (std::uint32_t k = 0; k < cols_; ++k)
            out[j] = checked_add(out[j], (*this)(j, k));
    return out;
}

std::vector<std::int64_t> CoefficientMatrix::col_sums() const
{
    std::vector<std::int64_t> out(cols_, 0);
    for (std::uint32_t j = 0; j < rows_; ++j)
        for (std::uint32_t k = 0; k < cols_; ++k)
            out[k] = checked_add(out[k], (*this)(j, k));
    return out;
}

bool CoefficientMatrix::nonnegative() const
{
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x >= 0; });
}

std::vector<std::vector<std::int64_t>> CoefficientMatrix::to_rows() const
{
    std::vector<std::vector<std::int64_t>> out(rows_);
    for (std::uint32_t j = 0; j < rows_; ++j)
        out[j].assign(c_.begin() + std::ptrdiff_t{j} * cols_, c_.begin() + std::ptrdiff_t{j + 1} * cols_);
    return out;
}

// ---------------------------------------------------------------------------
// CosetDecomposition

std::int64_t CosetDecomposition::p_coset_count() const
{
    std::int64_t s = 0;
    for (auto v : x)
        s = checked_add(s, v);
    return s;
}

std::int64_t CosetDecomposition::q_coset_count() const
{
    std::int64_t s = 0;
    for (auto v : y)
        s = checked_add(s, v);
    return s;
}

CoefficientMatrix CosetDecomposition::reconstruct() const
{
    CoefficientMatrix c(static_cast<std::uint32_t>(y.size()), static_cast<std::uint32_t>(x.size()));
    for (std::uint32_t j = 0; j < c.rows(); ++j)
        for (std::uint32_t k = 0; k < c.cols(); ++k)
            c(j, k) = checked_add(y[j], x[k]);
    return c;
}

// ---------------------------------------------------------------------------

CoefficientMatrix char_coeff_matrix(const GroupSpec& g, const Element& chi, const Multiset& m)
{
    assert(m.universe() == g.order());
    CoefficientMatrix c(g.p(), g.q());
    const auto counts = m.counts();
    for (ElementIndex i = 0; i < g.order(); ++i) {
        if (counts[i] == 0)
            continue;
        const auto e = char_exponents(g, chi, g.element(i));
        c(e.j, e.k) = checked_add(c(e.j, e.k), to_signed(counts[i]));
    }
    return c;
}

bool vanishes(const CoefficientMatrix& c, CharOrder order)
{
    switch (order) {
    case CharOrder::Trivial:
        return c.sum() == 0;
    case CharOrder::P:
        // 1 + x + ... + x^(p-1) is the minimal polynomial of zeta_p: equal weight per power.
        return all_equal(c.row_sums());
    case CharOrder::Q:
        return all_equal(c.col_sums());
    case CharOrder::PQ:
        // Integer relations among the pq-th roots are spanned by full rows and full columns,
        // i.e. c[j][k] = y[j] + x[k].
        for (std::uint32_t j = 1; j < c.rows(); ++j)
            for (std::uint32_t k = 1; k < c.cols(); ++k) {
                const auto d = checked_add(checked_sub(checked_sub(c(j, k), c(j, 0)), c(0, k)), c(0, 0));
                if (d != 0)
                    return false;
            }
        return true;
    }
    return false;
}

bool vanishes(const GroupSpec& g, const Element& chi, const Multiset& m)
{
    return vanishes(char_coeff_matrix(g, chi, m), char_order(chi));
}

bool equidistributed(const GroupSpec& g, const Multiset& m, const PlaneVector& a)
{
    if (a.is_zero())
        throw std::invalid_argument("equidistribution needs a nonzero direction");
    std::vector<std::uint64_t> classes(g.p(), 0);
    const auto counts = m.counts();
    for (ElementIndex i = 0; i < g.order(); ++i) {
        const auto e = g.element(i);
        auto& cls = classes[inner_p(g.p(), {e.u1, e.u2}, a)];
        cls = checked_add(cls, counts[i]);
    }
    if (m.total() % g.p() != 0)
        return false;
    const auto share = m.total() / g.p();
    return std::all_of(classes.begin(), classes.end(), [share](std::uint64_t x) { return x == share; });
}

CoefficientMatrix project(const GroupSpec& g, const Multiset& m, const PlaneVector& a, std::uint32_t b)
{
    if (a.is_zero() || a.x >= g.p() || a.y >= g.p())
        throw std::invalid_argument("projection direction a must be a nonzero vector of Z_p^2");
    if (b == 0 || b >= g.q())
        throw std::invalid_argument("projection parameter b must be a nonzero residue mod q");
    CoefficientMatrix c(g.p(), g.q());
    const auto counts = m.counts();
    for (ElementIndex i = 0; i < g.order(); ++i) {
        if (counts[i] == 0)
            continue;
        const auto e = g.element(i);
        const auto j = inner_p(g.p(), {e.u1, e.u2}, a);
        c(j, e.v) = checked_add(c(j, e.v), to_signed(counts[i]));
    }
    return c;
}

CosetDecomposition lam_leung(const CoefficientMatrix& c)
{
    if (!c.nonnegative())
        throw std::invalid_argument("coset decomposition needs a nonnegative matrix");
    if (!vanishes(c, CharOrder::PQ))
        throw NotVanishing("matrix is not of the form y[j] + x[k]");

    // Canonical shift: the row with the smallest first-column entry gets y = 0.
    std::uint32_t base = 0;
    for (std::uint32_t j = 1; j < c.rows(); ++j)
        if (c(j, 0) < c(base, 0))
            base = j;

    CosetDecomposition d;
    d.y.resize(c.rows());
    d.x.resize(c.cols());
    for (std::uint32_t j = 0; j < c.rows(); ++j)
        d.y[j] = checked_sub(c(j, 0), c(base, 0));
    for (std::uint32_t k = 0; k < c.cols(); ++k)
        d.x[k] = c(base, k);
    assert(std::all_of(d.x.begin(), d.x.end(), [](std::int64_t v) { return v >= 0; }));
    assert(d.reconstruct() == c);
    return d;
}

SubsetMask zero_set(const GroupSpec& g, const SubsetMask& s)
{
    const auto p = g.p();
    const auto q = g.q();
    std::vector<Element> pts;
    for (auto i : s.indices())
        pts.push_back(g.element(i));

    SubsetMask out(g.order());
    CoefficientMatrix c(p, q);
    for (ElementIndex chi_index = 1; chi_index < g.order(); ++chi_index) {
        const auto chi = g.element(chi_index);
        c = CoefficientMatrix(p, q);
        for (const auto& x : pts) {
            const auto e = char_exponents(g, chi, x);
            ++c(e.j, e.k);
        }
        if (vanishes(c, char_order(chi)))
            out.insert(chi_index);
    }
    return out;
}

double numeric_char_sum(const GroupSpec& g, const Element& chi, const Multiset& m)
{
    const double pq = static_cast<double>(g.p()) * g.q();
    std::complex<double> sum{0.0, 0.0};
    const auto counts = m.counts();
    for (ElementIndex i = 0; i < g.order(); ++i) {
        if (counts[i] == 0)
            continue;
        const auto e = char_exponents(g, chi, g.element(i));
        // j/p + k/q = (j q + k p) / pq
        const double turns = static_cast<double>(std::uint64_t{e.j} * g.q() + std::uint64_t{e.k} * g.p()) / pq;
        sum += static_cast<double>(counts[i]) * std::polar(1.0, 2.0 * std::numbers::pi * turns);
    }
    return std::abs(sum);
}

} // namespace fuglede
