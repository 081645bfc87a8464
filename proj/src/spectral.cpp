#include "fuglede/spectral.hpp"

#include "fuglede/error.hpp"
#include "fuglede/exact_sums.hpp"
#include "fuglede/tiling.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>

namespace fuglede {

namespace {

// Backtracking clique search on a small graph given as adjacency bit rows.
// Vertices are pre-sorted so that lower labels are tried first.
class CliqueSearch {
public:
    CliqueSearch(std::vector<std::vector<std::uint64_t>> adjacency, std::uint32_t vertex_count)
        : adj_(std::move(adjacency)), words_((vertex_count + 63) / 64), vertex_count_(vertex_count)
    {
    }

    bool run(std::uint32_t target)
    {
        target_ = target;
        clique_.clear();
        std::vector<std::uint64_t> all(words_, 0);
        for (std::uint32_t v = 0; v < vertex_count_; ++v)
            all[v >> 6] |= std::uint64_t{1} << (v & 63);
        return expand(all);
    }

    const std::vector<std::uint32_t>& clique() const noexcept { return clique_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    static std::uint32_t popcount(const std::vector<std::uint64_t>& s)
    {
        std::uint32_t c = 0;
        for (auto w : s)
            c += static_cast<std::uint32_t>(std::popcount(w));
        return c;
    }

    bool expand(std::vector<std::uint64_t> candidates)
    {
        if (clique_.size() == target_)
            return true;
        std::uint32_t remaining = popcount(candidates);
        std::vector<std::uint64_t> next(words_);
        for (std::size_t w = 0; w < words_; ++w) {
            while (candidates[w]) {
                if (clique_.size() + remaining < target_)
                    return false;
                const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(candidates[w]));
                ++nodes_;
                for (std::size_t x = 0; x < words_; ++x)
                    next[x] = candidates[x] & adj_[v][x];
                clique_.push_back(v);
                if (expand(next))
                    return true;
                clique_.pop_back();
                candidates[w] &= candidates[w] - 1;
                --remaining;
            }
        }
        return false;
    }

    std::vector<std::vector<std::uint64_t>> adj_;
    std::size_t words_;
    std::uint32_t vertex_count_;
    std::uint32_t target_ = 0;
    std::vector<std::uint32_t> clique_;
    std::uint64_t nodes_ = 0;
};

} // namespace

bool verify_spectral_pair(const GroupSpec& g, const SubsetMask& s, const SubsetMask& spectrum)
{
    if (s.universe() != g.order() || spectrum.universe() != g.order())
        return false;
    if (s.count() != spectrum.count() || s.count() == 0)
        return false;
    const auto zeros = zero_set(g, s);
    const auto lambda = spectrum.indices();
    for (auto a : lambda)
        for (auto b : lambda)
            if (a != b && !zeros.contains(g.sub(a, b)))
                return false;
    return true;
}

SpectrumSearch find_spectrum(const GroupSpec& g, const SubsetMask& s)
{
    SpectrumSearch result;
    const auto k = s.count();
    if (k == 0)
        return result;
    result.explored_nodes = 1;

    SubsetMask spectrum(g.order());
    spectrum.insert(0);
    if (k == 1) {
        result.certificate = SpectralCertificate{s, spectrum, true};
        return result;
    }

    // With 0 in Lambda, the rest of Lambda is a (k-1)-clique inside zero_set(S).
    const auto zeros = zero_set(g, s);
    const auto cands = zeros.indices();
    const auto m = static_cast<std::uint32_t>(cands.size());
    if (m < k - 1)
        return result;

    std::vector<std::uint32_t> degree(m, 0);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j)
            if (zeros.contains(g.sub(cands[i], cands[j]))) {
                ++degree[i];
                ++degree[j];
            }

    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return degree[a] > degree[b]; });

    const std::size_t words = (m + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(m, std::vector<std::uint64_t>(words, 0));
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b)
            if (a != b && zeros.contains(g.sub(cands[order[a]], cands[order[b]])))
                adj[a][b >> 6] |= std::uint64_t{1} << (b & 63);

    CliqueSearch search(std::move(adj), m);
    const bool found = search.run(k - 1);
    result.explored_nodes += search.nodes();
    if (!found)
        return result;

    for (auto v : search.clique())
        spectrum.insert(cands[order[v]]);
    assert(verify_spectral_pair(g, s, spectrum));
    result.certificate = SpectralCertificate{s, spectrum, true};
    return result;
}

bool is_spectral(const GroupSpec& g, const SubsetMask& s)
{
    return find_spectrum(g, s).found();
}

SubsetMask annihilator(const GroupSpec& g, const SubsetMask& subgroup)
{
    SubsetMask out(g.order());
    const auto members = subgroup.indices();
    for (ElementIndex chi = 0; chi < g.order(); ++chi) {
        const auto c = g.element(chi);
        const bool trivial = std::all_of(members.begin(), members.end(), [&](ElementIndex b) {
            const auto e = char_exponents(g, c, g.element(b));
            return e.j == 0 && e.k == 0;
        });
        if (trivial)
            out.insert(chi);
    }
    return out;
}

SpectralCertificate subgroup_complement_spectrum(const GroupSpec& g, const SubsetMask& a, const SubsetMask& b)
{
    if (!is_subgroup(g, b))
        throw NotASubgroup("B is not a subgroup of G");
    if (!verify_tiling(g, a, b))
        throw NotATiling("A + B is not a tiling of G");
    // Under the pairing of G with its dual, the spectrum is the annihilator of B; it is
    // isomorphic to any complement of B but coincides with one only when B has no isotropic line.
    auto p = annihilator(g, b);
    assert(p.count() == a.count());
    return SpectralCertificate{a, std::move(p), true};
}

} // namespace fuglede
