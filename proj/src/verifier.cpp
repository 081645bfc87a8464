#include "fuglede/verifier.hpp"

#include "fuglede/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <mutex>
#include <numeric>
#include <thread>

namespace fuglede {

namespace {

// Sorted-element-list order on raw masks; see operator<=> on SubsetMask.
bool list_less(std::uint64_t a, std::uint64_t b)
{
    if (a == b)
        return false;
    const int i = std::countr_zero(a ^ b);
    const bool a_has = (a >> i) & 1U;
    const std::uint64_t other = a_has ? b : a;
    const bool other_continues = i < 63 && (other >> (i + 1)) != 0;
    return a_has == other_continues;
}

// Applies affine maps to masks of at most 64 elements through per-byte lookup tables.
class MaskPermuter {
public:
    MaskPermuter(const GroupSpec& g, const std::vector<AffineMap>& maps)
        : chunks_((g.order() + 7) / 8), map_count_(maps.size()), table_(maps.size() * chunks_ * 256, 0)
    {
        assert(g.order() <= 64);
        for (std::size_t m = 0; m < maps.size(); ++m) {
            const auto perm = map_permutation(g, maps[m]);
            for (std::size_t c = 0; c < chunks_; ++c) {
                auto* row = &table_[(m * chunks_ + c) * 256];
                for (std::uint32_t byte = 1; byte < 256; ++byte) {
                    const auto low = std::countr_zero(byte);
                    const auto idx = c * 8 + low;
                    const std::uint64_t bit = idx < g.order() ? std::uint64_t{1} << perm[idx] : 0;
                    row[byte] = row[byte & (byte - 1)] | bit;
                }
            }
        }
    }

    std::size_t size() const noexcept { return map_count_; }

    std::uint64_t apply(std::size_t m, std::uint64_t mask) const
    {
        const auto* base = &table_[m * chunks_ * 256];
        std::uint64_t out = 0;
        for (std::size_t c = 0; c < chunks_; ++c, mask >>= 8)
            out |= base[c * 256 + (mask & 0xFF)];
        return out;
    }

private:
    std::size_t chunks_;
    std::size_t map_count_;
    std::vector<std::uint64_t> table_;
};

// Next mask with the same popcount (Gosper); returns 0 past the last one below 2^n.
std::uint64_t next_combination(std::uint64_t x, std::uint32_t n)
{
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    if (r == 0)
        return 0;
    const std::uint64_t next = (((r ^ x) >> 2) / c) | r;
    if (n < 64 && (next >> n) != 0)
        return 0;
    return next;
}

template <typename F>
void for_each_mask(std::uint32_t n, std::optional<std::uint32_t> size, F&& f)
{
    assert(n < 64);
    if (!size) {
        const std::uint64_t end = std::uint64_t{1} << n;
        for (std::uint64_t x = 0; x < end; ++x)
            f(x);
        return;
    }
    if (*size > n)
        return;
    if (*size == 0) {
        f(0);
        return;
    }
    for (std::uint64_t x = (std::uint64_t{1} << *size) - 1; x != 0; x = next_combination(x, n))
        f(x);
}

struct WorkItem {
    std::uint64_t mask;
    std::uint64_t weight;
};

struct BatchResult {
    std::map<std::uint32_t, Tally> by_class;
    std::uint64_t empty_sets = 0;
    std::uint64_t examined = 0;
    std::uint64_t covered = 0;
    std::uint64_t spectrum_nodes = 0;
    std::uint64_t complement_nodes = 0;
    std::vector<Violation> violations;
};

class Checker {
public:
    Checker(const GroupSpec& g, const VerifyOptions& options) : g_(g), options_(options) {}

    void check(const SubsetMask& s, std::uint64_t weight, BatchResult& out)
    {
        auto spectrum = find_spectrum(g_, s);
        auto complement = find_complement(g_, s);
        const bool spectral = spectrum.found();
        const bool tile = complement.found();

        ++out.examined;
        out.covered += weight;
        out.spectrum_nodes += spectrum.explored_nodes;
        out.complement_nodes += complement.explored_nodes;
        if (s.empty()) {
            out.empty_sets += weight;
        } else {
            auto& t = out.by_class[size_class(s.count(), g_).m];
            if (spectral && tile)
                t.both += weight;
            else if (spectral)
                t.spectral_only += weight;
            else if (tile)
                t.tile_only += weight;
            else
                t.neither += weight;
        }
        if (spectral != tile) {
            Violation v{s, spectral, tile, spectrum.explored_nodes, complement.explored_nodes, std::nullopt};
            if (spectral)
                v.witness = spectrum.certificate->spectrum;
            else
                v.witness = complement.certificate->complement;
            out.violations.push_back(std::move(v));
        }
        if (options_.observer) {
            std::lock_guard lock(observer_mutex_);
            options_.observer(SubsetOutcome{s, weight, std::move(spectrum), std::move(complement)});
        }
    }

private:
    const GroupSpec& g_;
    const VerifyOptions& options_;
    std::mutex observer_mutex_;
};

template <typename BatchFn>
std::vector<BatchResult> run_batches(std::size_t batch_count, unsigned threads, BatchFn&& fn)
{
    std::vector<BatchResult> results(batch_count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next++; b < batch_count; b = next++)
            fn(b, results[b]);
    };
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(batch_count, 1)));
    if (threads <= 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i)
        pool.emplace_back(worker);
    pool.clear();
    return results;
}

void merge_into(ConjectureReport& report, std::vector<BatchResult>& batches)
{
    for (auto& b : batches) {
        for (const auto& [m, t] : b.by_class)
            report.by_class[m] += t;
        report.empty_sets += b.empty_sets;
        report.subsets_examined += b.examined;
        report.subsets_covered += b.covered;
        report.spectrum_nodes += b.spectrum_nodes;
        report.complement_nodes += b.complement_nodes;
        for (auto& v : b.violations)
            report.violations.push_back(std::move(v));
    }
    std::sort(report.violations.begin(), report.violations.end(),
        [](const Violation& a, const Violation& b) { return a.set < b.set; });
}

} // namespace

std::string SizeClass::label(const GroupSpec& g) const
{
    const auto p = g.p();
    const auto q = g.q();
    if (m == 1)
        return "1";
    if (m == p)
        return "p";
    if (m == q)
        return "q";
    if (m == p * p)
        return "p^2";
    if (m == p * q)
        return "pq";
    if (m == p * p * q)
        return "p^2q";
    return std::to_string(m);
}

SizeClass size_class(std::uint32_t card, const GroupSpec& g)
{
    assert(card >= 1 && card <= g.order());
    return {std::gcd(g.order(), card)};
}

Tally& Tally::operator+=(const Tally& o) noexcept
{
    both += o.both;
    spectral_only += o.spectral_only;
    tile_only += o.tile_only;
    neither += o.neither;
    return *this;
}

std::uint64_t ConjectureReport::spectral_not_tile() const
{
    std::uint64_t s = 0;
    for (const auto& [m, t] : by_class)
        s += t.spectral_only;
    return s;
}

std::uint64_t ConjectureReport::tile_not_spectral() const
{
    std::uint64_t s = 0;
    for (const auto& [m, t] : by_class)
        s += t.tile_only;
    return s;
}

SubsetMask canonical_form(const GroupSpec& g, const SubsetMask& s, std::uint64_t cap)
{
    const auto maps = enumerate_affine_maps(g, cap);
    SubsetMask best = s;
    for (const auto& m : maps) {
        auto image = apply_map(g, m, s);
        if (image < best)
            best = std::move(image);
    }
    return best;
}

std::vector<Representative> enumerate_representatives(const GroupSpec& g, std::optional<std::uint32_t> size,
    const VerifierLimits& limits)
{
    const auto n = g.order();
    if (n > limits.orbit_max_order || n >= 64)
        throw GroupTooLargeForExhaustive("orbit enumeration is limited to |G| <= " + std::to_string(limits.orbit_max_order)
            + ", got " + std::to_string(n));
    const MaskPermuter permuter(g, enumerate_affine_maps(g, limits.symmetry_cap));

    std::vector<std::uint64_t> visited((std::uint64_t{1} << n) / 64 + 1, 0);
    auto seen = [&](std::uint64_t x) { return (visited[x >> 6] >> (x & 63)) & 1U; };

    std::vector<Representative> out;
    for_each_mask(n, size, [&](std::uint64_t x) {
        if (seen(x))
            return;
        std::uint64_t best = x;
        std::uint64_t orbit = 0;
        for (std::size_t m = 0; m < permuter.size(); ++m) {
            const auto y = permuter.apply(m, x);
            if (seen(y))
                continue;
            visited[y >> 6] |= std::uint64_t{1} << (y & 63);
            ++orbit;
            if (list_less(y, best))
                best = y;
        }
        out.push_back({SubsetMask::from_u64(n, best), orbit});
    });
    std::sort(out.begin(), out.end(), [](const Representative& a, const Representative& b) {
        if (a.set.count() != b.set.count())
            return a.set.count() < b.set.count();
        return a.set < b.set;
    });
    return out;
}

bool direction_coverage(const GroupSpec& g, const SubsetMask& s)
{
    const auto diffs = difference_set(g, s);
    for (std::uint32_t a1 = 0; a1 < g.p(); ++a1)
        for (std::uint32_t a2 = 0; a2 < g.p(); ++a2) {
            if (a1 == 0 && a2 == 0)
                continue;
            bool seen = false;
            for (std::uint32_t c = 1; c < g.p() && !seen; ++c)
                seen = diffs.contains(g.index(g.scale({a1, a2, 0}, c)));
            if (!seen)
                return false;
        }
    return true;
}

std::vector<std::uint32_t> sample_size_menu(const GroupSpec& g, std::uint64_t seed)
{
    const auto n = g.order();
    std::vector<std::uint32_t> menu;
    for (std::uint32_t d = 1; d <= n; ++d)
        if (n % d == 0)
            menu.push_back(d);
    const auto divisors = menu.size();
    Rng rng(batch_seed(seed, UINT64_MAX));
    while (menu.size() < divisors + 3) {
        const auto k = static_cast<std::uint32_t>(rng.below(n) + 1);
        if (n % k != 0 && std::find(menu.begin(), menu.end(), k) == menu.end())
            menu.push_back(k);
    }
    return menu;
}

SubsetMask random_subset(std::uint32_t universe, std::uint32_t size, Rng& rng)
{
    assert(size <= universe);
    std::vector<ElementIndex> pool(universe);
    std::iota(pool.begin(), pool.end(), 0U);
    for (std::uint32_t i = 0; i < size; ++i) {
        const auto j = i + static_cast<std::uint32_t>(rng.below(universe - i));
        std::swap(pool[i], pool[j]);
    }
    return SubsetMask::from_indices(universe, std::span<const ElementIndex>(pool.data(), size));
}

ConjectureReport verify_conjecture(const GroupSpec& g, const VerifyOptions& options)
{
    ConjectureReport report;
    report.p = g.p();
    report.q = g.q();
    report.mode = options.mode;
    const auto n = g.order();
    Checker checker(g, options);

    if (const auto* ex = std::get_if<ExhaustiveMode>(&options.mode)) {
        if (ex->size && *ex->size > n)
            throw std::invalid_argument("subset size exceeds the group order");
        std::vector<WorkItem> items;
        if (ex->orbit_reduction) {
            for (auto& r : enumerate_representatives(g, ex->size, options.limits))
                items.push_back({r.set.to_u64(), r.orbit_size});
            report.orbits_scanned = items.size();
        } else {
            if (n > options.limits.direct_max_order || n >= 64)
                throw GroupTooLargeForExhaustive("direct exhaustive scan is limited to |G| <= "
                    + std::to_string(options.limits.direct_max_order) + ", got " + std::to_string(n));
            for_each_mask(n, ex->size, [&](std::uint64_t x) { items.push_back({x, 1}); });
        }
        constexpr std::size_t kBatch = 1024;
        const auto batches = (items.size() + kBatch - 1) / kBatch;
        auto results = run_batches(batches, options.threads, [&](std::size_t b, BatchResult& out) {
            const auto end = std::min(items.size(), (b + 1) * kBatch);
            for (auto i = b * kBatch; i < end; ++i)
                checker.check(SubsetMask::from_u64(n, items[i].mask), items[i].weight, out);
        });
        merge_into(report, results);
        return report;
    }

    const auto& sm = std::get<SampledMode>(options.mode);
    if (sm.size && (*sm.size == 0 || *sm.size > n))
        throw std::invalid_argument("sample size must lie in [1, |G|]");
    const auto menu = sample_size_menu(g, sm.seed);
    const auto batches = (sm.trials + kSampleBatchSize - 1) / kSampleBatchSize;
    auto results = run_batches(batches, options.threads, [&](std::size_t b, BatchResult& out) {
        Rng rng(batch_seed(sm.seed, b));
        const auto end = std::min<std::uint64_t>(sm.trials, (b + 1) * kSampleBatchSize);
        for (auto i = b * kSampleBatchSize; i < end; ++i) {
            const auto size = sm.size ? *sm.size : menu[rng.below(menu.size())];
            checker.check(random_subset(n, size, rng), 1, out);
        }
    });
    merge_into(report, results);
    return report;
}

} // namespace fuglede
