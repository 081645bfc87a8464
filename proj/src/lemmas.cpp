#include "fuglede/lemmas.hpp"

#include "fuglede/error.hpp"
#include "fuglede/exact_sums.hpp"
#include "fuglede/spectral.hpp"
#include "fuglede/tiling.hpp"
#include "fuglede/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace fuglede {

namespace {

constexpr double kNumericZero = 1e-9;
constexpr std::uint64_t kMaxMultisetTotal = 1000;

std::string describe(const GroupSpec& g, const Multiset& m)
{
    std::ostringstream os;
    os << "|M|=" << m.total() << " M={";
    bool first = true;
    for (ElementIndex i = 0; i < m.universe(); ++i) {
        if (m[i] == 0)
            continue;
        os << (first ? "" : ",") << to_string(g.element(i)) << ":" << m[i];
        first = false;
    }
    os << "}";
    return os.str();
}

std::string describe(const GroupSpec& g, const SubsetMask& s)
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto i : s.indices()) {
        os << (first ? "" : ",") << to_string(g.element(i));
        first = false;
    }
    os << "}";
    return os.str();
}

void fail(LemmaResult& r, std::string what)
{
    if (r.passed) {
        r.passed = false;
        r.counterexample = std::move(what);
    }
}

PlaneVector random_direction(const GroupSpec& g, Rng& rng)
{
    PlaneVector a;
    do {
        a = {static_cast<std::uint32_t>(rng.below(g.p())), static_cast<std::uint32_t>(rng.below(g.p()))};
    } while (a.is_zero());
    return a;
}

std::uint32_t random_unit_q(const GroupSpec& g, Rng& rng)
{
    return static_cast<std::uint32_t>(1 + rng.below(g.q() - 1));
}

Element random_character(const GroupSpec& g, Rng& rng, CharOrder order)
{
    Element chi{};
    if (order == CharOrder::P || order == CharOrder::PQ) {
        const auto a = random_direction(g, rng);
        chi.u1 = a.x;
        chi.u2 = a.y;
    }
    if (order == CharOrder::Q || order == CharOrder::PQ)
        chi.v = random_unit_q(g, rng);
    return chi;
}

Multiset random_multiset(const GroupSpec& g, Rng& rng, std::uint64_t max_total)
{
    Multiset m(g.order());
    const auto points = rng.below(max_total + 1);
    for (std::uint64_t i = 0; i < points; ++i)
        m.add(static_cast<ElementIndex>(rng.below(g.order())));
    return m;
}

// A transversal of the cosets of subgroup b, one random element per coset.
SubsetMask random_transversal(const GroupSpec& g, const SubsetMask& b, Rng& rng)
{
    SubsetMask assigned(g.order());
    SubsetMask out(g.order());
    const auto members = b.indices();
    for (ElementIndex x = 0; x < g.order(); ++x) {
        if (assigned.contains(x))
            continue;
        std::vector<ElementIndex> coset;
        for (auto h : members) {
            const auto y = g.add(x, h);
            assigned.insert(y);
            coset.push_back(y);
        }
        out.insert(coset[rng.below(coset.size())]);
    }
    return out;
}

} // namespace

VanishingOracle exact_vanishing_oracle()
{
    return [](const GroupSpec& g, const Element& chi, const Multiset& m) { return vanishes(g, chi, m); };
}

bool LemmaReport::all_passed() const
{
    return std::all_of(results.begin(), results.end(), [](const LemmaResult& r) { return r.passed; });
}

Multiset random_vanishing_multiset(const GroupSpec& g, const Element& chi, Rng& rng, std::uint64_t max_total)
{
    const auto p = g.p();
    const auto q = g.q();
    const auto order = char_order(chi);

    // Weight per exponent cell (j, k), of the form y[j] + x[k] restricted to the cells chi reaches.
    CoefficientMatrix cells(p, q);
    switch (order) {
    case CharOrder::Trivial:
        break;
    case CharOrder::P: {
        const auto t = static_cast<std::int64_t>(1 + rng.below(std::max<std::uint64_t>(1, max_total / p)));
        for (std::uint32_t j = 0; j < p; ++j)
            cells(j, 0) = t;
        break;
    }
    case CharOrder::Q: {
        const auto t = static_cast<std::int64_t>(1 + rng.below(std::max<std::uint64_t>(1, max_total / q)));
        for (std::uint32_t k = 0; k < q; ++k)
            cells(0, k) = t;
        break;
    }
    case CharOrder::PQ: {
        const auto bound = std::max<std::uint64_t>(1, max_total / (2 * std::uint64_t{p} * q));
        std::vector<std::int64_t> x(q), y(p);
        for (auto& v : x)
            v = static_cast<std::int64_t>(rng.below(bound + 1));
        for (auto& v : y)
            v = static_cast<std::int64_t>(rng.below(bound + 1));
        for (std::uint32_t j = 0; j < p; ++j)
            for (std::uint32_t k = 0; k < q; ++k)
                cells(j, k) = y[j] + x[k];
        break;
    }
    }

    std::vector<std::vector<ElementIndex>> fibers(std::size_t{p} * q);
    for (ElementIndex i = 0; i < g.order(); ++i) {
        const auto e = char_exponents(g, chi, g.element(i));
        fibers[e.j * q + e.k].push_back(i);
    }
    Multiset m(g.order());
    for (std::uint32_t j = 0; j < p; ++j)
        for (std::uint32_t k = 0; k < q; ++k) {
            const auto& fiber = fibers[j * q + k];
            for (std::int64_t unit = 0; unit < cells(j, k); ++unit)
                m.add(fiber[rng.below(fiber.size())]);
        }
    return m;
}

LemmaResult check_exact_numeric_agreement(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaResult r;
    r.name = "exact_numeric_agreement";
    const CharOrder orders[] = {CharOrder::Trivial, CharOrder::P, CharOrder::Q, CharOrder::PQ};
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto chi = random_character(g, rng, orders[rng.below(4)]);
        Multiset m(g.order());
        switch (rng.below(3)) {
        case 0:
            m = random_multiset(g, rng, kMaxMultisetTotal);
            break;
        case 1:
            m = random_vanishing_multiset(g, chi, rng, kMaxMultisetTotal - 1);
            break;
        default:
            // Vanishing plus one stray point: never vanishes, magnitude exactly 1.
            m = random_vanishing_multiset(g, chi, rng, kMaxMultisetTotal - 1);
            m.add(static_cast<ElementIndex>(rng.below(g.order())));
            break;
        }
        const bool exact = vanish(g, chi, m);
        const double magnitude = numeric_char_sum(g, chi, m);
        ++r.checks;
        if (exact != (magnitude < kNumericZero))
            fail(r, "chi=" + to_string(chi) + " exact=" + (exact ? "0" : "nonzero") + " |sum|=" + std::to_string(magnitude)
                    + " " + describe(g, m));
    }
    return r;
}

LemmaResult check_divisibility(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaResult r;
    r.name = "vanishing_divisibility";
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto order = t % 2 == 0 ? CharOrder::P : CharOrder::Q;
        const auto chi = random_character(g, rng, order);
        const std::uint32_t modulus = order == CharOrder::P ? g.p() : g.q();
        // One multiset built to vanish and one small random one that vanishes only by chance.
        const Multiset candidates[] = {random_vanishing_multiset(g, chi, rng, kMaxMultisetTotal),
            random_multiset(g, rng, 3 * modulus)};
        for (const auto& m : candidates) {
            if (!vanish(g, chi, m))
                continue;
            ++r.checks;
            if (m.total() % modulus != 0)
                fail(r, "chi=" + to_string(chi) + " vanishes but " + std::to_string(modulus) + " does not divide "
                        + describe(g, m));
        }
    }
    return r;
}

LemmaResult check_equidistribution(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaResult r;
    r.name = "equidistribution_equivalence";
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto a = random_direction(g, rng);
        const Element chi{a.x, a.y, 0};
        const auto m = rng.coin() ? random_vanishing_multiset(g, chi, rng, kMaxMultisetTotal)
                                  : random_multiset(g, rng, 4 * g.p());
        ++r.checks;
        if (equidistributed(g, m, a) != vanish(g, chi, m))
            fail(r, "a=(" + std::to_string(a.x) + "," + std::to_string(a.y) + ") " + describe(g, m));
    }
    return r;
}

LemmaResult check_lam_leung(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaResult r;
    r.name = "lam_leung_decomposition";
    const auto p = g.p();
    const auto q = g.q();
    auto matrix_text = [](const CoefficientMatrix& c) {
        std::ostringstream os;
        os << "[";
        for (std::uint32_t j = 0; j < c.rows(); ++j) {
            os << (j ? "," : "") << "[";
            for (std::uint32_t k = 0; k < c.cols(); ++k)
                os << (k ? "," : "") << c(j, k);
            os << "]";
        }
        os << "]";
        return os.str();
    };

    for (std::uint64_t t = 0; t < trials; ++t) {
        // Coset sums decompose and reconstruct.
        CosetDecomposition truth;
        truth.x.resize(q);
        truth.y.resize(p);
        for (auto& v : truth.x)
            v = static_cast<std::int64_t>(rng.below(20));
        for (auto& v : truth.y)
            v = static_cast<std::int64_t>(rng.below(20));
        const auto c = truth.reconstruct();
        ++r.checks;
        try {
            const auto d = lam_leung(c);
            const bool canonical = *std::min_element(d.y.begin(), d.y.end()) == 0;
            const bool sizes = std::int64_t{p} * d.p_coset_count() + std::int64_t{q} * d.q_coset_count() == c.sum();
            if (!(d.reconstruct() == c) || !canonical || !sizes)
                fail(r, "bad decomposition of " + matrix_text(c));
        } catch (const NotVanishing&) {
            fail(r, "coset sum rejected: " + matrix_text(c));
        }

        // One extra root breaks vanishing.
        auto broken = c;
        ++broken(static_cast<std::uint32_t>(rng.below(p)), static_cast<std::uint32_t>(rng.below(q)));
        ++r.checks;
        try {
            lam_leung(broken);
            fail(r, "non-vanishing matrix accepted: " + matrix_text(broken));
        } catch (const NotVanishing&) {
        }

        // Projections of multisets vanishing at an order-pq character are coset sums: |M| = pk + ql.
        const auto chi = random_character(g, rng, CharOrder::PQ);
        const auto m = random_vanishing_multiset(g, chi, rng, kMaxMultisetTotal);
        if (vanish(g, chi, m)) {
            ++r.checks;
            const auto proj = project(g, m, {chi.u1, chi.u2}, chi.v);
            try {
                const auto d = lam_leung(proj);
                if (std::int64_t{p} * d.p_coset_count() + std::int64_t{q} * d.q_coset_count()
                    != static_cast<std::int64_t>(m.total()))
                    fail(r, "projection size mismatch for chi=" + to_string(chi) + " " + describe(g, m));
            } catch (const NotVanishing&) {
                fail(r, "projection does not decompose for chi=" + to_string(chi) + " " + describe(g, m));
            }
        }
    }
    return r;
}

LemmaResult check_projection_consistency(const GroupSpec& g, Rng& rng, std::uint64_t trials)
{
    LemmaResult r;
    r.name = "projection_consistency";
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto chi = random_character(g, rng, CharOrder::PQ);
        const auto m = random_multiset(g, rng, 60);
        const auto proj = project(g, m, {chi.u1, chi.u2}, chi.v);
        const auto coeff = char_coeff_matrix(g, chi, m);
        ++r.checks;
        for (std::uint32_t j = 0; j < g.p(); ++j)
            for (std::uint32_t v = 0; v < g.q(); ++v)
                if (coeff(j, static_cast<std::uint32_t>(std::uint64_t{v} * chi.v % g.q())) != proj(j, v))
                    fail(r, "chi=" + to_string(chi) + " " + describe(g, m));
    }
    return r;
}

LemmaResult check_constant_multiset(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaResult r;
    r.name = "constant_multiset";
    auto all_vanish = [&](const Multiset& m) {
        for (ElementIndex chi = 1; chi < g.order(); ++chi)
            if (!vanish(g, g.element(chi), m))
                return false;
        return true;
    };
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto constant = Multiset::constant(g.order(), rng.below(6));
        ++r.checks;
        if (!all_vanish(constant))
            fail(r, "constant multiset with a non-vanishing character: " + describe(g, constant));

        Multiset m(g.order());
        do {
            m = random_multiset(g, rng, 3 * g.order());
        } while (m.is_constant());
        ++r.checks;
        if (all_vanish(m))
            fail(r, "non-constant multiset with all characters vanishing: " + describe(g, m));
    }
    return r;
}

LemmaResult check_subgroup_complement_spectrum(const GroupSpec& g, Rng& rng, std::uint64_t trials)
{
    LemmaResult r;
    r.name = "subgroup_complement_spectrum";
    const auto subgroups = all_subgroups(g);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto& b = subgroups[rng.below(subgroups.size())];
        const auto a = random_transversal(g, b, rng);
        const auto cert = subgroup_complement_spectrum(g, a, b);
        ++r.checks;
        const bool ok = verify_spectral_pair(g, a, cert.spectrum) && is_subgroup(g, cert.spectrum)
            && std::uint64_t{cert.spectrum.count()} * b.count() == g.order();
        if (!ok)
            fail(r, "A=" + describe(g, a) + " B=" + describe(g, b));
    }
    return r;
}

LemmaResult check_complemented_divisors(const GroupSpec& g)
{
    LemmaResult r;
    r.name = "complemented_group_divisors";
    const auto subgroups = all_subgroups(g);
    for (std::uint32_t d = 1; d <= g.order(); ++d) {
        if (g.order() % d != 0)
            continue;
        ++r.checks;
        const auto it = std::find_if(subgroups.begin(), subgroups.end(), [d](const SubsetMask& s) { return s.count() == d; });
        if (it == subgroups.end()) {
            fail(r, "no subgroup of order " + std::to_string(d));
            continue;
        }
        const auto l = subgroup_complement(g, *it);
        if (!verify_tiling(g, *it, l))
            fail(r, "complement does not tile with B=" + describe(g, *it));
    }
    for (const auto& b : subgroups) {
        ++r.checks;
        if (!verify_tiling(g, b, subgroup_complement(g, b)) || !is_spectral(g, b))
            fail(r, "subgroup " + describe(g, b) + " lacks a complement or a spectrum");
    }
    return r;
}

LemmaResult check_fourier_product(const GroupSpec& g, Rng& rng, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaResult r;
    r.name = "fourier_product_identity";
    const auto subgroups = all_subgroups(g);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto& b = subgroups[rng.below(subgroups.size())];
        const auto a = translate(g, random_transversal(g, b, rng), static_cast<ElementIndex>(rng.below(g.order())));
        const auto shifted_b = translate(g, b, static_cast<ElementIndex>(rng.below(g.order())));
        const auto ma = Multiset::indicator(a);
        const auto mb = Multiset::indicator(shifted_b);
        ++r.checks;
        for (ElementIndex chi = 1; chi < g.order(); ++chi)
            if (!vanish(g, g.element(chi), ma) && !vanish(g, g.element(chi), mb)) {
                fail(r, "chi=" + to_string(g.element(chi)) + " on S=" + describe(g, a) + " T=" + describe(g, shifted_b));
                break;
            }
    }
    return r;
}

LemmaReport lemma_suite(const GroupSpec& g, std::uint64_t seed, std::uint64_t trials, const VanishingOracle& vanish)
{
    LemmaReport report{g.p(), g.q(), seed, trials, {}};
    if (trials == 0)
        return report;
    const auto oracle = vanish ? vanish : exact_vanishing_oracle();
    std::uint64_t stream = 0;
    auto rng = [&] { return Rng(batch_seed(seed, stream++)); };

    auto r0 = rng();
    report.results.push_back(check_exact_numeric_agreement(g, r0, trials, oracle));
    auto r1 = rng();
    report.results.push_back(check_divisibility(g, r1, trials, oracle));
    auto r2 = rng();
    report.results.push_back(check_equidistribution(g, r2, trials, oracle));
    auto r3 = rng();
    report.results.push_back(check_lam_leung(g, r3, trials, oracle));
    auto r4 = rng();
    report.results.push_back(check_projection_consistency(g, r4, trials));
    auto r5 = rng();
    report.results.push_back(check_constant_multiset(g, r5, trials, oracle));
    auto r6 = rng();
    report.results.push_back(check_subgroup_complement_spectrum(g, r6, trials));
    report.results.push_back(check_complemented_divisors(g));
    auto r7 = rng();
    report.results.push_back(check_fourier_product(g, r7, trials, oracle));
    return report;
}

} // namespace fuglede
