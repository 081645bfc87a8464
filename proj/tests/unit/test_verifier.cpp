#include "doctest.h"

#include "fuglede/affine.hpp"
#include "fuglede/error.hpp"
#include "fuglede/io.hpp"
#include "fuglede/lemmas.hpp"
#include "fuglede/verifier.hpp"

#include "oracles.hpp"

using namespace fuglede;

TEST_CASE("size classes")
{
    const auto g = make_group(3, 5);
    CHECK(size_class(9, g).m == 9);
    CHECK(size_class(9, g).label(g) == "p^2");
    CHECK(size_class(7, g).m == 1);
    CHECK(size_class(7, g).label(g) == "1");
    CHECK(size_class(15, g).m == 15);
    CHECK(size_class(15, g).label(g) == "pq");
    CHECK(size_class(45, g).label(g) == "p^2q");
}

TEST_CASE("canonical forms")
{
    const auto g = make_group(2, 3);
    for (ElementIndex i = 0; i < 12; ++i) {
        const std::vector<ElementIndex> one{i};
        CHECK(canonical_form(g, SubsetMask::from_indices(12, one)) == SubsetMask::from_u64(12, 1));
    }
    CHECK(canonical_form(g, SubsetMask(12)) == SubsetMask(12));
    const auto s = SubsetMask::from_u64(12, 0b011000100110);
    const auto c = canonical_form(g, s);
    CHECK(c.contains(0));
    for (ElementIndex t = 0; t < 12; ++t)
        CHECK(canonical_form(g, translate(g, s, t)) == c);
}

TEST_CASE("orbit representatives")
{
    const auto g = make_group(2, 3);
    CHECK(enumerate_representatives(g, 1).size() == 1);
    CHECK(enumerate_representatives(g, 12).size() == 1);
    CHECK(enumerate_representatives(g, 2).size() == 3);
    for (std::uint32_t k = 0; k <= 4; ++k)
        CHECK(enumerate_representatives(g, k).size() == oracle::count_orbits(oracle::Group(2, 3), static_cast<int>(k)));

    const auto reps = enumerate_representatives(g);
    std::uint64_t covered = 0;
    const auto maps = enumerate_affine_maps(g);
    for (const auto& r : reps) {
        covered += r.orbit_size;
        if (!r.set.empty())
            CHECK(r.set.contains(0));
        CHECK(canonical_form(g, r.set) == r.set);
        for (std::size_t i = 0; i < maps.size(); i += 7)
            CHECK(canonical_form(g, apply_map(g, maps[i], r.set)) == r.set);
    }
    CHECK(covered == 4096);

    VerifierLimits tight;
    tight.orbit_max_order = 12;
    CHECK_THROWS_AS(enumerate_representatives(make_group(3, 2), {}, tight), GroupTooLargeForExhaustive);
}

TEST_CASE("direction coverage")
{
    const auto g = make_group(2, 3);
    CHECK(direction_coverage(g, plane_subgroup(g)));
    CHECK_FALSE(direction_coverage(g, SubsetMask::from_indices(12, std::vector<ElementIndex>{0, g.index({1, 0, 0})})));

    // p + 1 points of a single Z_p^2 coset always cover every direction.
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{5, 2}}) {
        const auto h = make_group(p, q);
        Rng rng(static_cast<std::uint64_t>(p * q));
        for (int trial = 0; trial < 50; ++trial) {
            const auto v = static_cast<std::uint32_t>(rng.below(q));
            SubsetMask s(h.order());
            while (s.count() < static_cast<std::uint32_t>(p + 1))
                s.insert(h.index({static_cast<std::uint32_t>(rng.below(p)), static_cast<std::uint32_t>(rng.below(p)), v}));
            CHECK(direction_coverage(h, s));
        }
    }
}

TEST_CASE("exhaustive verification of the smallest group")
{
    const auto g = make_group(2, 3);
    for (bool orbits : {true, false}) {
        VerifyOptions opt;
        opt.mode = ExhaustiveMode{orbits, {}};
        opt.threads = 2;
        const auto r = verify_conjecture(g, opt);
        CHECK(r.consistent());
        CHECK(r.subsets_covered == 4096);
        CHECK(r.empty_sets == 1);
        std::uint64_t tallied = 0;
        for (const auto& [m, t] : r.by_class)
            tallied += t.total();
        CHECK(tallied + r.empty_sets == 4096);
        CHECK(r.spectral_not_tile() == 0);
        CHECK(r.tile_not_spectral() == 0);
    }
}

TEST_CASE("exhaustive verification with a size filter and orbit accounting")
{
    const auto g = make_group(3, 2);
    VerifyOptions opt;
    opt.mode = ExhaustiveMode{true, 3};
    const auto r = verify_conjecture(g, opt);
    CHECK(r.consistent());
    CHECK(r.subsets_covered == 816); // C(18,3)
}

TEST_CASE("report bytes do not depend on the worker count")
{
    const auto g = make_group(3, 2);
    std::string first;
    for (unsigned threads : {1U, 2U, 5U}) {
        VerifyOptions opt;
        opt.mode = SampledMode{11, 700, {}};
        opt.threads = threads;
        const auto text = report_to_json(verify_conjecture(g, opt)) + render_report(verify_conjecture(g, opt));
        if (first.empty())
            first = text;
        CHECK(text == first);
    }
    VerifyOptions ex;
    ex.mode = ExhaustiveMode{true, {}};
    ex.threads = 1;
    const auto a = report_to_json(verify_conjecture(make_group(2, 3), ex));
    ex.threads = 4;
    CHECK(report_to_json(verify_conjecture(make_group(2, 3), ex)) == a);
}

TEST_CASE("sampled mode")
{
    const auto g = make_group(5, 2);
    const auto menu = sample_size_menu(g, 1);
    for (std::uint32_t d : {1U, 2U, 5U, 10U, 25U, 50U})
        CHECK(std::find(menu.begin(), menu.end(), d) != menu.end());
    CHECK(menu.size() == 9);
    CHECK(sample_size_menu(g, 1) == menu);

    VerifyOptions opt;
    opt.mode = SampledMode{1, 300, {}};
    const auto r = verify_conjecture(g, opt);
    CHECK(r.consistent());
    CHECK(r.subsets_examined == 300);

    opt.mode = SampledMode{3, 40, 10};
    std::uint64_t seen = 0;
    opt.observer = [&](const SubsetOutcome& o) {
        CHECK(o.set.count() == 10);
        ++seen;
    };
    CHECK(verify_conjecture(g, opt).consistent());
    CHECK(seen == 40);

    Rng rng(5);
    for (std::uint32_t k = 0; k <= 50; k += 7)
        CHECK(random_subset(50, k, rng).count() == k);
}

TEST_CASE("exhaustive mode refuses groups beyond its caps")
{
    VerifyOptions opt;
    opt.mode = ExhaustiveMode{false, {}};
    CHECK_THROWS_AS(verify_conjecture(make_group(5, 2), opt), GroupTooLargeForExhaustive);
    opt.mode = ExhaustiveMode{true, {}};
    CHECK_THROWS_AS(verify_conjecture(make_group(5, 2), opt), GroupTooLargeForExhaustive);
}

TEST_CASE("lemma suites")
{
    const auto g = make_group(3, 2);
    const auto report = lemma_suite(g, 42, 1000);
    CHECK(report.all_passed());
    CHECK(report.results.size() == 9);
    for (const auto& r : report.results) {
        CAPTURE(r.name);
        CHECK(r.passed);
        CHECK(r.checks > 0);
    }

    const auto empty = lemma_suite(g, 42, 0);
    CHECK(empty.results.empty());
    CHECK(empty.all_passed());

    CHECK(lemma_suite(g, 9, 50).results.size() == 9);
    CHECK(render_lemma_report(lemma_suite(g, 9, 50)) == render_lemma_report(lemma_suite(g, 9, 50)));
}

TEST_CASE("a broken vanishing test is caught with a concrete multiset")
{
    const auto g = make_group(3, 2);
    const auto exact = exact_vanishing_oracle();
    const VanishingOracle negated = [exact](const GroupSpec& h, const Element& chi, const Multiset& m) {
        return !exact(h, chi, m);
    };
    Rng rng(batch_seed(42, 1));
    const auto r = check_divisibility(g, rng, 1000, negated);
    CHECK_FALSE(r.passed);
    CHECK(r.counterexample.find("M={") != std::string::npos);

    const auto suite = lemma_suite(g, 42, 200, negated);
    CHECK_FALSE(suite.all_passed());
    const auto it = std::find_if(suite.results.begin(), suite.results.end(),
        [](const LemmaResult& x) { return x.name == "vanishing_divisibility"; });
    REQUIRE(it != suite.results.end());
    CHECK_FALSE(it->passed);
    CHECK_FALSE(it->counterexample.empty());
}
