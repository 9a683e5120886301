#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "brute.hpp"
#include "xforge/errors.hpp"
#include "xforge/oracle.hpp"
#include "xforge/toeplitz.hpp"
#include "xforge/trevisan.hpp"

using namespace xforge;

namespace {

FiniteDistribution random_distribution(CounterRng& rng, std::uint64_t domain) {
    std::map<std::uint64_t, std::uint64_t> w;
    for (std::uint64_t a = 0; a < domain; ++a) {
        const std::uint64_t v = rng.below(5);
        if (v != 0) w[a] = v;
    }
    if (w.empty()) w[0] = 1;
    return FiniteDistribution(domain, w);
}

std::vector<std::tuple<std::uint64_t, std::size_t, Rational>> table_rows(const JointTable& j) {
    std::vector<std::tuple<std::uint64_t, std::size_t, Rational>> rows;
    for (std::uint64_t x = 0; x < j.rows(); ++x) {
        for (std::size_t s = 0; s < j.side_symbols(); ++s) {
            if (j.weight(x, s) != 0) rows.emplace_back(x, s, Rational(j.weight(x, s), j.total()));
        }
    }
    return rows;
}

SeededFunction constant_zero(std::size_t n, std::size_t t) {
    return SeededFunction(n, t, 1, [](const BitString&, const BitString&, BitString& out) { out.set(0, false); });
}

SeededFunction first_seed_bit(std::size_t n, std::size_t t) {
    return SeededFunction(n, t, 1, [](const BitString&, const BitString& y, BitString& out) { out.set(0, y[0]); });
}

}  // namespace

TEST_CASE("statistical distance examples and metric properties") {
    const auto u = FiniteDistribution::uniform(4);
    const auto p = FiniteDistribution::point_mass(4, 0);
    CHECK(stat_distance(u, u) == 0);
    CHECK(stat_distance(u, p) == Rational(3, 4));
    CHECK(stat_distance(FiniteDistribution::point_mass(4, 1), p) == 1);
    CHECK_THROWS_AS(stat_distance(u, FiniteDistribution::uniform(8)), std::invalid_argument);
    CounterRng rng(71);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_distribution(rng, 8), b = random_distribution(rng, 8), c = random_distribution(rng, 8);
        CHECK(stat_distance(a, b) == stat_distance(b, a));
        CHECK(stat_distance(a, c) <= stat_distance(a, b) + stat_distance(b, c));
        CHECK(stat_distance(a, b) >= 0);
        CHECK(stat_distance(a, b) <= 1);
        // pushing both through the same map cannot increase the distance
        std::vector<std::uint64_t> f(8);
        for (auto& v : f) v = rng.below(3);
        auto push = [&](const FiniteDistribution& d) {
            std::map<std::uint64_t, std::uint64_t> w;
            for (const auto& [o, wt] : d.weights()) w[f[o]] += wt;
            return FiniteDistribution(3, w);
        };
        CHECK(stat_distance(push(a), push(b)) <= stat_distance(a, b));
    }
}

TEST_CASE("distributions from probabilities") {
    const auto d = FiniteDistribution::from_probabilities({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    CHECK(d.probability(0) == Rational(1, 2));
    CHECK(d.probability(2) == Rational(1, 4));
    CHECK(min_entropy(d) == doctest::Approx(1.0));
    CHECK_THROWS_AS(FiniteDistribution::from_probabilities({Rational(1, 2), Rational(1, 4)}), std::invalid_argument);
    CHECK(min_entropy(FiniteDistribution::uniform(32)) == doctest::Approx(5.0));
    CHECK(min_entropy(FiniteDistribution::point_mass(32, 7)) == doctest::Approx(0.0));
}

TEST_CASE("conditional min-entropy examples") {
    CHECK(cond_min_entropy_classical(independent_table(3, 4)) == doctest::Approx(3.0));
    CHECK(cond_min_entropy_classical(full_copy_table(3)) == doctest::Approx(0.0));
    CHECK(cond_min_entropy_classical(one_bit_leak_table(2)) == doctest::Approx(1.0));
    CHECK(guessing_probability(one_bit_leak_table(4)) == Rational(1, 8));
    CounterRng rng(72);
    for (int i = 0; i < 50; ++i) {
        const JointTable j = random_joint_table(4, 3, rng.split(i));
        Rational guess = 0;
        for (std::size_t s = 0; s < 3; ++s) {
            std::uint64_t best = 0;
            for (std::uint64_t x = 0; x < 16; ++x) best = std::max(best, j.weight(x, s));
            guess += Rational(best, j.total());
        }
        CHECK(guessing_probability(j) == guess);
        CHECK(cond_min_entropy_classical(j) <= min_entropy(j.x_marginal()) + 1e-12);
    }
}

TEST_CASE("distance to min-entropy") {
    CHECK(distance_to_min_entropy(FiniteDistribution::uniform(8), 3) == 0);
    CHECK(distance_to_min_entropy(FiniteDistribution::point_mass(2, 0), 1) == Rational(1, 2));
    CHECK(distance_to_min_entropy(FiniteDistribution::uniform(2), 2) == 1);
    const auto d = FiniteDistribution::from_probabilities({Rational(1, 2), Rational(1, 3), Rational(1, 6), 0});
    CHECK(distance_to_min_entropy(d, 2) == Rational(1, 3));
    CHECK(distance_to_min_entropy(d, 1) == 0);
}

TEST_CASE("distance to min-entropy matches a grid search on 4 outcomes") {
    // all distributions with probabilities in multiples of 1/12
    std::vector<std::array<int, 4>> grid;
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; a + b <= 12; ++b)
            for (int c = 0; a + b + c <= 12; ++c) grid.push_back({a, b, c, 12 - a - b - c});
    CounterRng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& target = grid[rng.below(grid.size())];
        std::vector<Rational> probs;
        for (int v : target) probs.emplace_back(v, 12);
        const auto d = FiniteDistribution::from_probabilities(probs);
        for (std::size_t kappa : {1U, 2U}) {
            const int cap = 12 >> kappa;
            Rational best = 2;
            for (const auto& q : grid) {
                if (*std::max_element(q.begin(), q.end()) > cap) continue;
                Rational dist = 0;
                for (int i = 0; i < 4; ++i) dist += Rational(std::abs(q[i] - target[i]), 24);
                best = std::min(best, dist);
            }
            CHECK(distance_to_min_entropy(d, kappa) == best);
        }
    }
}

TEST_CASE("distance to min-entropy is monotone in kappa") {
    CounterRng rng(74);
    for (int i = 0; i < 50; ++i) {
        const auto d = random_distribution(rng, 16);
        for (std::size_t kappa = 0; kappa < 5; ++kappa) {
            CHECK(distance_to_min_entropy(d, kappa) <= distance_to_min_entropy(d, kappa + 1));
        }
    }
}

TEST_CASE("extractor distance examples") {
    const FlatSource src(3, {1, 2, 5, 6});
    CHECK(extractor_distance(constant_zero(3, 2), src) == Rational(1, 2));
    CHECK(extractor_distance(first_seed_bit(3, 2), src) == Rational(1, 2));
    CHECK(brute::flat_extractor_distance(constant_zero(3, 2), src.support()) == Rational(1, 2));
    CHECK(brute::flat_extractor_distance(first_seed_bit(3, 2), src.support()) == Rational(1, 2));
    CHECK_THROWS_AS(extractor_distance(constant_zero(4, 2), src), std::invalid_argument);
}

TEST_CASE("oracle agrees with full enumeration, with and without side information") {
    CounterRng rng(75);
    const SeededFunction h = as_seeded_function(make_toeplitz(5, 2));
    for (int i = 0; i < 10; ++i) {
        const FlatSource src = sample_flat_source(5, 3, rng.split(i));
        CHECK(extractor_distance(h, src) == brute::flat_extractor_distance(h, src.support()));
        const JointTable j = random_joint_table(5, 3, rng.split(100 + i));
        CHECK(extractor_distance(h, j) == brute::extractor_distance(h, table_rows(j), 3));
    }
}

TEST_CASE("independent side information changes nothing") {
    const SeededFunction h = as_seeded_function(make_toeplitz(4, 2));
    std::vector<std::uint64_t> all(16);
    for (std::uint64_t i = 0; i < 16; ++i) all[i] = i;
    const FlatSource src(4, all);
    CHECK(extractor_distance(h, src, independent_table(4, 5)) == extractor_distance(h, src));
    CHECK(extractor_distance(h, src, full_copy_table(4)) >= extractor_distance(h, src));
    CHECK_THROWS_AS(extractor_distance(h, FlatSource(4, {0, 1}), full_copy_table(4)), std::invalid_argument);
}

TEST_CASE("seed projection equals full enumeration for a Trevisan spec") {
    const ExtractorSpec s = build_trevisan(TrevisanPreset::log_seed, 8, 1, 0.5);
    const SeededFunction projected = as_seeded_function(s);
    const SeededFunction full(s.n, s.t, s.m, [s](const BitString& x, const BitString& y, BitString& out) {
        out = trevisan_extract(s, x, y);
    });
    REQUIRE(projected.seed_support().size() < s.t);
    CounterRng rng(76);
    for (int i = 0; i < 3; ++i) {
        const FlatSource src = sample_flat_source(8, 4, rng.split(i));
        CHECK(extractor_distance(projected, src) == extractor_distance(full, src));
    }
}

TEST_CASE("worker count does not change results") {
    const SeededFunction h = as_seeded_function(make_toeplitz(8, 3));
    const FlatSource src = sample_flat_source(8, 5, CounterRng(77));
    const Rational one = extractor_distance(h, src, OracleBudget{1U << 30, 0, 1});
    CHECK(extractor_distance(h, src, OracleBudget{1U << 30, 0, 3}) == one);
    CHECK(extractor_distance(h, src, OracleBudget{1U << 30, 0, 7}) == one);
}

TEST_CASE("budgets are enforced, never sampled around") {
    const SeededFunction h = as_seeded_function(make_toeplitz(8, 3));
    const FlatSource src = sample_flat_source(8, 5, CounterRng(78));
    CHECK_THROWS_AS(extractor_distance(h, src, OracleBudget{100, 0, 1}), BudgetExceeded);
    CHECK_THROWS_AS(extractor_distance(h, src, OracleBudget{1U << 30, 16, 1}), BudgetExceeded);
    CHECK_THROWS_AS(injective_fraction(h, src, OracleBudget{100, 0, 1}), BudgetExceeded);
    try {
        extractor_distance(h, src, OracleBudget{100, 0, 1});
    } catch (const BudgetExceeded& e) {
        CHECK(e.budget() == 100);
        CHECK(e.requested() == (std::size_t{1} << 10) * 32);
    }
}

TEST_CASE("memory cap comes from the environment") {
    ::unsetenv("EXTRACTORFORGE_MAX_MEM");
    CHECK(default_memory_cap() == (std::uint64_t{1} << 30));
    ::setenv("EXTRACTORFORGE_MAX_MEM", "2K", 1);
    CHECK(default_memory_cap() == 2048);
    ::setenv("EXTRACTORFORGE_MAX_MEM", "3M", 1);
    CHECK(default_memory_cap() == 3 * (std::uint64_t{1} << 20));
    ::setenv("EXTRACTORFORGE_MAX_MEM", "16", 1);
    const SeededFunction h = as_seeded_function(make_toeplitz(8, 3));
    CHECK_THROWS_AS(extractor_distance(h, sample_flat_source(8, 5, CounterRng(79)), OracleBudget{1U << 30, 0, 1}),
                    BudgetExceeded);
    ::setenv("EXTRACTORFORGE_MAX_MEM", "3x", 1);
    CHECK_THROWS_AS(default_memory_cap(), std::invalid_argument);
    ::unsetenv("EXTRACTORFORGE_MAX_MEM");
}

TEST_CASE("flat sources") {
    CHECK_THROWS_AS(FlatSource(3, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FlatSource(3, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FlatSource(3, {1, 9}), std::invalid_argument);
    const FlatSource s(3, {5, 1});
    CHECK(s.support() == std::vector<std::uint64_t>{1, 5});
    CHECK(s.entropy() == 1);
    const FlatSource a = sample_flat_source(10, 6, CounterRng(80));
    CHECK(a.support().size() == 64);
    CHECK(a.support() == sample_flat_source(10, 6, CounterRng(80)).support());
    CHECK(a.support() != sample_flat_source(10, 6, CounterRng(81)).support());
    CHECK(sample_flat_source(4, 4, CounterRng(82)).support().size() == 16);
    CHECK(sample_flat_source(40, 3, CounterRng(83)).support().size() == 8);
}

TEST_CASE("seeded output distribution and injectivity") {
    const SeededFunction copy(3, 2, 3, [](const BitString& x, const BitString&, BitString& out) { out = x; });
    const FlatSource src(3, {0, 3, 5, 6});
    const FiniteDistribution d = seeded_output_distribution(copy, src);
    CHECK(d.weights().size() == 16);
    CHECK(d.weight(1 | (3U << 2)) == 1);
    CHECK(d.domain_size() == 32);
    CHECK(injective_fraction(copy, src) == 0);  // every image has one preimage per seed
    const SeededFunction pair(3, 2, 5, [](const BitString& x, const BitString& y, BitString& out) { out = x.concat(y); });
    CHECK(injective_fraction(pair, src) == 1);
    CHECK(injective_fraction(constant_zero(3, 2), src) == 0);
}

TEST_CASE("flat decomposition recombines exactly") {
    CounterRng rng(84);
    for (int i = 0; i < 30; ++i) {
        const JointTable j = random_joint_table(4, 1, rng.split(i));
        const FiniteDistribution d = j.x_marginal();
        const std::size_t kappa = static_cast<std::size_t>(std::floor(min_entropy(d) + 1e-9));
        const auto parts = flat_decomposition(d, kappa);
        Rational total = 0;
        std::vector<Rational> mix(16, 0);
        for (const auto& p : parts) {
            CHECK(p.support.size() == (std::size_t{1} << kappa));
            total += p.coefficient;
            for (std::uint64_t o : p.support) mix[o] += p.coefficient / p.support.size();
        }
        CHECK(total == 1);
        for (std::uint64_t o = 0; o < 16; ++o) CHECK(mix[o] == d.probability(o));
    }
    CHECK_THROWS_AS(flat_decomposition(FiniteDistribution::point_mass(4, 0), 1), std::invalid_argument);
}

TEST_CASE("lemma suite on the hand-built tables") {
    for (const JointTable& j : {full_copy_table(4), independent_table(4, 3), one_bit_leak_table(4)}) {
        for (std::size_t split = 0; split <= 4; ++split) {
            const LemmaReport r = lemma_suite(j, split);
            CHECK(r.all_pass());
            for (const auto& c : r.checks) CHECK_MESSAGE(c.slack() >= 0, c.name);
        }
    }
    // the storage bound is tight when the side information is the source
    for (const auto& c : lemma_suite(full_copy_table(4), 2).checks) {
        if (c.name == "storage") CHECK(c.slack() == 0);
    }
    CHECK_THROWS_AS(lemma_suite(full_copy_table(3), 4), std::invalid_argument);
}

TEST_CASE("lemma suite on random tables") {
    CounterRng rng(85);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + rng.below(4);
        const JointTable j = random_joint_table(n, 1 + rng.below(4), rng.split(i));
        const LemmaReport r = lemma_suite(j, rng.below(n + 1));
        CHECK(r.all_pass());
        std::set<std::string> names;
        for (const auto& c : r.checks) names.insert(c.name.substr(0, c.name.find(' ')));
        CHECK(names == std::set<std::string>{"convexity", "cutting", "prefix", "storage"});
    }
}
