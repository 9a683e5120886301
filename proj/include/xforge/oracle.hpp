#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xforge/rational.hpp"
#include "xforge/rng.hpp"
#include "xforge/seeded.hpp"

namespace xforge {

// Exact distribution over outcomes 0..domain_size-1 given by nonnegative
// integer weights; probability of a is weight(a) / total().
class FiniteDistribution {
 public:
    FiniteDistribution(BigInt domain_size, std::map<std::uint64_t, std::uint64_t> weights);

    static FiniteDistribution uniform(std::uint64_t domain_size);
    static FiniteDistribution point_mass(std::uint64_t domain_size, std::uint64_t outcome);
    // Outcome i has probability probabilities[i]; they must sum to exactly 1.
    static FiniteDistribution from_probabilities(const std::vector<Rational>& probabilities);

    const BigInt& domain_size() const noexcept { return domain_; }
    const BigInt& total() const noexcept { return total_; }
    const std::map<std::uint64_t, std::uint64_t>& weights() const noexcept { return weights_; }
    std::uint64_t weight(std::uint64_t outcome) const;
    Rational probability(std::uint64_t outcome) const;

 private:
    BigInt domain_;
    BigInt total_;
    std::map<std::uint64_t, std::uint64_t> weights_;  // zero weights never stored
};

// Uniform distribution over an explicit set of 2^k distinct n-bit strings
// (n <= 64), stored as integers in ascending order.
class FlatSource {
 public:
    FlatSource(std::size_t n, std::vector<std::uint64_t> support);

    std::size_t input_bits() const noexcept { return n_; }
    std::size_t entropy() const noexcept { return k_; }
    const std::vector<std::uint64_t>& support() const noexcept { return support_; }

 private:
    std::size_t n_;
    std::size_t k_;
    std::vector<std::uint64_t> support_;
};

// 2^k distinct strings of {0,1}^n drawn with the counter-based generator.
FlatSource sample_flat_source(std::size_t n, std::size_t k, CounterRng rng);

// Pr[x, s] = weight(x, s) / total() for x in {0,1}^n and side symbol s.
class JointTable {
 public:
    JointTable(std::size_t n, std::size_t side_symbols, std::vector<std::uint64_t> weights);

    std::size_t input_bits() const noexcept { return n_; }
    std::size_t side_symbols() const noexcept { return symbols_; }
    std::uint64_t rows() const noexcept { return std::uint64_t{1} << n_; }
    std::uint64_t weight(std::uint64_t x, std::size_t s) const { return weights_[x * symbols_ + s]; }
    std::uint64_t row_weight(std::uint64_t x) const;
    std::uint64_t total() const noexcept { return total_; }

    FiniteDistribution x_marginal() const;

 private:
    std::size_t n_;
    std::size_t symbols_;
    std::vector<std::uint64_t> weights_;
    std::uint64_t total_ = 0;
};

// Side information s = x, fully revealing a uniform n-bit source.
JointTable full_copy_table(std::size_t n);
// Uniform n-bit source with s uniform on `side_symbols` values, independent of x.
JointTable independent_table(std::size_t n, std::size_t side_symbols);
// Uniform n-bit source with s = bit 0 of x.
JointTable one_bit_leak_table(std::size_t n);
// Random table whose rows have power-of-two weights (some rows empty).
JointTable random_joint_table(std::size_t n, std::size_t side_symbols, CounterRng rng);

Rational stat_distance(const FiniteDistribution& a, const FiniteDistribution& b);
double min_entropy(const FiniteDistribution& d);
// sum_s max_x Pr[x, s].
Rational guessing_probability(const JointTable& j);
double cond_min_entropy_classical(const JointTable& j);
// Distance to the nearest distribution with min-entropy >= kappa, i.e.
// sum_a max(D(a) - 2^-kappa, 0); 1 if the domain has fewer than 2^kappa outcomes.
Rational distance_to_min_entropy(const FiniteDistribution& d, std::size_t kappa);

// Explicit enumeration limits. The memory cap defaults to the value of
// EXTRACTORFORGE_MAX_MEM (bytes, optional K/M/G suffix) or 1 GiB.
struct OracleBudget {
    std::uint64_t max_evaluations = std::uint64_t{1} << 34;
    std::uint64_t max_memory_bytes = 0;  // 0: use the environment default
    unsigned workers = 0;                // 0: hardware concurrency
};
std::uint64_t default_memory_cap();

// Exact distance of (Y, E(X, Y), S) from (U_t, U_m, S). Only the seed
// positions in E.seed_support() are enumerated: the remaining seed bits are
// uniform and independent of everything else, so they leave the distance
// unchanged. Throws BudgetExceeded rather than sampling.
Rational extractor_distance(const SeededFunction& e, const FlatSource& x,
                            const OracleBudget& budget = {});
// The table's x-marginal is the source; it need not be flat.
Rational extractor_distance(const SeededFunction& e, const JointTable& j,
                            const OracleBudget& budget = {});
// Requires the table's x-marginal to equal the flat source.
Rational extractor_distance(const SeededFunction& e, const FlatSource& x, const JointTable& j,
                            const OracleBudget& budget = {});

// Distribution of y || f(x, y) over the full seed, with y in the low bits.
FiniteDistribution seeded_output_distribution(const SeededFunction& f, const FlatSource& x,
                                              const OracleBudget& budget = {});

// Fraction of pairs in X x {0,1}^d whose image under f has no other preimage
// in X x {0,1}^d.
Rational injective_fraction(const SeededFunction& f, const FlatSource& x,
                            const OracleBudget& budget = {});

struct FlatComponent {
    Rational coefficient;
    std::vector<std::uint64_t> support;  // 2^kappa outcomes, ascending
};
// Writes d (min-entropy >= kappa) as a convex combination of flat
// distributions on 2^kappa outcomes by repeatedly peeling the heaviest
// 2^kappa outcomes.
std::vector<FlatComponent> flat_decomposition(const FiniteDistribution& d, std::size_t kappa);

struct LemmaCheck {
    std::string name;
    Rational lhs;
    Rational rhs;
    bool pass = false;

    Rational slack() const { return rhs - lhs; }
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    bool all_pass() const noexcept;
};

// Both sides of each classical min-entropy inequality, in guessing
// probability form, for the table j and a cut at `split` bits:
//   cutting:    P(X1 | S) <= 2^split P(X | S), X1 = first n - split bits;
//   prefix r:   Pr[X1 in B_r] <= 2^(split + r) P(X | S), X1 = first split bits,
//               B_r = prefixes x1 with P(X2 | X1 = x1, S) >= 2^-r;
//   storage:    P(X | S) <= 2^b max_x Pr[x], b = ceil(log2 |S|);
//   convexity:  distance(X) <= sum_i a_i distance(X_i) over the flat
//               decomposition X = sum_i a_i X_i, with `extractor` (default
//               Toeplitz hashing to min(2, n) bits).
LemmaReport lemma_suite(const JointTable& j, std::size_t split,
                        const std::optional<SeededFunction>& extractor = std::nullopt);

}  // namespace xforge
