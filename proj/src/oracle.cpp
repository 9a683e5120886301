#include "xforge/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "xforge/errors.hpp"
#include "xforge/toeplitz.hpp"

namespace xforge {

namespace {

using boost::multiprecision::uint128_t;

BigInt pow2_big(std::size_t e) { return BigInt(1) << e; }

Rational pow2(long long e) {
    return e >= 0 ? Rational(pow2_big(static_cast<std::size_t>(e)))
                  : Rational(BigInt(1), pow2_big(static_cast<std::size_t>(-e)));
}

double log2_big(const BigInt& v) {
    // Exact enough for reporting: shift to 53 significant bits first.
    const std::size_t bits = v == 0 ? 0 : static_cast<std::size_t>(msb(v)) + 1;
    if (bits <= 53) return std::log2(v.convert_to<double>());
    const std::size_t shift = bits - 53;
    return std::log2((v >> shift).convert_to<double>()) + static_cast<double>(shift);
}

BitString from_index(std::uint64_t value, std::size_t n) { return BitString::from_uint(value, n); }

struct WeightedRow {
    BitString x;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> entries;  // (side symbol, weight)
};

struct JointInput {
    std::vector<WeightedRow> rows;
    std::vector<std::uint64_t> side_weights;
    std::uint64_t total = 0;
};

unsigned resolve_workers(const OracleBudget& budget, std::uint64_t jobs) {
    unsigned w = budget.workers;
    if (w == 0) w = std::max(1U, std::thread::hardware_concurrency());
    if (jobs < w) w = static_cast<unsigned>(std::max<std::uint64_t>(1, jobs));
    return w;
}

std::uint64_t resolve_memory(const OracleBudget& budget) {
    return budget.max_memory_bytes != 0 ? budget.max_memory_bytes : default_memory_cap();
}

std::vector<std::uint32_t> enumerated_positions(const SeededFunction& e) {
    if (!e.seed_support().empty()) return e.seed_support();
    std::vector<std::uint32_t> all(e.seed_bits());
    std::iota(all.begin(), all.end(), 0U);
    return all;
}

// Runs body(first, last) over [0, jobs) split into contiguous chunks, one per
// worker, and rethrows the first failure.
template <typename Body>
void partitioned(std::uint64_t jobs, unsigned workers, Body body) {
    if (workers <= 1) {
        body(0, jobs, 0U);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (jobs + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t first = std::min<std::uint64_t>(jobs, w * chunk);
        const std::uint64_t last = std::min<std::uint64_t>(jobs, first + chunk);
        threads.emplace_back([&, first, last, w] {
            try {
                body(first, last, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

Rational joint_distance(const SeededFunction& e, const JointInput& in, const OracleBudget& budget) {
    const std::vector<std::uint32_t> positions = enumerated_positions(e);
    const std::size_t p = positions.size();
    const std::size_t m = e.output_bits();
    const std::size_t symbols = in.side_weights.size();
    if (p >= 48) throw BudgetExceeded("seed enumeration over " + std::to_string(p) + " bits", SIZE_MAX, budget.max_evaluations);
    if (m > 40) throw BudgetExceeded("output table over " + std::to_string(m) + " bits", SIZE_MAX, resolve_memory(budget));
    const std::uint64_t seeds = std::uint64_t{1} << p;
    const uint128_t evaluations = uint128_t(seeds) * in.rows.size();
    if (evaluations > budget.max_evaluations) {
        throw BudgetExceeded("extractor distance enumeration",
                             evaluations > UINT64_MAX ? SIZE_MAX : static_cast<std::size_t>(evaluations),
                             budget.max_evaluations);
    }
    const unsigned workers = resolve_workers(budget, seeds);
    const uint128_t table_bytes = (uint128_t(1) << m) * symbols * sizeof(std::uint64_t) * workers;
    const std::uint64_t cap = resolve_memory(budget);
    if (table_bytes > cap) {
        throw BudgetExceeded("extractor distance table memory",
                             table_bytes > UINT64_MAX ? SIZE_MAX : static_cast<std::size_t>(table_bytes), cap);
    }

    const uint128_t scale = uint128_t(1) << m;
    BigInt untouched_base = 0;  // every (e, s) cell contributes ws(s) while empty
    for (std::uint64_t ws : in.side_weights) untouched_base += BigInt(ws);
    untouched_base *= BigInt(1) << m;

    std::vector<BigInt> partial(workers, 0);
    partitioned(seeds, workers, [&](std::uint64_t first, std::uint64_t last, unsigned w) {
        std::vector<std::uint64_t> table(static_cast<std::size_t>(scale) * symbols, 0);
        std::vector<std::size_t> touched;
        BitString y(e.seed_bits());
        BitString out(m);
        BigInt acc = 0;
        for (std::uint64_t c = first; c < last; ++c) {
            for (std::size_t i = 0; i < p; ++i) y.set(positions[i], ((c >> i) & 1U) != 0);
            for (const WeightedRow& row : in.rows) {
                e.apply_into(row.x, y, out);
                const std::uint64_t value = out.word_at(0, static_cast<unsigned>(m));
                for (const auto& [s, weight] : row.entries) {
                    const std::size_t cell = static_cast<std::size_t>(value) * symbols + s;
                    if (table[cell] == 0) touched.push_back(cell);
                    table[cell] += weight;
                }
            }
            // sum over all cells |2^m cnt - ws(s)| = sum over touched cells of
            // (|2^m cnt - ws| - ws) + sum over all cells ws.
            uint128_t plus = 0, minus = 0;
            for (std::size_t cell : touched) {
                const uint128_t scaled = scale * table[cell];
                const uint128_t ws = in.side_weights[cell % symbols];
                plus += scaled > ws ? scaled - ws : ws - scaled;
                minus += ws;
                table[cell] = 0;
            }
            touched.clear();
            acc += BigInt(plus);
            acc -= BigInt(minus);
            acc += untouched_base;
        }
        partial[w] = acc;
    });
    BigInt numerator = 0;
    for (const BigInt& v : partial) numerator += v;
    const BigInt denominator = BigInt(2) * BigInt(in.total) * (BigInt(1) << m) * (BigInt(1) << p);
    return Rational(numerator, denominator);
}

JointInput flat_input(const SeededFunction& e, const FlatSource& x) {
    if (x.input_bits() != e.input_bits()) {
        throw std::invalid_argument("source has " + std::to_string(x.input_bits()) +
                                    "-bit outcomes, function takes " + std::to_string(e.input_bits()));
    }
    JointInput in;
    for (std::uint64_t v : x.support()) in.rows.push_back({from_index(v, x.input_bits()), {{0U, 1U}}});
    in.side_weights = {x.support().size()};
    in.total = x.support().size();
    return in;
}

JointInput table_input(const SeededFunction& e, const JointTable& j) {
    if (j.input_bits() != e.input_bits()) {
        throw std::invalid_argument("table has " + std::to_string(j.input_bits()) +
                                    "-bit outcomes, function takes " + std::to_string(e.input_bits()));
    }
    JointInput in;
    in.side_weights.assign(j.side_symbols(), 0);
    for (std::uint64_t x = 0; x < j.rows(); ++x) {
        WeightedRow row{from_index(x, j.input_bits()), {}};
        for (std::size_t s = 0; s < j.side_symbols(); ++s) {
            const std::uint64_t w = j.weight(x, s);
            if (w == 0) continue;
            row.entries.emplace_back(static_cast<std::uint32_t>(s), w);
            in.side_weights[s] += w;
        }
        if (!row.entries.empty()) in.rows.push_back(std::move(row));
    }
    in.total = j.total();
    return in;
}

void check_full_enumeration(const SeededFunction& f, const FlatSource& x, const OracleBudget& budget,
                            const char* what) {
    if (x.input_bits() != f.input_bits()) throw std::invalid_argument(std::string(what) + ": source length mismatch");
    if (f.seed_bits() >= 48) throw BudgetExceeded(what, SIZE_MAX, budget.max_evaluations);
    const uint128_t evaluations = (uint128_t(1) << f.seed_bits()) * x.support().size();
    if (evaluations > budget.max_evaluations) {
        throw BudgetExceeded(what, static_cast<std::size_t>(evaluations), budget.max_evaluations);
    }
}

}  // namespace

// ---- FiniteDistribution ----------------------------------------------------

FiniteDistribution::FiniteDistribution(BigInt domain_size, std::map<std::uint64_t, std::uint64_t> weights)
    : domain_(std::move(domain_size)) {
    if (domain_ < 1) throw std::invalid_argument("distribution domain must be nonempty");
    for (const auto& [a, w] : weights) {
        if (w == 0) continue;
        if (BigInt(a) >= domain_) throw std::invalid_argument("outcome " + std::to_string(a) + " outside the domain");
        weights_.emplace(a, w);
        total_ += w;
    }
    if (total_ == 0) throw std::invalid_argument("distribution has no mass");
}

FiniteDistribution FiniteDistribution::uniform(std::uint64_t domain_size) {
    std::map<std::uint64_t, std::uint64_t> w;
    for (std::uint64_t a = 0; a < domain_size; ++a) w.emplace(a, 1);
    return FiniteDistribution(BigInt(domain_size), std::move(w));
}

FiniteDistribution FiniteDistribution::point_mass(std::uint64_t domain_size, std::uint64_t outcome) {
    return FiniteDistribution(BigInt(domain_size), {{outcome, 1}});
}

FiniteDistribution FiniteDistribution::from_probabilities(const std::vector<Rational>& probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("distribution domain must be nonempty");
    BigInt common = 1;
    Rational sum = 0;
    for (const Rational& p : probabilities) {
        if (p < 0) throw std::invalid_argument("negative probability");
        common = boost::multiprecision::lcm(common, denominator(p));
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("probabilities sum to " + to_string(sum) + ", not 1");
    std::map<std::uint64_t, std::uint64_t> w;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const BigInt scaled = numerator(Rational(probabilities[i] * common));
        if (scaled > UINT64_MAX) throw std::invalid_argument("probability denominators too large");
        w.emplace(i, scaled.convert_to<std::uint64_t>());
    }
    return FiniteDistribution(BigInt(probabilities.size()), std::move(w));
}

std::uint64_t FiniteDistribution::weight(std::uint64_t outcome) const {
    auto it = weights_.find(outcome);
    return it == weights_.end() ? 0 : it->second;
}

Rational FiniteDistribution::probability(std::uint64_t outcome) const {
    return Rational(BigInt(weight(outcome)), total_);
}

// ---- FlatSource ------------------------------------------------------------

FlatSource::FlatSource(std::size_t n, std::vector<std::uint64_t> support)
    : n_(n), k_(0), support_(std::move(support)) {
    if (n < 1 || n > 64) throw std::invalid_argument("flat sources need 1 <= n <= 64");
    std::sort(support_.begin(), support_.end());
    if (support_.empty() || !std::has_single_bit(support_.size())) {
        throw std::invalid_argument("flat source support must have 2^k elements (got " +
                                    std::to_string(support_.size()) + ")");
    }
    if (std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
        throw std::invalid_argument("flat source support has repeated elements");
    }
    if (n < 64 && support_.back() >> n != 0) throw std::invalid_argument("flat source element exceeds n bits");
    k_ = static_cast<std::size_t>(std::countr_zero(support_.size()));
}

FlatSource sample_flat_source(std::size_t n, std::size_t k, CounterRng rng) {
    if (n < 1 || n > 63 || k > n || k > 30) throw std::invalid_argument("flat source needs k <= n <= 63, k <= 30");
    const std::uint64_t size = std::uint64_t{1} << k;
    const std::uint64_t domain = std::uint64_t{1} << n;
    std::vector<std::uint64_t> chosen;
    chosen.reserve(size);
    if (n <= 20 && size * 4 > domain) {
        std::vector<std::uint64_t> all(domain);
        std::iota(all.begin(), all.end(), 0);
        for (std::uint64_t i = 0; i < size; ++i) {
            std::swap(all[i], all[i + rng.below(domain - i)]);
            chosen.push_back(all[i]);
        }
    } else {
        std::set<std::uint64_t> seen;
        while (seen.size() < size) seen.insert(rng.below(domain));
        chosen.assign(seen.begin(), seen.end());
    }
    return FlatSource(n, std::move(chosen));
}

// ---- JointTable --------------------------------------------------------------

JointTable::JointTable(std::size_t n, std::size_t side_symbols, std::vector<std::uint64_t> weights)
    : n_(n), symbols_(side_symbols), weights_(std::move(weights)) {
    if (n < 1 || n > 24) throw std::invalid_argument("joint tables need 1 <= n <= 24");
    if (side_symbols < 1) throw std::invalid_argument("joint tables need at least one side symbol");
    if (weights_.size() != (std::uint64_t{1} << n) * side_symbols) {
        throw std::invalid_argument("joint table has " + std::to_string(weights_.size()) +
                                    " entries, expected 2^n * symbols");
    }
    for (std::uint64_t w : weights_) {
        if (total_ + w < total_) throw std::invalid_argument("joint table weights overflow");
        total_ += w;
    }
    if (total_ == 0) throw std::invalid_argument("joint table has no mass");
}

std::uint64_t JointTable::row_weight(std::uint64_t x) const {
    std::uint64_t sum = 0;
    for (std::size_t s = 0; s < symbols_; ++s) sum += weight(x, s);
    return sum;
}

FiniteDistribution JointTable::x_marginal() const {
    std::map<std::uint64_t, std::uint64_t> w;
    for (std::uint64_t x = 0; x < rows(); ++x) w.emplace(x, row_weight(x));
    return FiniteDistribution(BigInt(rows()), std::move(w));
}

JointTable full_copy_table(std::size_t n) {
    const std::uint64_t rows = std::uint64_t{1} << n;
    std::vector<std::uint64_t> w(rows * rows, 0);
    for (std::uint64_t x = 0; x < rows; ++x) w[x * rows + x] = 1;
    return JointTable(n, rows, std::move(w));
}

JointTable independent_table(std::size_t n, std::size_t side_symbols) {
    return JointTable(n, side_symbols, std::vector<std::uint64_t>((std::uint64_t{1} << n) * side_symbols, 1));
}

JointTable one_bit_leak_table(std::size_t n) {
    const std::uint64_t rows = std::uint64_t{1} << n;
    std::vector<std::uint64_t> w(rows * 2, 0);
    for (std::uint64_t x = 0; x < rows; ++x) w[x * 2 + (x & 1U)] = 1;
    return JointTable(n, 2, std::move(w));
}

JointTable random_joint_table(std::size_t n, std::size_t side_symbols, CounterRng rng) {
    const std::uint64_t rows = std::uint64_t{1} << n;
    std::vector<std::uint64_t> w(rows * side_symbols, 0);
    bool any = false;
    for (std::uint64_t x = 0; x < rows; ++x) {
        const bool empty = rng.below(4) == 0 && !(x + 1 == rows && !any);
        if (empty) continue;
        const std::uint64_t units = std::uint64_t{1} << rng.below(5);
        for (std::uint64_t u = 0; u < units; ++u) ++w[x * side_symbols + rng.below(side_symbols)];
        any = true;
    }
    return JointTable(n, side_symbols, std::move(w));
}

// ---- entropy and distance ----------------------------------------------------

Rational stat_distance(const FiniteDistribution& a, const FiniteDistribution& b) {
    if (a.domain_size() != b.domain_size()) throw std::invalid_argument("distributions live on different domains");
    std::set<std::uint64_t> outcomes;
    for (const auto& [o, w] : a.weights()) outcomes.insert(o);
    for (const auto& [o, w] : b.weights()) outcomes.insert(o);
    BigInt sum = 0;
    for (std::uint64_t o : outcomes) {
        const BigInt diff = BigInt(a.weight(o)) * b.total() - BigInt(b.weight(o)) * a.total();
        sum += diff < 0 ? BigInt(-diff) : diff;
    }
    return Rational(sum, BigInt(2) * a.total() * b.total());
}

double min_entropy(const FiniteDistribution& d) {
    std::uint64_t heaviest = 0;
    for (const auto& [o, w] : d.weights()) heaviest = std::max(heaviest, w);
    return log2_big(d.total()) - std::log2(static_cast<double>(heaviest));
}

Rational guessing_probability(const JointTable& j) {
    BigInt sum = 0;
    for (std::size_t s = 0; s < j.side_symbols(); ++s) {
        std::uint64_t best = 0;
        for (std::uint64_t x = 0; x < j.rows(); ++x) best = std::max(best, j.weight(x, s));
        sum += best;
    }
    return Rational(sum, BigInt(j.total()));
}

double cond_min_entropy_classical(const JointTable& j) {
    const Rational g = guessing_probability(j);
    return log2_big(denominator(g)) - log2_big(numerator(g));
}

Rational distance_to_min_entropy(const FiniteDistribution& d, std::size_t kappa) {
    if (d.domain_size() < pow2_big(kappa)) return Rational(1);
    const BigInt cap = d.total();
    BigInt excess = 0;
    for (const auto& [o, w] : d.weights()) {
        const BigInt scaled = BigInt(w) << kappa;
        if (scaled > cap) excess += scaled - cap;
    }
    return Rational(excess, cap << kappa);
}

std::uint64_t default_memory_cap() {
    constexpr std::uint64_t kDefault = std::uint64_t{1} << 30;
    const char* env = std::getenv("EXTRACTORFORGE_MAX_MEM");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    std::uint64_t scale = 1;
    if (end != nullptr && *end != '\0') {
        switch (*end) {
            case 'k': case 'K': scale = std::uint64_t{1} << 10; break;
            case 'm': case 'M': scale = std::uint64_t{1} << 20; break;
            case 'g': case 'G': scale = std::uint64_t{1} << 30; break;
            default: throw std::invalid_argument(std::string("EXTRACTORFORGE_MAX_MEM: cannot parse '") + env + "'");
        }
    }
    if (value == 0) throw std::invalid_argument("EXTRACTORFORGE_MAX_MEM must be positive");
    return static_cast<std::uint64_t>(value) * scale;
}

Rational extractor_distance(const SeededFunction& e, const FlatSource& x, const OracleBudget& budget) {
    return joint_distance(e, flat_input(e, x), budget);
}

Rational extractor_distance(const SeededFunction& e, const JointTable& j, const OracleBudget& budget) {
    return joint_distance(e, table_input(e, j), budget);
}

Rational extractor_distance(const SeededFunction& e, const FlatSource& x, const JointTable& j,
                            const OracleBudget& budget) {
    if (j.input_bits() != x.input_bits()) throw std::invalid_argument("table and source lengths differ");
    const std::uint64_t per_row = j.total() / x.support().size();
    if (per_row * x.support().size() != j.total()) {
        throw std::invalid_argument("table x-marginal is not the flat source");
    }
    std::size_t next = 0;
    for (std::uint64_t row = 0; row < j.rows(); ++row) {
        const bool in_support = next < x.support().size() && x.support()[next] == row;
        if (in_support) ++next;
        if (j.row_weight(row) != (in_support ? per_row : 0)) {
            throw std::invalid_argument("table x-marginal is not the flat source");
        }
    }
    return extractor_distance(e, j, budget);
}

FiniteDistribution seeded_output_distribution(const SeededFunction& f, const FlatSource& x,
                                              const OracleBudget& budget) {
    check_full_enumeration(f, x, budget, "seeded output distribution");
    const std::size_t t = f.seed_bits();
    const std::size_t m = f.output_bits();
    if (t + m > 64) throw std::invalid_argument("seed plus output exceed 64 bits");
    std::map<std::uint64_t, std::uint64_t> counts;
    BitString out(m);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << t); ++y) {
        const BitString seed = from_index(y, t);
        for (std::uint64_t v : x.support()) {
            f.apply_into(from_index(v, x.input_bits()), seed, out);
            const std::uint64_t value = m == 0 ? 0 : out.word_at(0, static_cast<unsigned>(m));
            ++counts[y | (value << t)];
        }
    }
    return FiniteDistribution(pow2_big(t + m), std::move(counts));
}

Rational injective_fraction(const SeededFunction& f, const FlatSource& x, const OracleBudget& budget) {
    check_full_enumeration(f, x, budget, "injectivity enumeration");
    const std::size_t t = f.seed_bits();
    std::unordered_map<std::string, std::uint32_t> images;
    BitString out(f.output_bits());
    std::uint64_t pairs = 0;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << t); ++y) {
        const BitString seed = from_index(y, t);
        for (std::uint64_t v : x.support()) {
            f.apply_into(from_index(v, x.input_bits()), seed, out);
            const auto words = out.words();
            ++images[std::string(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(std::uint64_t))];
            ++pairs;
        }
    }
    std::uint64_t unique = 0;
    for (const auto& [image, count] : images) {
        if (count == 1) ++unique;
    }
    return Rational(BigInt(unique), BigInt(pairs));
}

std::vector<FlatComponent> flat_decomposition(const FiniteDistribution& d, std::size_t kappa) {
    const std::size_t size = std::size_t{1} << kappa;
    if (d.weights().size() < size) throw std::invalid_argument("support smaller than 2^kappa");
    std::vector<std::pair<std::uint64_t, Rational>> mass;
    for (const auto& [o, w] : d.weights()) mass.emplace_back(o, d.probability(o));
    Rational remaining = 1;
    const Rational cap_scale(1, size);
    for (const auto& [o, p] : mass) {
        if (p > cap_scale) throw std::invalid_argument("distribution has min-entropy below kappa");
    }
    std::vector<FlatComponent> parts;
    while (remaining > 0) {
        std::stable_sort(mass.begin(), mass.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        const Rational level = remaining * cap_scale;
        Rational step = mass[size - 1].second;
        if (mass.size() > size) step = std::min(step, Rational(level - mass[size].second));
        FlatComponent part{step * size, {}};
        for (std::size_t i = 0; i < size; ++i) {
            mass[i].second -= step;
            part.support.push_back(mass[i].first);
        }
        std::sort(part.support.begin(), part.support.end());
        parts.push_back(std::move(part));
        remaining -= step * size;
    }
    return parts;
}

bool LemmaReport::all_pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
}

LemmaReport lemma_suite(const JointTable& j, std::size_t split,
                        const std::optional<SeededFunction>& extractor) {
    const std::size_t n = j.input_bits();
    const std::size_t symbols = j.side_symbols();
    if (split > n) throw std::invalid_argument("split exceeds the source length");
    const Rational guess = guessing_probability(j);
    const Rational total(BigInt(j.total()));
    LemmaReport report;
    auto add = [&](std::string name, Rational lhs, Rational rhs) {
        const bool pass = lhs <= rhs;
        report.checks.push_back({std::move(name), std::move(lhs), std::move(rhs), pass});
    };

    {  // cutting the last `split` bits
        const std::size_t kept = n - split;
        const std::uint64_t mask = (std::uint64_t{1} << kept) - 1;
        BigInt sum = 0;
        for (std::size_t s = 0; s < symbols; ++s) {
            std::vector<std::uint64_t> prefix_weight(std::size_t{1} << kept, 0);
            for (std::uint64_t x = 0; x < j.rows(); ++x) prefix_weight[x & mask] += j.weight(x, s);
            sum += *std::max_element(prefix_weight.begin(), prefix_weight.end());
        }
        add("cutting", Rational(sum) / total, pow2(static_cast<long long>(split)) * guess);
    }

    {  // revealing the first `split` bits
        const std::uint64_t prefixes = std::uint64_t{1} << split;
        const std::uint64_t suffixes = std::uint64_t{1} << (n - split);
        std::vector<std::uint64_t> prefix_mass(prefixes, 0);
        std::vector<std::uint64_t> prefix_guess(prefixes, 0);  // sum_s max_x2 w(x1 x2, s)
        for (std::uint64_t x1 = 0; x1 < prefixes; ++x1) {
            for (std::size_t s = 0; s < symbols; ++s) {
                std::uint64_t best = 0;
                for (std::uint64_t x2 = 0; x2 < suffixes; ++x2) {
                    const std::uint64_t w = j.weight(x1 | (x2 << split), s);
                    prefix_mass[x1] += w;
                    best = std::max(best, w);
                }
                prefix_guess[x1] += best;
            }
        }
        for (std::size_t r = 0; r <= n - split; ++r) {
            BigInt bad = 0;
            for (std::uint64_t x1 = 0; x1 < prefixes; ++x1) {
                if (prefix_mass[x1] == 0) continue;
                if ((BigInt(prefix_guess[x1]) << r) >= BigInt(prefix_mass[x1])) bad += prefix_mass[x1];
            }
            add("prefix r=" + std::to_string(r), Rational(bad) / total,
                pow2(static_cast<long long>(split + r)) * guess);
        }
    }

    {  // storage bound
        std::size_t b = 0;
        while ((std::size_t{1} << b) < symbols) ++b;
        std::uint64_t heaviest = 0;
        for (std::uint64_t x = 0; x < j.rows(); ++x) heaviest = std::max(heaviest, j.row_weight(x));
        add("storage", guess, pow2(static_cast<long long>(b)) * Rational(BigInt(heaviest)) / total);
    }

    {  // convexity over the flat decomposition of the x-marginal
        const SeededFunction e = extractor ? *extractor : as_seeded_function(make_toeplitz(n, std::min<std::size_t>(2, n)));
        const FiniteDistribution marginal = j.x_marginal();
        std::uint64_t heaviest = 0;
        for (const auto& [o, w] : marginal.weights()) heaviest = std::max(heaviest, w);
        std::size_t kappa = 0;
        while ((BigInt(heaviest) << (kappa + 1)) <= marginal.total()) ++kappa;
        Rational mixed_bound = 0;
        for (const FlatComponent& part : flat_decomposition(marginal, kappa)) {
            BigInt common = 1;
            for (std::uint64_t x : part.support) common = boost::multiprecision::lcm(common, BigInt(j.row_weight(x)));
            if (common > UINT64_MAX / 4096) throw std::invalid_argument("row weights too irregular for exact convexity check");
            const std::uint64_t scale = common.convert_to<std::uint64_t>();
            std::vector<std::uint64_t> w(j.rows() * symbols, 0);
            for (std::uint64_t x : part.support) {
                const std::uint64_t row = j.row_weight(x);
                for (std::size_t s = 0; s < symbols; ++s) w[x * symbols + s] = j.weight(x, s) * (scale / row);
            }
            mixed_bound += part.coefficient * extractor_distance(e, JointTable(n, symbols, std::move(w)));
        }
        add("convexity", extractor_distance(e, j), mixed_bound);
    }
    return report;
}

}  // namespace xforge
