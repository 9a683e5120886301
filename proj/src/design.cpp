#include "xforge/design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "xforge/errors.hpp"
#include "xforge/field.hpp"
#include "xforge/poly.hpp"
#include "xforge/rng.hpp"

namespace xforge {

using boost::multiprecision::uint128_t;

namespace {

constexpr std::uint64_t kGreedyKey = 0x77656b2d64657369ULL;  // "wek-desi"

struct Stats {
    std::size_t max_overlap = 0;
    uint128_t max_weak_sum = 0;
};

// Caller guarantees every index is < t.
Stats overlap_stats(const Design& d) {
    const std::size_t words = (d.universe_size + 63) / 64;
    std::vector<std::uint64_t> bits(d.sets.size() * words, 0);
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        for (std::uint32_t e : d.sets[i]) bits[i * words + e / 64] |= std::uint64_t{1} << (e % 64);
    }
    Stats s;
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        uint128_t sum = 0;
        for (std::size_t j = 0; j < i; ++j) {
            std::size_t inter = 0;
            for (std::size_t w = 0; w < words; ++w) {
                inter += static_cast<std::size_t>(std::popcount(bits[i * words + w] & bits[j * words + w]));
            }
            s.max_overlap = std::max(s.max_overlap, inter);
            sum += uint128_t(1) << inter;
        }
        s.max_weak_sum = std::max(s.max_weak_sum, sum);
    }
    return s;
}

double weak_ratio(const uint128_t& sum, std::size_t m) {
    if (m <= 1) return 0.0;
    return sum.convert_to<double>() / static_cast<double>(m - 1);
}

void certify(Design& d) {
    const Stats s = overlap_stats(d);
    d.certified_overlap = d.kind == DesignKind::standard
                              ? static_cast<double>(s.max_overlap)
                              : weak_ratio(s.max_weak_sum, d.sets.size());
}

}  // namespace

PolyDesignShape poly_design_shape(std::size_t m, std::size_t l) {
    if (m < 1 || l < 1) throw std::invalid_argument("poly design needs m >= 1 and l >= 1");
    const std::size_t q = std::bit_ceil(std::max<std::size_t>(l, 2));
    const unsigned w = static_cast<unsigned>(std::countr_zero(q));
    if (w > kMaxFieldWidth / 2) {
        throw InfeasibleParameters("poly design: set size " + std::to_string(l) +
                                   " needs a field beyond GF(2^16)");
    }
    std::size_t c = 1;
    for (std::size_t reach = q; reach < m; reach *= q) ++c;
    return {w, q, c};
}

Design build_poly_design(std::size_t m, std::size_t l) {
    const PolyDesignShape shape = poly_design_shape(m, l);
    const Field field(shape.field_width);
    Design d;
    d.universe_size = shape.field_size * shape.field_size;
    d.set_size = l;
    d.kind = DesignKind::standard;
    d.sets.reserve(m);
    std::vector<std::uint32_t> coeffs(shape.degree_bound);
    for (std::size_t index = 0; index < m; ++index) {
        std::size_t digits = index;
        for (auto& c : coeffs) {
            c = static_cast<std::uint32_t>(digits % shape.field_size);
            digits /= shape.field_size;
        }
        std::vector<std::uint32_t> set(l);
        for (std::size_t b = 0; b < l; ++b) {
            const std::uint32_t value = eval_raw(field, coeffs, static_cast<std::uint32_t>(b));
            set[b] = static_cast<std::uint32_t>(b * shape.field_size + value);
        }
        d.sets.push_back(std::move(set));
    }
    certify(d);
    return d;
}

namespace {

// One greedy pass over universe [t]; false if some set misses the bound.
bool greedy_pass(std::size_t m, std::size_t l, double bound, std::size_t t,
                 std::vector<std::vector<std::uint32_t>>& sets) {
    const CounterRng root = CounterRng(kGreedyKey).split(t);
    std::vector<std::vector<std::uint32_t>> containing(t);
    std::vector<double> increase(t);
    std::vector<unsigned> overlap;
    std::vector<char> chosen(t);
    std::vector<std::uint32_t> order(t);
    sets.clear();
    for (std::size_t i = 0; i < m; ++i) {
        bool accepted = false;
        for (unsigned trial = 0; trial < kWeakDesignTrialBudget && !accepted; ++trial) {
            CounterRng rng = root.split(i).split(trial);
            std::iota(order.begin(), order.end(), 0U);
            for (std::size_t k = t; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);

            overlap.assign(i, 0);
            std::fill(chosen.begin(), chosen.end(), 0);
            // increase[u] = sum over earlier sets S_j containing u of 2^overlap_j
            for (std::size_t u = 0; u < t; ++u) increase[u] = static_cast<double>(containing[u].size());

            std::vector<std::uint32_t> candidate;
            candidate.reserve(l);
            for (std::size_t step = 0; step < l; ++step) {
                std::uint32_t best = 0;
                double best_increase = std::numeric_limits<double>::infinity();
                for (std::uint32_t u : order) {
                    if (chosen[u] || increase[u] >= best_increase) continue;
                    best = u;
                    best_increase = increase[u];
                    if (best_increase == 0) break;
                }
                chosen[best] = 1;
                candidate.push_back(best);
                for (std::uint32_t j : containing[best]) {
                    const double term = std::ldexp(1.0, static_cast<int>(overlap[j]));
                    ++overlap[j];
                    for (std::uint32_t v : sets[j]) increase[v] += term;
                }
            }
            double sum = 0;
            for (unsigned c : overlap) sum += std::ldexp(1.0, static_cast<int>(c));
            if (sum <= bound) {
                std::sort(candidate.begin(), candidate.end());
                for (std::uint32_t u : candidate) containing[u].push_back(static_cast<std::uint32_t>(i));
                sets.push_back(std::move(candidate));
                accepted = true;
            }
        }
        if (!accepted) return false;
    }
    return true;
}

}  // namespace

Design build_greedy_weak_design(std::size_t m, std::size_t l, double rho, std::size_t t_initial) {
    if (!(rho >= 1.0)) throw std::invalid_argument("weak design needs rho >= 1");
    if (m < 1 || l < 1) throw std::invalid_argument("weak design needs m >= 1 and l >= 1");
    const double bound = rho * static_cast<double>(m - 1);
    std::size_t t = std::max(t_initial, l);
    for (unsigned doubling = 0; doubling <= kWeakDesignMaxDoublings; ++doubling, t *= 2) {
        if (t > std::numeric_limits<std::uint32_t>::max()) break;
        Design d;
        if (!greedy_pass(m, l, bound, t, d.sets)) continue;
        d.universe_size = t;
        d.set_size = l;
        d.kind = DesignKind::weak;
        certify(d);
        // the greedy sums are floating point; the exact recount decides
        if (satisfies_weak_bound(d, rho)) return d;
    }
    throw InfeasibleParameters("weak design: no (m=" + std::to_string(m) + ", l=" +
                               std::to_string(l) + ", rho=" + std::to_string(rho) +
                               ") design after " + std::to_string(kWeakDesignMaxDoublings) +
                               " universe doublings");
}

DesignReport verify_design(const Design& d) {
    DesignReport r;
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        const auto& s = d.sets[i];
        if (s.size() != d.set_size) {
            r.reason = "set " + std::to_string(i) + " has " + std::to_string(s.size()) +
                       " elements, expected " + std::to_string(d.set_size);
            return r;
        }
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] >= d.universe_size) {
                r.reason = "set " + std::to_string(i) + " contains " + std::to_string(s[k]) +
                           " outside universe " + std::to_string(d.universe_size);
                return r;
            }
            if (k > 0 && s[k] <= s[k - 1]) {
                r.reason = "set " + std::to_string(i) + " is not strictly ascending";
                return r;
            }
        }
    }
    const Stats s = overlap_stats(d);
    r.max_overlap = s.max_overlap;
    r.max_weak_sum = s.max_weak_sum;
    r.max_weak_sum_ratio = weak_ratio(s.max_weak_sum, d.sets.size());
    const double recomputed =
        d.kind == DesignKind::standard ? static_cast<double>(s.max_overlap) : r.max_weak_sum_ratio;
    if (recomputed != d.certified_overlap) {
        r.reason = "certified overlap " + std::to_string(d.certified_overlap) +
                   " does not match recomputed " + std::to_string(recomputed);
        return r;
    }
    r.valid = true;
    return r;
}

bool satisfies_weak_bound(const Design& d, double rho) {
    const Stats s = overlap_stats(d);
    if (d.sets.size() <= 1) return s.max_weak_sum == 0;
    const long double limit = static_cast<long double>(rho) * static_cast<long double>(d.sets.size() - 1);
    return s.max_weak_sum.convert_to<long double>() <= limit;
}

std::uint64_t restrict_seed(const BitString& y, std::span<const std::uint32_t> set) {
    if (set.size() > 64) throw std::out_of_range("restrict_seed: set larger than 64 positions");
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (y.at(set[k])) index |= std::uint64_t{1} << k;
    }
    return index;
}

const char* to_string(DesignKind kind) noexcept {
    return kind == DesignKind::standard ? "standard" : "weak";
}

DesignKind design_kind_from_string(const std::string& s) {
    if (s == "standard") return DesignKind::standard;
    if (s == "weak") return DesignKind::weak;
    throw std::invalid_argument("unknown design kind '" + s + "'");
}

}  // namespace xforge
