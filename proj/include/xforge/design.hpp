#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "xforge/bitstring.hpp"

namespace xforge {

enum class DesignKind { standard, weak };

// Family of m subsets of [t], each of size l, listed in ascending order.
// `certified_overlap` is the maximum pairwise intersection for standard
// designs and max_i sum_{j<i} 2^|S_i ∩ S_j| / (m-1) for weak ones.
struct Design {
    std::size_t universe_size = 0;
    std::size_t set_size = 0;
    DesignKind kind = DesignKind::standard;
    std::vector<std::vector<std::uint32_t>> sets;
    double certified_overlap = 0;

    std::size_t set_count() const noexcept { return sets.size(); }
    friend bool operator==(const Design&, const Design&) = default;
};

struct DesignReport {
    std::size_t max_overlap = 0;
    boost::multiprecision::uint128_t max_weak_sum = 0;  // max_i sum_{j<i} 2^|S_i ∩ S_j|
    double max_weak_sum_ratio = 0;                      // max_weak_sum / (m-1), 0 when m = 1
    bool valid = false;
    std::string reason;
};

// Field size q (a power of two, at least max(l, 2)) and degree bound c with
// q^c >= m used by build_poly_design.
struct PolyDesignShape {
    unsigned field_width;
    std::size_t field_size;
    std::size_t degree_bound;
};
PolyDesignShape poly_design_shape(std::size_t m, std::size_t l);

// Set p (p = 0..m-1, read as base-q digits of a polynomial of degree < c) is
// {b*q + p(b) : b = 0..l-1} over the universe [q^2]; two sets share at most
// c-1 points.
Design build_poly_design(std::size_t m, std::size_t l);

// Greedy weak design over [t], t starting at max(t_initial, l) and doubling
// whenever some set cannot meet sum_{j<i} 2^|S_i ∩ S_j| <= rho*(m-1). Each set
// is grown one element at a time, always adding the element that raises the
// running sum least, ties broken by a counter-based permutation.
Design build_greedy_weak_design(std::size_t m, std::size_t l, double rho, std::size_t t_initial);

inline constexpr unsigned kWeakDesignMaxDoublings = 16;
inline constexpr unsigned kWeakDesignTrialBudget = 4;

// Exhaustive recount of the overlap statistics; never throws on malformed
// input, it reports valid=false with a reason instead.
DesignReport verify_design(const Design& d);

// max_i sum_{j<i} 2^|S_i ∩ S_j| <= rho*(m-1), decided exactly.
bool satisfies_weak_bound(const Design& d, double rho);

// Bits of y at the positions of `set`, in ascending position order, packed
// least-significant first.
std::uint64_t restrict_seed(const BitString& y, std::span<const std::uint32_t> set);

const char* to_string(DesignKind kind) noexcept;
DesignKind design_kind_from_string(const std::string& s);

}  // namespace xforge
