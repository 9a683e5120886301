#pragma once

#include <cstddef>

#include "xforge/bitstring.hpp"
#include "xforge/seeded.hpp"

namespace xforge {

// m x n Toeplitz matrix over GF(2) with T[i][j] = seed[i - j + n - 1]; the
// seed holds the n + m - 1 diagonals. The plain map x -> Tx is universal
// (collision probability 2^-m) but sends 0 to 0 under every seed. With
// `offset` set the seed carries m more bits v and the output is Tx + v, which
// makes the family pairwise independent.
struct ToeplitzSpec {
    std::size_t n = 1;
    std::size_t m = 1;
    bool offset = false;

    std::size_t seed_bits() const noexcept { return n + m - 1 + (offset ? m : 0); }
    friend bool operator==(const ToeplitzSpec&, const ToeplitzSpec&) = default;
};

// Requires 1 <= m <= n.
ToeplitzSpec make_toeplitz(std::size_t n, std::size_t m, bool offset = false);
void validate(const ToeplitzSpec& spec);

BitString toeplitz_extract(const ToeplitzSpec& spec, const BitString& x, const BitString& seed);
SeededFunction as_seeded_function(const ToeplitzSpec& spec);

}  // namespace xforge
