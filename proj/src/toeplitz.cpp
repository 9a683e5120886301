#include "xforge/toeplitz.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace xforge {

namespace {

// Row i of T dotted with x equals the parity of seed[i .. i+n) AND reverse(x),
// so each output bit is a windowed word-wise inner product.
void multiply_into(std::size_t n, std::size_t m, bool offset, const BitString& x,
                   const BitString& seed, BitString& out) {
    BitString reversed(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j]) reversed.set(n - 1 - j, true);
    }
    const auto r = reversed.words();
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < r.size(); ++w) {
            acc ^= seed.word_at(i + 64 * w, 64) & r[w];
        }
        bool bit = (std::popcount(acc) & 1) != 0;
        if (offset) bit ^= seed[n + m - 1 + i];
        out.set(i, bit);
    }
}

}  // namespace

ToeplitzSpec make_toeplitz(std::size_t n, std::size_t m, bool offset) {
    ToeplitzSpec spec{n, m, offset};
    validate(spec);
    return spec;
}

void validate(const ToeplitzSpec& spec) {
    if (spec.n < 1 || spec.m < 1 || spec.m > spec.n) {
        throw std::invalid_argument("Toeplitz hashing needs 1 <= m <= n (got n=" +
                                    std::to_string(spec.n) + ", m=" + std::to_string(spec.m) + ")");
    }
}

BitString toeplitz_extract(const ToeplitzSpec& spec, const BitString& x, const BitString& seed) {
    validate(spec);
    if (x.size() != spec.n) {
        throw std::invalid_argument("source has " + std::to_string(x.size()) + " bits, expected " +
                                    std::to_string(spec.n));
    }
    if (seed.size() != spec.seed_bits()) {
        throw std::invalid_argument("seed has " + std::to_string(seed.size()) +
                                    " bits, expected " + std::to_string(spec.seed_bits()));
    }
    BitString out(spec.m);
    multiply_into(spec.n, spec.m, spec.offset, x, seed, out);
    return out;
}

SeededFunction as_seeded_function(const ToeplitzSpec& spec) {
    validate(spec);
    const std::size_t n = spec.n;
    const std::size_t m = spec.m;
    const bool offset = spec.offset;
    return SeededFunction(n, spec.seed_bits(), m,
                          [n, m, offset](const BitString& x, const BitString& y, BitString& out) {
                              multiply_into(n, m, offset, x, y, out);
                          });
}

}  // namespace xforge
