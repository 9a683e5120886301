#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xforge/bitstring.hpp"
#include "xforge/field.hpp"
#include "xforge/poly.hpp"
#include "xforge/rational.hpp"

namespace xforge {

inline constexpr unsigned kMaxCodeFieldWidth = 31;

// Reed-Solomon over GF(2^w) concatenated with the Hadamard code. A message of
// `message_symbols` w-bit symbols is the coefficient list of a polynomial p;
// codeword position (alpha, z) holds <p(alpha), z> over GF(2).
struct CodeSpec {
    unsigned field_width = 1;
    std::size_t message_symbols = 1;

    std::size_t message_bits() const noexcept { return message_symbols * field_width; }
    unsigned index_bits() const noexcept { return 2 * field_width; }
    std::uint64_t codeword_length() const noexcept { return std::uint64_t{1} << index_bits(); }

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

// Validates 1 <= w <= 31 and 1 <= message_symbols <= 2^w.
CodeSpec make_code_spec(unsigned field_width, std::size_t message_symbols);
void validate(const CodeSpec& spec);

// Splits x (exactly message_bits long) into symbols; symbol i is bits
// [i*w, (i+1)*w), least-significant first.
std::vector<std::uint32_t> message_symbols(const CodeSpec& spec, const BitString& x);

bool encode_bit(const CodeSpec& spec, const BitString& x, std::uint64_t index);

// Same as encode_bit on pre-split symbols; no validation.
inline bool encode_bit_symbols(const Field& field, std::span<const std::uint32_t> symbols,
                               std::uint64_t index) noexcept {
    const std::uint32_t alpha = static_cast<std::uint32_t>(index >> field.width());
    const std::uint32_t mask = static_cast<std::uint32_t>(index) & field.mask();
    return (std::popcount(eval_raw(field, symbols, alpha) & mask) & 1) != 0;
}

// Designed relative distance (1 - (n~ - 1)/2^w) / 2.
Rational code_distance(const CodeSpec& spec);

}  // namespace xforge
