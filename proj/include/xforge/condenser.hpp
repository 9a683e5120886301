#pragma once

#include <cstddef>
#include <cstdint>

#include "xforge/bitstring.hpp"
#include "xforge/poly.hpp"
#include "xforge/seeded.hpp"

namespace xforge {

// Multi-power polynomial evaluation condenser over GF(2^w). The source is read
// as a polynomial f of degree < message_symbols (zero-padded to
// message_symbols * w bits); with f_0 = f and f_i = f_{i-1}^power mod modulus,
// output symbol i is f_i(y) for the w-bit seed y.
struct CondenserSpec {
    std::size_t n = 0;  // source bits
    std::size_t k = 0;  // entropy the spec is built for
    double epsilon = 0;
    double alpha = 0;   // expansion slack: output bits <= (1 + alpha) k + w
    unsigned field_width = 1;
    std::size_t message_symbols = 1;
    std::uint64_t power = 2;
    std::size_t output_symbols = 1;
    FieldPoly modulus{1};

    std::size_t seed_bits() const noexcept { return field_width; }
    std::size_t output_bits() const noexcept { return output_symbols * field_width; }
    std::size_t strong_output_bits() const noexcept { return output_bits() + seed_bits(); }

    friend bool operator==(const CondenserSpec&, const CondenserSpec&) = default;
};

// Parameters chosen by
//   h  = 2^ceil(log2(2 n~ / epsilon)),
//   w  = smallest width with w >= ceil(log2(n~ h^2 / epsilon)), n~ = ceil(n / w),
//   m' = min(n~, ceil((k + 2 log2(1/epsilon)) / w) + 1),
// and the modulus is first_monic_irreducible(w, n~). Throws
// InfeasibleParameters if m' w > (1 + alpha) k + w or no w <= 32 works.
CondenserSpec build_condenser(std::size_t n, std::size_t k, double epsilon, double alpha);

// Explicit parameters; checks every invariant and throws std::invalid_argument.
CondenserSpec make_condenser(std::size_t n, std::size_t k, double epsilon, double alpha,
                             unsigned field_width, std::uint64_t power,
                             std::size_t output_symbols, FieldPoly modulus);
void validate(const CondenserSpec& spec);

// First monic irreducible polynomial of the given degree over GF(2^w) in
// lexicographic order of the coefficient vector (c_0, c_1, ..., c_{d-1}).
FieldPoly first_monic_irreducible(unsigned field_width, std::size_t degree);

BitString guv_condense(const CondenserSpec& spec, const BitString& x, const BitString& y);
// C(x, y) followed by y.
BitString strong_form(const CondenserSpec& spec, const BitString& x, const BitString& y);

SeededFunction as_seeded_function(const CondenserSpec& spec);
SeededFunction as_strong_seeded_function(const CondenserSpec& spec);

}  // namespace xforge
