#pragma once

#include <cstddef>
#include <string>

#include "xforge/bitstring.hpp"
#include "xforge/code.hpp"
#include "xforge/design.hpp"
#include "xforge/seeded.hpp"

namespace xforge {

// polylog_seed: standard polynomial design, seed length q^2 (q >= 2w).
// log_seed: greedy weak design with rho = 2 starting from t = 4 * 2w.
// custom: caller-supplied design and code.
enum class TrevisanPreset { polylog_seed, log_seed, custom };

const char* to_string(TrevisanPreset p) noexcept;
TrevisanPreset trevisan_preset_from_string(const std::string& s);

inline constexpr double kLogSeedDesignRho = 2.0;

// Output bit i is bit restrict_seed(y, S_i) of the RS∘Hadamard encoding of x,
// with x zero-padded to message_symbols * w bits.
struct ExtractorSpec {
    std::size_t n = 0;  // source bits
    std::size_t t = 0;  // seed bits
    std::size_t m = 0;  // output bits
    Design design;
    CodeSpec code;
    TrevisanPreset preset = TrevisanPreset::custom;
    double epsilon_target = 0;

    friend bool operator==(const ExtractorSpec&, const ExtractorSpec&) = default;
};

// Smallest w >= 1 with 2^w >= ceil(n/w) (message fits the field) and
// 2^w >= m/epsilon (the zero-mask codeword positions, a 2^-w fraction, cost at
// most epsilon/2 over all m outputs). Throws InfeasibleParameters past w = 31.
unsigned trevisan_field_width(std::size_t n, std::size_t m, double epsilon);

ExtractorSpec build_trevisan(TrevisanPreset preset, std::size_t n, std::size_t m, double epsilon);
// Checks every structural invariant; throws std::invalid_argument.
ExtractorSpec make_trevisan(std::size_t n, std::size_t m, double epsilon, Design design,
                            CodeSpec code);
void validate(const ExtractorSpec& spec);

BitString trevisan_extract(const ExtractorSpec& spec, const BitString& x, const BitString& y);
SeededFunction as_seeded_function(const ExtractorSpec& spec);

}  // namespace xforge
