#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "xforge/bitstring.hpp"

namespace xforge {

// Type-erased deterministic map {0,1}^n x {0,1}^t -> {0,1}^m. Extractors,
// condensers and their compositions are all handled through this type.
class SeededFunction {
 public:
    using Apply = std::function<void(const BitString& x, const BitString& y, BitString& out)>;

    SeededFunction(std::size_t input_bits, std::size_t seed_bits, std::size_t output_bits,
                   Apply apply, std::vector<std::uint32_t> seed_support = {});

    std::size_t input_bits() const noexcept { return n_; }
    std::size_t seed_bits() const noexcept { return t_; }
    std::size_t output_bits() const noexcept { return m_; }

    // Seed positions the output can depend on, ascending. Empty means any.
    const std::vector<std::uint32_t>& seed_support() const noexcept { return support_; }

    // Length-checked evaluation.
    BitString operator()(const BitString& x, const BitString& y) const;
    // `out` must already have output_bits() bits; lengths are not rechecked.
    void apply_into(const BitString& x, const BitString& y, BitString& out) const {
        apply_(x, y, out);
    }

 private:
    std::size_t n_, t_, m_;
    Apply apply_;
    std::vector<std::uint32_t> support_;
};

}  // namespace xforge

namespace xforge {

// Ignores its inputs and always returns `value`; used as a calibration stub.
struct ConstantSpec {
    std::size_t n = 1;
    std::size_t t = 1;
    BitString value;

    friend bool operator==(const ConstantSpec&, const ConstantSpec&) = default;
};

SeededFunction as_seeded_function(const ConstantSpec& spec);

}  // namespace xforge
