#include "xforge/seeded.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace xforge {

SeededFunction::SeededFunction(std::size_t input_bits, std::size_t seed_bits,
                               std::size_t output_bits, Apply apply,
                               std::vector<std::uint32_t> seed_support)
    : n_(input_bits), t_(seed_bits), m_(output_bits), apply_(std::move(apply)),
      support_(std::move(seed_support)) {
    for (std::uint32_t p : support_) {
        if (p >= t_) throw std::invalid_argument("seed support position outside the seed");
    }
}

BitString SeededFunction::operator()(const BitString& x, const BitString& y) const {
    if (x.size() != n_) {
        throw std::invalid_argument("input has " + std::to_string(x.size()) + " bits, expected " +
                                    std::to_string(n_));
    }
    if (y.size() != t_) {
        throw std::invalid_argument("seed has " + std::to_string(y.size()) + " bits, expected " +
                                    std::to_string(t_));
    }
    BitString out(m_);
    apply_(x, y, out);
    return out;
}

SeededFunction as_seeded_function(const ConstantSpec& spec) {
    if (spec.value.empty()) throw std::invalid_argument("constant stub needs at least one output bit");
    const BitString value = spec.value;
    return SeededFunction(spec.n, spec.t, value.size(),
                          [value](const BitString&, const BitString&, BitString& out) { out = value; });
}

}  // namespace xforge
