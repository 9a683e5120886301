#include "xforge/code.hpp"

#include <stdexcept>
#include <string>

namespace xforge {

void validate(const CodeSpec& spec) {
    if (spec.field_width < 1 || spec.field_width > kMaxCodeFieldWidth) {
        throw std::invalid_argument("code field width " + std::to_string(spec.field_width) +
                                    " outside [1, 31]");
    }
    if (spec.message_symbols < 1 ||
        spec.message_symbols > (std::uint64_t{1} << spec.field_width)) {
        throw std::invalid_argument("code with " + std::to_string(spec.message_symbols) +
                                    " symbols exceeds field size 2^" +
                                    std::to_string(spec.field_width));
    }
}

CodeSpec make_code_spec(unsigned field_width, std::size_t message_symbols) {
    CodeSpec spec{field_width, message_symbols};
    validate(spec);
    return spec;
}

std::vector<std::uint32_t> message_symbols(const CodeSpec& spec, const BitString& x) {
    if (x.size() != spec.message_bits()) {
        throw std::invalid_argument("code message has " + std::to_string(x.size()) +
                                    " bits, expected " + std::to_string(spec.message_bits()));
    }
    std::vector<std::uint32_t> symbols(spec.message_symbols);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        symbols[i] = static_cast<std::uint32_t>(x.word_at(i * spec.field_width, spec.field_width));
    }
    return symbols;
}

bool encode_bit(const CodeSpec& spec, const BitString& x, std::uint64_t index) {
    validate(spec);
    if (index >= spec.codeword_length()) {
        throw std::out_of_range("codeword index " + std::to_string(index) + " outside length " +
                                std::to_string(spec.codeword_length()));
    }
    const auto symbols = message_symbols(spec, x);
    return encode_bit_symbols(Field(spec.field_width), symbols, index);
}

Rational code_distance(const CodeSpec& spec) {
    validate(spec);
    const BigInt q = BigInt(1) << spec.field_width;
    return Rational(q - BigInt(spec.message_symbols) + 1, 2 * q);
}

}  // namespace xforge
