#include "xforge/field.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace xforge {

namespace gf2x {

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept {
    std::uint64_t product = 0;
    const std::uint64_t wide = a;
    for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
        product ^= wide << std::countr_zero(rest);
    }
    return product;
}

int degree(std::uint64_t p) noexcept { return static_cast<int>(std::bit_width(p)) - 1; }

std::uint64_t mod(std::uint64_t p, std::uint64_t m) noexcept {
    const int dm = degree(m);
    for (int d = degree(p); d >= dm; d = degree(p)) p ^= m << (d - dm);
    return p;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    // operands are reduced, so both fit in 32 bits when deg(m) <= 32
    return mod(clmul(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)), m);
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(std::uint64_t p) {
    const int d = degree(p);
    if (d > static_cast<int>(kMaxFieldWidth)) {
        throw std::out_of_range("gf2x::is_irreducible: degree above 32");
    }
    if (d < 1) return false;
    constexpr std::uint64_t z = 2;
    std::uint64_t power = z;  // z^(2^i) mod p
    for (int i = 1; i <= d / 2; ++i) {
        power = mulmod(power, power, p);
        if (gcd(p, power ^ z) != 1) return false;
    }
    return true;
}

}  // namespace gf2x

namespace {

std::uint64_t search_modulus(unsigned w) {
    const std::uint64_t first = (std::uint64_t{1} << w) | 1;
    const std::uint64_t last = (std::uint64_t{2} << w) - 1;
    for (std::uint64_t candidate = first; candidate <= last; candidate += 2) {
        if (gf2x::is_irreducible(candidate)) return candidate;
    }
    // unreachable: irreducible polynomials exist in every degree
    throw std::logic_error("no irreducible polynomial of degree " + std::to_string(w));
}

const std::array<std::uint64_t, kMaxFieldWidth + 1>& modulus_table() {
    static const auto table = [] {
        std::array<std::uint64_t, kMaxFieldWidth + 1> t{};
        for (unsigned w = 1; w <= kMaxFieldWidth; ++w) t[w] = search_modulus(w);
        return t;
    }();
    return table;
}

}  // namespace

std::uint64_t field_modulus_bits(unsigned w) {
    if (w < 1 || w > kMaxFieldWidth) {
        throw std::out_of_range("field width " + std::to_string(w) + " outside [1, 32]");
    }
    return modulus_table()[w];
}

Field::Field(unsigned width)
    : width_(width),
      mask_(width >= 32 ? 0xFFFFFFFFu : (std::uint32_t{1} << width) - 1),
      modulus_(field_modulus_bits(width)) {}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t p = gf2x::clmul(a, b);
    const int w = static_cast<int>(width_);
    for (int d = gf2x::degree(p); d >= w; d = gf2x::degree(p)) p ^= modulus_ << (d - w);
    return static_cast<std::uint32_t>(p);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint32_t result = 1;
    while (e != 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("GF(2^" + std::to_string(width_) + "): inverse of zero");
    // extended Euclid on GF(2)[z]: invariant s_i * a == r_i (mod modulus)
    std::uint64_t r0 = modulus_, r1 = a;
    std::uint64_t s0 = 0, s1 = 1;
    while (r1 != 1) {
        std::uint64_t q = 0;
        const int d1 = gf2x::degree(r1);
        for (int d = gf2x::degree(r0); d >= d1; d = gf2x::degree(r0)) {
            q |= std::uint64_t{1} << (d - d1);
            r0 ^= r1 << (d - d1);
        }
        std::uint64_t s = s0;
        for (std::uint64_t bits = q; bits != 0; bits &= bits - 1) s ^= s1 << std::countr_zero(bits);
        s0 = s1;
        s1 = gf2x::mod(s, modulus_);
        std::swap(r0, r1);
    }
    return static_cast<std::uint32_t>(s1);
}

FieldElement::FieldElement(std::uint32_t value, unsigned width) : value_(value), width_(width) {
    if (width < 1 || width > kMaxFieldWidth) {
        throw std::out_of_range("field width " + std::to_string(width) + " outside [1, 32]");
    }
    if (width < 32 && (value >> width) != 0) {
        throw std::invalid_argument("field element " + std::to_string(value) +
                                    " does not fit in GF(2^" + std::to_string(width) + ")");
    }
}

namespace {

void require_same_width(const FieldElement& a, const FieldElement& b) {
    if (a.width() != b.width()) {
        throw std::invalid_argument("field width mismatch: GF(2^" + std::to_string(a.width()) +
                                    ") vs GF(2^" + std::to_string(b.width()) + ")");
    }
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_width(a, b);
    return {a.value() ^ b.value(), a.width()};
}

FieldElement gf_mul(const FieldElement& a, const FieldElement& b) {
    require_same_width(a, b);
    return {Field(a.width()).mul(a.value(), b.value()), a.width()};
}

FieldElement gf_inv(const FieldElement& a) { return {Field(a.width()).inv(a.value()), a.width()}; }

FieldElement gf_pow(const FieldElement& a, std::uint64_t e) {
    return {Field(a.width()).pow(a.value(), e), a.width()};
}

}  // namespace xforge
