#pragma once

#include <cstdint>

namespace xforge {

inline constexpr unsigned kMaxFieldWidth = 32;

// Polynomials over GF(2) packed into a word: bit i is the coefficient of z^i.
namespace gf2x {

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept;
int degree(std::uint64_t p) noexcept;  // -1 for the zero polynomial
std::uint64_t mod(std::uint64_t p, std::uint64_t m) noexcept;
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
// Ben-Or test: irreducible iff gcd(p, z^(2^i) - z) = 1 for i = 1..deg/2.
// Requires deg(p) <= 32.
bool is_irreducible(std::uint64_t p);

}  // namespace gf2x

// Smallest irreducible polynomial of degree w over GF(2) with nonzero constant
// term, compared as a (w+1)-bit integer. Throws std::out_of_range unless
// 1 <= w <= 32.
std::uint64_t field_modulus_bits(unsigned w);

// Arithmetic in GF(2^w) on raw words. Cheap to copy; values handed to the
// member functions must already be reduced (< 2^w).
class Field {
 public:
    explicit Field(unsigned width);

    unsigned width() const noexcept { return width_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint32_t mask() const noexcept { return mask_; }
    std::uint64_t order() const noexcept { return std::uint64_t{1} << width_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t sqr(std::uint32_t a) const noexcept { return mul(a, a); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    // Throws std::domain_error for a == 0.
    std::uint32_t inv(std::uint32_t a) const;

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.width_ == b.width_; }

 private:
    unsigned width_;
    std::uint32_t mask_;
    std::uint64_t modulus_;
};

// An element of GF(2^w) that remembers its width. Mixing widths throws
// std::invalid_argument.
class FieldElement {
 public:
    FieldElement(std::uint32_t value, unsigned width);

    static FieldElement zero(unsigned width) { return {0, width}; }
    static FieldElement one(unsigned width) { return {1, width}; }

    std::uint32_t value() const noexcept { return value_; }
    unsigned width() const noexcept { return width_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
    std::uint32_t value_;
    unsigned width_;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement gf_mul(const FieldElement& a, const FieldElement& b);
FieldElement gf_inv(const FieldElement& a);
FieldElement gf_pow(const FieldElement& a, std::uint64_t e);
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return gf_mul(a, b); }

}  // namespace xforge
