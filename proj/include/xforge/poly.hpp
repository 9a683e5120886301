#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "xforge/field.hpp"

namespace xforge {

// Polynomial over GF(2^w), lowest-degree coefficient first. The coefficient
// vector is kept trimmed so the leading stored coefficient is never zero.
class FieldPoly {
 public:
    explicit FieldPoly(unsigned width);
    FieldPoly(unsigned width, std::vector<std::uint32_t> coefficients);

    static FieldPoly constant(const FieldElement& c);
    static FieldPoly monomial(unsigned width, std::size_t degree, std::uint32_t coefficient = 1);

    unsigned width() const noexcept { return field_.width(); }
    const Field& field() const noexcept { return field_; }
    // -1 stands for the degree of the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    FieldElement coefficient(std::size_t i) const;
    std::span<const std::uint32_t> coefficients() const noexcept { return coeffs_; }

    FieldElement operator()(const FieldElement& at) const;

    friend bool operator==(const FieldPoly& a, const FieldPoly& b) noexcept {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

 private:
    void trim() noexcept;

    Field field_;
    std::vector<std::uint32_t> coeffs_;
};

// Horner evaluation on raw words; `coeffs` lowest degree first.
std::uint32_t eval_raw(const Field& field, std::span<const std::uint32_t> coeffs,
                       std::uint32_t at) noexcept;

FieldElement poly_eval(const FieldPoly& p, const FieldElement& at);
FieldPoly operator+(const FieldPoly& a, const FieldPoly& b);
FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);
// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<FieldPoly, FieldPoly> poly_divmod(const FieldPoly& a, const FieldPoly& b);
FieldPoly operator%(const FieldPoly& a, const FieldPoly& b);
// Monic greatest common divisor (zero only if both inputs are zero).
FieldPoly poly_gcd(FieldPoly a, FieldPoly b);

// Ben-Or test over GF(q), q = 2^w: p of degree d is irreducible iff
// gcd(p, Z^(q^i) - Z) = 1 for every i = 1..d/2.
bool is_irreducible(const FieldPoly& p);

// A polynomial that has passed the irreducibility test once, so arithmetic
// modulo it can skip the check.
class IrreducibleModulus {
 public:
    // Throws std::invalid_argument if p is zero, constant or reducible.
    explicit IrreducibleModulus(FieldPoly p);

    const FieldPoly& poly() const noexcept { return poly_; }
    int degree() const noexcept { return poly_.degree(); }

    FieldPoly reduce(const FieldPoly& a) const;
    FieldPoly mul(const FieldPoly& a, const FieldPoly& b) const;
    FieldPoly sqr(const FieldPoly& a) const;

 private:
    FieldPoly poly_;
    std::uint32_t lead_inverse_;
};

// f^e mod E by square-and-multiply. The first overload runs the
// irreducibility test on E and throws std::invalid_argument if it fails.
FieldPoly poly_pow_mod(const FieldPoly& f, std::uint64_t e, const FieldPoly& modulus);
FieldPoly poly_pow_mod(const FieldPoly& f, std::uint64_t e, const IrreducibleModulus& modulus);

// The modulus defining GF(2^w), as a polynomial with GF(2) coefficients.
FieldPoly field_modulus(unsigned w);

}  // namespace xforge
