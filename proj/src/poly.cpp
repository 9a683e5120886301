#include "xforge/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace xforge {

namespace {

void require_same_field(const FieldPoly& a, const FieldPoly& b) {
    if (a.width() != b.width()) {
        throw std::invalid_argument("polynomial field mismatch: GF(2^" + std::to_string(a.width()) +
                                    ") vs GF(2^" + std::to_string(b.width()) + ")");
    }
}

// In-place remainder of `r` by a polynomial with leading coefficient `lead`
// whose inverse is `lead_inv`.
void reduce_in_place(const Field& f, std::vector<std::uint32_t>& r,
                     std::span<const std::uint32_t> m, std::uint32_t lead_inv) {
    const std::size_t dm = m.size() - 1;
    while (r.size() > dm) {
        const std::uint32_t top = r.back();
        if (top != 0) {
            const std::uint32_t factor = f.mul(top, lead_inv);
            const std::size_t shift = r.size() - 1 - dm;
            for (std::size_t i = 0; i < dm; ++i) {
                if (m[i] != 0) r[shift + i] ^= f.mul(factor, m[i]);
            }
        }
        r.pop_back();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

std::vector<std::uint32_t> mul_raw(const Field& f, std::span<const std::uint32_t> a,
                                   std::span<const std::uint32_t> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= f.mul(a[i], b[j]);
    }
    return out;
}

}  // namespace

FieldPoly::FieldPoly(unsigned width) : field_(width) {}

FieldPoly::FieldPoly(unsigned width, std::vector<std::uint32_t> coefficients)
    : field_(width), coeffs_(std::move(coefficients)) {
    for (std::uint32_t c : coeffs_) {
        if ((c & ~field_.mask()) != 0) {
            throw std::invalid_argument("coefficient " + std::to_string(c) +
                                        " outside GF(2^" + std::to_string(width) + ")");
        }
    }
    trim();
}

FieldPoly FieldPoly::constant(const FieldElement& c) {
    return FieldPoly(c.width(), {c.value()});
}

FieldPoly FieldPoly::monomial(unsigned width, std::size_t degree, std::uint32_t coefficient) {
    std::vector<std::uint32_t> c(degree + 1, 0);
    c[degree] = coefficient;
    return FieldPoly(width, std::move(c));
}

FieldElement FieldPoly::coefficient(std::size_t i) const {
    return {i < coeffs_.size() ? coeffs_[i] : 0, width()};
}

FieldElement FieldPoly::operator()(const FieldElement& at) const { return poly_eval(*this, at); }

void FieldPoly::trim() noexcept {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint32_t eval_raw(const Field& field, std::span<const std::uint32_t> coeffs,
                       std::uint32_t at) noexcept {
    std::uint32_t acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = field.mul(acc, at) ^ *it;
    return acc;
}

FieldElement poly_eval(const FieldPoly& p, const FieldElement& at) {
    if (p.width() != at.width()) {
        throw std::invalid_argument("polynomial over GF(2^" + std::to_string(p.width()) +
                                    ") evaluated at element of GF(2^" + std::to_string(at.width()) +
                                    ")");
    }
    return {eval_raw(p.field(), p.coefficients(), at.value()), p.width()};
}

FieldPoly operator+(const FieldPoly& a, const FieldPoly& b) {
    require_same_field(a, b);
    auto ac = a.coefficients();
    auto bc = b.coefficients();
    std::vector<std::uint32_t> out(std::max(ac.size(), bc.size()), 0);
    for (std::size_t i = 0; i < ac.size(); ++i) out[i] ^= ac[i];
    for (std::size_t i = 0; i < bc.size(); ++i) out[i] ^= bc[i];
    return FieldPoly(a.width(), std::move(out));
}

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
    require_same_field(a, b);
    return FieldPoly(a.width(), mul_raw(a.field(), a.coefficients(), b.coefficients()));
}

std::pair<FieldPoly, FieldPoly> poly_divmod(const FieldPoly& a, const FieldPoly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& f = a.field();
    auto bc = b.coefficients();
    const std::uint32_t lead_inv = f.inv(bc.back());
    std::vector<std::uint32_t> r(a.coefficients().begin(), a.coefficients().end());
    const std::size_t db = bc.size() - 1;
    std::vector<std::uint32_t> q(r.size() > db ? r.size() - db : 0, 0);
    while (r.size() > db) {
        const std::uint32_t factor = f.mul(r.back(), lead_inv);
        const std::size_t shift = r.size() - 1 - db;
        q[shift] = factor;
        for (std::size_t i = 0; i < db; ++i) r[shift + i] ^= f.mul(factor, bc[i]);
        r.pop_back();
    }
    return {FieldPoly(a.width(), std::move(q)), FieldPoly(a.width(), std::move(r))};
}

FieldPoly operator%(const FieldPoly& a, const FieldPoly& b) { return poly_divmod(a, b).second; }

FieldPoly poly_gcd(FieldPoly a, FieldPoly b) {
    require_same_field(a, b);
    while (!b.is_zero()) {
        FieldPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    const Field& f = a.field();
    const std::uint32_t lead_inv = f.inv(a.coefficients().back());
    std::vector<std::uint32_t> c(a.coefficients().begin(), a.coefficients().end());
    for (auto& x : c) x = f.mul(x, lead_inv);
    return FieldPoly(a.width(), std::move(c));
}

namespace {

// Squaring in characteristic 2 is coefficient-wise: (sum a_i Z^i)^2 = sum a_i^2 Z^(2i).
std::vector<std::uint32_t> sqr_raw(const Field& f, std::span<const std::uint32_t> a) {
    if (a.empty()) return {};
    std::vector<std::uint32_t> out(2 * a.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[2 * i] = f.sqr(a[i]);
    return out;
}

}  // namespace

bool is_irreducible(const FieldPoly& p) {
    const int d = p.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const Field& f = p.field();
    const std::uint32_t lead_inv = f.inv(p.coefficients().back());
    const FieldPoly z = FieldPoly::monomial(p.width(), 1);
    std::vector<std::uint32_t> power(z.coefficients().begin(), z.coefficients().end());
    for (int i = 1; i <= d / 2; ++i) {
        // raise to the q-th power: w successive squarings
        for (unsigned s = 0; s < p.width(); ++s) {
            power = sqr_raw(f, power);
            reduce_in_place(f, power, p.coefficients(), lead_inv);
        }
        FieldPoly diff = FieldPoly(p.width(), power) + z;
        if (poly_gcd(p, diff).degree() != 0) return false;
    }
    return true;
}

IrreducibleModulus::IrreducibleModulus(FieldPoly p) : poly_(std::move(p)), lead_inverse_(0) {
    if (!is_irreducible(poly_)) {
        throw std::invalid_argument("modulus polynomial of degree " +
                                    std::to_string(poly_.degree()) + " is not irreducible");
    }
    lead_inverse_ = poly_.field().inv(poly_.coefficients().back());
}

FieldPoly IrreducibleModulus::reduce(const FieldPoly& a) const {
    require_same_field(a, poly_);
    std::vector<std::uint32_t> r(a.coefficients().begin(), a.coefficients().end());
    reduce_in_place(poly_.field(), r, poly_.coefficients(), lead_inverse_);
    return FieldPoly(a.width(), std::move(r));
}

FieldPoly IrreducibleModulus::mul(const FieldPoly& a, const FieldPoly& b) const {
    require_same_field(a, poly_);
    require_same_field(b, poly_);
    auto r = mul_raw(poly_.field(), a.coefficients(), b.coefficients());
    reduce_in_place(poly_.field(), r, poly_.coefficients(), lead_inverse_);
    return FieldPoly(a.width(), std::move(r));
}

FieldPoly IrreducibleModulus::sqr(const FieldPoly& a) const {
    require_same_field(a, poly_);
    auto r = sqr_raw(poly_.field(), a.coefficients());
    reduce_in_place(poly_.field(), r, poly_.coefficients(), lead_inverse_);
    return FieldPoly(a.width(), std::move(r));
}

FieldPoly poly_pow_mod(const FieldPoly& f, std::uint64_t e, const FieldPoly& modulus) {
    return poly_pow_mod(f, e, IrreducibleModulus(modulus));
}

FieldPoly poly_pow_mod(const FieldPoly& f, std::uint64_t e, const IrreducibleModulus& modulus) {
    FieldPoly base = modulus.reduce(f);
    FieldPoly result = modulus.reduce(FieldPoly::monomial(f.width(), 0));
    bool result_is_one = true;
    while (e != 0) {
        if (e & 1) {
            result = result_is_one ? base : modulus.mul(result, base);
            result_is_one = false;
        }
        e >>= 1;
        if (e != 0) base = modulus.sqr(base);
    }
    return result;
}

FieldPoly field_modulus(unsigned w) {
    const std::uint64_t bits = field_modulus_bits(w);
    std::vector<std::uint32_t> c(w + 1);
    for (unsigned i = 0; i <= w; ++i) c[i] = static_cast<std::uint32_t>((bits >> i) & 1);
    return FieldPoly(1, std::move(c));
}

}  // namespace xforge
