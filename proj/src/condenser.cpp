#include "xforge/condenser.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "xforge/errors.hpp"

namespace xforge {

namespace {

constexpr unsigned kMaxCondenserWidth = 32;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

unsigned ceil_log2(double v) {
    const double l = std::ceil(std::log2(v) - 1e-12);
    return l <= 0 ? 0U : static_cast<unsigned>(l);
}

void check_common(std::size_t n, std::size_t k, double epsilon, double alpha) {
    if (k < 1 || k > n) throw std::invalid_argument("condenser needs 0 < k <= n");
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (!(alpha > 0)) throw std::invalid_argument("condenser slack alpha must be positive");
}

FieldPoly source_poly(const CondenserSpec& spec, const BitString& x) {
    std::vector<std::uint32_t> coeffs(spec.message_symbols);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        coeffs[i] = static_cast<std::uint32_t>(x.word_at(i * spec.field_width, spec.field_width));
    }
    return FieldPoly(spec.field_width, std::move(coeffs));
}

void condense_into(const CondenserSpec& spec, const IrreducibleModulus& modulus,
                   const BitString& x, const BitString& y, BitString& out) {
    const unsigned w = spec.field_width;
    const FieldElement point(static_cast<std::uint32_t>(y.word_at(0, w)), w);
    FieldPoly f = source_poly(spec, x);
    for (std::size_t i = 0; i < spec.output_symbols; ++i) {
        if (i > 0) f = poly_pow_mod(f, spec.power, modulus);
        out.set_word(i * w, poly_eval(f, point).value(), w);
    }
}

void check_lengths(const CondenserSpec& spec, const BitString& x, const BitString& y) {
    if (x.size() != spec.n) {
        throw std::invalid_argument("source has " + std::to_string(x.size()) + " bits, expected " +
                                    std::to_string(spec.n));
    }
    if (y.size() != spec.seed_bits()) {
        throw std::invalid_argument("seed has " + std::to_string(y.size()) + " bits, expected " +
                                    std::to_string(spec.seed_bits()));
    }
}

}  // namespace

FieldPoly first_monic_irreducible(unsigned field_width, std::size_t degree) {
    if (degree < 1) throw std::invalid_argument("irreducible polynomials have degree >= 1");
    const Field field(field_width);
    if (degree == 1) return FieldPoly::monomial(field_width, 1);
    // Every candidate with a zero constant term is divisible by Z, so the
    // lexicographically first irreducible has c_0 >= 1.
    std::vector<std::uint32_t> coeffs(degree + 1, 0);
    coeffs[0] = 1;
    coeffs[degree] = 1;
    for (;;) {
        FieldPoly candidate(field_width, coeffs);
        if (is_irreducible(candidate)) return candidate;
        std::size_t i = degree;
        while (i > 0 && coeffs[i - 1] == field.mask()) coeffs[--i] = 0;
        if (i == 0) break;
        ++coeffs[i - 1];
    }
    throw std::logic_error("no monic irreducible polynomial found");
}

CondenserSpec build_condenser(std::size_t n, std::size_t k, double epsilon, double alpha) {
    check_common(n, k, epsilon, alpha);
    for (unsigned w = 1; w <= kMaxCondenserWidth; ++w) {
        const std::size_t symbols = ceil_div(n, w);
        const unsigned power_log = ceil_log2(2.0 * static_cast<double>(symbols) / epsilon);
        if (power_log >= 32) continue;
        const double h = std::ldexp(1.0, static_cast<int>(power_log));
        if (w < ceil_log2(static_cast<double>(symbols) * h * h / epsilon)) continue;

        const double entropy_with_error = static_cast<double>(k) + 2.0 * std::log2(1.0 / epsilon);
        std::size_t out_symbols =
            static_cast<std::size_t>(std::ceil(entropy_with_error / w - 1e-12)) + 1;
        out_symbols = std::min(out_symbols, symbols);
        const double limit = (1.0 + alpha) * static_cast<double>(k) + w;
        if (static_cast<double>(out_symbols * w) > limit) {
            throw InfeasibleParameters(
                "condenser: output of " + std::to_string(out_symbols) + " symbols of " +
                std::to_string(w) + " bits exceeds (1+alpha)k + w = " + std::to_string(limit));
        }
        return make_condenser(n, k, epsilon, alpha, w, std::uint64_t{1} << power_log, out_symbols,
                              first_monic_irreducible(w, symbols));
    }
    throw InfeasibleParameters("condenser: no field width up to 32 bits satisfies w >= log2(n~ h^2 / epsilon)");
}

CondenserSpec make_condenser(std::size_t n, std::size_t k, double epsilon, double alpha,
                             unsigned field_width, std::uint64_t power,
                             std::size_t output_symbols, FieldPoly modulus) {
    CondenserSpec spec;
    spec.n = n;
    spec.k = k;
    spec.epsilon = epsilon;
    spec.alpha = alpha;
    spec.field_width = field_width;
    spec.message_symbols = field_width == 0 ? 0 : ceil_div(n, field_width);
    spec.power = power;
    spec.output_symbols = output_symbols;
    spec.modulus = std::move(modulus);
    validate(spec);
    return spec;
}

void validate(const CondenserSpec& spec) {
    check_common(spec.n, spec.k, spec.epsilon, spec.alpha);
    if (spec.field_width < 1 || spec.field_width > kMaxCondenserWidth) {
        throw std::invalid_argument("condenser field width must lie in [1, 32]");
    }
    if (spec.message_symbols != ceil_div(spec.n, spec.field_width)) {
        throw std::invalid_argument("condenser symbol count does not match n");
    }
    if (spec.power < 2 || !std::has_single_bit(spec.power)) {
        throw std::invalid_argument("condenser power must be a power of two >= 2");
    }
    if (spec.output_symbols < 1 || spec.output_symbols > spec.message_symbols) {
        throw std::invalid_argument("condenser output symbols must lie in [1, n~]");
    }
    if (spec.output_bits() < spec.k) {
        throw std::invalid_argument("condenser output of " + std::to_string(spec.output_bits()) +
                                    " bits cannot hold k=" + std::to_string(spec.k) + " bits");
    }
    if (spec.modulus.width() != spec.field_width ||
        spec.modulus.degree() != static_cast<int>(spec.message_symbols)) {
        throw std::invalid_argument("condenser modulus must have degree n~ over GF(2^w)");
    }
    if (!is_irreducible(spec.modulus)) {
        throw std::invalid_argument("condenser modulus is reducible");
    }
}

BitString guv_condense(const CondenserSpec& spec, const BitString& x, const BitString& y) {
    check_lengths(spec, x, y);
    BitString out(spec.output_bits());
    condense_into(spec, IrreducibleModulus(spec.modulus), x, y, out);
    return out;
}

BitString strong_form(const CondenserSpec& spec, const BitString& x, const BitString& y) {
    return guv_condense(spec, x, y).concat(y);
}

SeededFunction as_seeded_function(const CondenserSpec& spec) {
    auto shared = std::make_shared<const CondenserSpec>(spec);
    auto modulus = std::make_shared<const IrreducibleModulus>(spec.modulus);
    return SeededFunction(spec.n, spec.seed_bits(), spec.output_bits(),
                          [shared, modulus](const BitString& x, const BitString& y, BitString& out) {
                              condense_into(*shared, *modulus, x, y, out);
                          });
}

SeededFunction as_strong_seeded_function(const CondenserSpec& spec) {
    auto shared = std::make_shared<const CondenserSpec>(spec);
    auto modulus = std::make_shared<const IrreducibleModulus>(spec.modulus);
    const std::size_t body = spec.output_bits();
    const unsigned w = spec.field_width;
    return SeededFunction(
        spec.n, spec.seed_bits(), spec.strong_output_bits(),
        [shared, modulus, body, w](const BitString& x, const BitString& y, BitString& out) {
            condense_into(*shared, *modulus, x, y, out);
            out.set_word(body, y.word_at(0, w), w);
        });
}

}  // namespace xforge
