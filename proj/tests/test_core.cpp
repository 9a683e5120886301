#include <doctest.h>

#include <stdexcept>

#include "brute.hpp"
#include "xforge/bitstring.hpp"
#include "xforge/field.hpp"
#include "xforge/poly.hpp"
#include "xforge/rng.hpp"

using namespace xforge;

TEST_CASE("bitstring conversions are least-significant first") {
    const BitString b = BitString::from_string("1011");
    CHECK(b.size() == 4);
    CHECK(b.to_uint() == 0b1101);
    CHECK(BitString::from_uint(0b1101, 4) == b);
    CHECK(b.to_string() == "1011");

    const std::uint8_t byte = 0x01;
    const BitString one = BitString::from_bytes({&byte, 1}, 8);
    CHECK(one.at(0));
    CHECK(one.popcount() == 1);
    CHECK(BitString::from_hex("01", 8) == one);
    CHECK(one.to_hex() == "01");

    CHECK(BitString::from_hex("a5f0", 16).to_hex() == "a5f0");
    CHECK(BitString::from_uint(5, 3).resized(6).to_string() == "101000");
    CHECK(BitString::from_string("110").concat(BitString::from_string("01")).to_string() == "11001");
    CHECK(BitString::from_string("110010").slice(2, 3).to_string() == "001");
}

TEST_CASE("bitstring words read past the end as zero") {
    BitString b(70);
    b.set(69, true);
    b.set(0, true);
    CHECK(b.word_at(64) == (std::uint64_t{1} << 5));
    CHECK(b.word_at(0) == 1);
    CHECK(b.word_at(69, 10) == 1);
    CHECK(b.word_at(200) == 0);
    BitString c(130);
    c.set_word(60, 0xFFFF, 16);
    CHECK(c.popcount() == 16);
    CHECK(c.word_at(60, 16) == 0xFFFF);
}

TEST_CASE("bitstring rejects out-of-range access and length mismatch") {
    BitString b(3);
    CHECK_THROWS_AS(b.at(3), std::out_of_range);
    CHECK_THROWS_AS(b.set(5, true), std::out_of_range);
    CHECK_THROWS(b ^= BitString(4));
    CHECK_THROWS(BitString::from_string("01x"));
    CHECK_THROWS(b.slice(2, 2));
}

TEST_CASE("field moduli are the smallest irreducibles with constant term") {
    CHECK(field_modulus_bits(1) == 0b11);
    CHECK(field_modulus_bits(2) == 0b111);
    CHECK(field_modulus_bits(3) == 0b1011);
    CHECK_THROWS_AS(field_modulus_bits(0), std::out_of_range);
    CHECK_THROWS_AS(field_modulus_bits(33), std::out_of_range);
    for (unsigned w = 1; w <= 32; ++w) {
        const std::uint64_t m = field_modulus_bits(w);
        CHECK(brute::deg(m) == static_cast<int>(w));
        CHECK((m & 1U) == 1);
        CHECK(brute::gf2_irreducible(m));
        if (w <= 16) {
            for (std::uint64_t smaller = (std::uint64_t{1} << w) | 1; smaller < m; smaller += 2) {
                CHECK_FALSE(brute::gf2_irreducible(smaller));
            }
        }
    }
}

TEST_CASE("gf2x irreducibility agrees with trial division") {
    for (std::uint64_t p = 2; p < (1U << 13); ++p) {
        CHECK(gf2x::is_irreducible(p) == brute::gf2_irreducible(p));
    }
}

TEST_CASE("field arithmetic examples in GF(8)") {
    const FieldElement two(2, 3), four(4, 3);
    CHECK(gf_mul(two, four) == FieldElement(3, 3));
    CHECK(gf_inv(two) == FieldElement(5, 3));
    CHECK(two + four == FieldElement(6, 3));
    CHECK(gf_pow(two, 7) == FieldElement::one(3));
    CHECK_THROWS_AS(gf_inv(FieldElement::zero(3)), std::domain_error);
    CHECK_THROWS_AS(gf_mul(two, FieldElement(2, 4)), std::invalid_argument);
    CHECK_THROWS_AS(FieldElement(8, 3), std::invalid_argument);
}

TEST_CASE("field multiplication matches shift-and-add for w <= 8") {
    for (unsigned w = 1; w <= 8; ++w) {
        const Field f(w);
        for (std::uint32_t a = 0; a < (1U << w); ++a) {
            for (std::uint32_t b = 0; b < (1U << w); ++b) {
                REQUIRE(f.mul(a, b) == brute::gf_mul(a, b, f.modulus(), w));
            }
            if (a != 0) CHECK(f.inv(a) == brute::gf_inv(a, f.modulus(), w));
        }
    }
}

TEST_CASE("field axioms hold exhaustively for w <= 4") {
    for (unsigned w = 1; w <= 4; ++w) {
        const Field f(w);
        const std::uint32_t q = 1U << w;
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (std::uint32_t c = 0; c < q; ++c) {
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("element orders divide 2^w - 1") {
    for (unsigned w = 1; w <= 10; ++w) {
        const Field f(w);
        const std::uint64_t group = (std::uint64_t{1} << w) - 1;
        for (std::uint32_t a = 1; a < (1U << w); ++a) {
            REQUIRE(f.pow(a, group) == 1);
        }
    }
}

TEST_CASE("random field identities for larger widths") {
    CounterRng rng(11);
    for (unsigned w : {9U, 16U, 24U, 31U, 32U}) {
        const Field f(w);
        for (int i = 0; i < 500; ++i) {
            const auto a = static_cast<std::uint32_t>(rng.next()) & f.mask();
            const auto b = static_cast<std::uint32_t>(rng.next()) & f.mask();
            const auto c = static_cast<std::uint32_t>(rng.next()) & f.mask();
            CHECK(f.mul(a, b) == brute::gf_mul(a, b, f.modulus(), w));
            CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("polynomial evaluation examples") {
    const FieldPoly p(3, {3, 0, 1});  // Z^2 + 3
    CHECK(poly_eval(p, FieldElement(2, 3)) == FieldElement(7, 3));
    CHECK(poly_eval(FieldPoly(3), FieldElement(5, 3)) == FieldElement(0, 3));
    CHECK(poly_eval(FieldPoly::monomial(3, 1), FieldElement(6, 3)) == FieldElement(6, 3));
    CHECK(FieldPoly(3, {1, 2, 0, 0}).degree() == 1);
    CHECK(FieldPoly(3).degree() == -1);
    CHECK_THROWS(FieldPoly(3, {8}));
}

TEST_CASE("Z^3 mod Z^2 + Z + 2 over GF(4) is 3Z + 2") {
    const FieldPoly e(2, {2, 1, 1});
    CHECK(is_irreducible(e));
    const FieldPoly z = FieldPoly::monomial(2, 1);
    CHECK(poly_pow_mod(z, 3, e) == FieldPoly(2, {2, 3}));
    const brute::Gf g{field_modulus_bits(2), 2};
    CHECK(brute::poly_pow_naive(g, {0, 1}, 3, {2, 1, 1}) == brute::Poly{2, 3});
}

TEST_CASE("degree 2 and 3 irreducibility matches root search") {
    CounterRng rng(5);
    for (unsigned w : {1U, 2U, 3U, 4U}) {
        const Field f(w);
        const brute::Gf g{f.modulus(), w};
        for (int i = 0; i < 300; ++i) {
            const std::size_t d = 2 + rng.below(2);
            std::vector<std::uint32_t> c(d + 1);
            for (auto& v : c) v = static_cast<std::uint32_t>(rng.below(f.order()));
            c.back() = 1 + static_cast<std::uint32_t>(rng.below(f.order() - 1));
            CHECK(is_irreducible(FieldPoly(w, c)) == !brute::has_root(g, c));
        }
    }
}

TEST_CASE("division satisfies a = q b + r with deg r < deg b") {
    CounterRng rng(8);
    for (int i = 0; i < 200; ++i) {
        const unsigned w = 1 + static_cast<unsigned>(rng.below(6));
        std::vector<std::uint32_t> ca(1 + rng.below(9)), cb(1 + rng.below(5));
        for (auto& v : ca) v = static_cast<std::uint32_t>(rng.below(1U << w));
        for (auto& v : cb) v = static_cast<std::uint32_t>(rng.below(1U << w));
        cb.back() = 1;
        const FieldPoly a(w, ca), b(w, cb);
        const auto [q, r] = poly_divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
    CHECK_THROWS_AS(poly_divmod(FieldPoly(2, {1}), FieldPoly(2)), std::domain_error);
}

TEST_CASE("poly_pow_mod matches repeated multiplication and adds exponents") {
    CounterRng rng(21);
    for (int i = 0; i < 60; ++i) {
        const unsigned w = 1 + static_cast<unsigned>(rng.below(4));
        const Field f(w);
        const brute::Gf g{f.modulus(), w};
        const std::size_t d = 2 + rng.below(3);
        std::vector<std::uint32_t> ce;
        do {
            ce.assign(d + 1, 0);
            for (auto& v : ce) v = static_cast<std::uint32_t>(rng.below(f.order()));
            ce.back() = 1;
        } while (!is_irreducible(FieldPoly(w, ce)));
        std::vector<std::uint32_t> cf(1 + rng.below(5));
        for (auto& v : cf) v = static_cast<std::uint32_t>(rng.below(f.order()));
        const FieldPoly e(w, ce), p(w, cf);
        const std::uint64_t a = rng.below(40), b = rng.below(40);
        brute::Poly naive = brute::poly_pow_naive(g, cf, a, ce);
        const FieldPoly pa = poly_pow_mod(p, a, e);
        CHECK(std::vector<std::uint32_t>(pa.coefficients().begin(), pa.coefficients().end()) == naive);
        CHECK(poly_pow_mod(p, a + b, e) == (pa * poly_pow_mod(p, b, e)) % e);
    }
    const FieldPoly e(2, {2, 1, 1});
    const FieldPoly p(2, {1, 3, 2});
    CHECK(poly_pow_mod(p, 0, e) == FieldPoly(2, {1}));
    CHECK(poly_pow_mod(p, 1, e) == p % e);
    CHECK_THROWS_AS(poly_pow_mod(p, 2, FieldPoly(2, {1, 0, 1})), std::invalid_argument);
}

TEST_CASE("counter generator is addressable and splits deterministically") {
    CounterRng a(3, 4);
    const std::uint64_t first = a.next();
    const std::uint64_t second = a.next();
    CHECK(CounterRng(3, 4).at(0) == first);
    CHECK(CounterRng(3, 4).at(1) == second);
    CHECK(CounterRng(3).split(4).at(0) == CounterRng(3).split(4).at(0));
    CHECK(CounterRng(3).split(4).at(0) != CounterRng(3).split(5).at(0));
    CounterRng b(9);
    for (int i = 0; i < 1000; ++i) CHECK(b.below(7) < 7);
}
