#include "xforge/trevisan.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

#include "xforge/errors.hpp"

namespace xforge {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Symbols of x read straight from the bit string; bits past x.size() are the
// zero padding.
void load_symbols(const ExtractorSpec& spec, const BitString& x, std::vector<std::uint32_t>& out) {
    const unsigned w = spec.code.field_width;
    out.resize(spec.code.message_symbols);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(x.word_at(i * w, w));
    }
}

std::uint64_t restrict_unchecked(const BitString& y, const std::vector<std::uint32_t>& set) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
        index |= static_cast<std::uint64_t>(y[set[k]]) << k;
    }
    return index;
}

void extract_into(const ExtractorSpec& spec, const Field& field, const BitString& x,
                  const BitString& y, BitString& out) {
    thread_local std::vector<std::uint32_t> symbols;
    load_symbols(spec, x, symbols);
    for (std::size_t i = 0; i < spec.m; ++i) {
        const std::uint64_t index = restrict_unchecked(y, spec.design.sets[i]);
        out.set(i, encode_bit_symbols(field, symbols, index));
    }
}

}  // namespace

const char* to_string(TrevisanPreset p) noexcept {
    switch (p) {
        case TrevisanPreset::polylog_seed: return "polylog_seed";
        case TrevisanPreset::log_seed: return "log_seed";
        case TrevisanPreset::custom: return "custom";
    }
    return "custom";
}

TrevisanPreset trevisan_preset_from_string(const std::string& s) {
    if (s == "polylog_seed") return TrevisanPreset::polylog_seed;
    if (s == "log_seed") return TrevisanPreset::log_seed;
    if (s == "custom") return TrevisanPreset::custom;
    throw std::invalid_argument("unknown Trevisan preset '" + s + "'");
}

unsigned trevisan_field_width(std::size_t n, std::size_t m, double epsilon) {
    if (n < 1 || m < 1) throw std::invalid_argument("Trevisan extractor needs n >= 1 and m >= 1");
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    const double zero_mask_budget = static_cast<double>(m) / epsilon;
    for (unsigned w = 1; w <= kMaxCodeFieldWidth; ++w) {
        const double q = std::ldexp(1.0, static_cast<int>(w));
        if (q >= static_cast<double>(ceil_div(n, w)) && q >= zero_mask_budget) return w;
    }
    throw InfeasibleParameters("Trevisan extractor: n=" + std::to_string(n) + ", m=" +
                               std::to_string(m) + ", epsilon=" + std::to_string(epsilon) +
                               " needs a field wider than 2^31");
}

ExtractorSpec build_trevisan(TrevisanPreset preset, std::size_t n, std::size_t m, double epsilon) {
    if (preset == TrevisanPreset::custom) {
        throw std::invalid_argument("custom Trevisan specs are assembled with make_trevisan");
    }
    const unsigned w = trevisan_field_width(n, m, epsilon);
    const CodeSpec code = make_code_spec(w, ceil_div(n, w));
    const std::size_t l = code.index_bits();
    Design design = preset == TrevisanPreset::polylog_seed
                        ? build_poly_design(m, l)
                        : build_greedy_weak_design(m, l, kLogSeedDesignRho, 4 * l);
    ExtractorSpec spec = make_trevisan(n, m, epsilon, std::move(design), code);
    spec.preset = preset;
    return spec;
}

ExtractorSpec make_trevisan(std::size_t n, std::size_t m, double epsilon, Design design,
                            CodeSpec code) {
    ExtractorSpec spec;
    spec.n = n;
    spec.m = m;
    spec.t = design.universe_size;
    spec.design = std::move(design);
    spec.code = code;
    spec.epsilon_target = epsilon;
    spec.preset = TrevisanPreset::custom;
    validate(spec);
    return spec;
}

void validate(const ExtractorSpec& spec) {
    if (spec.n < 1 || spec.m < 1) throw std::invalid_argument("Trevisan spec needs n, m >= 1");
    validate(spec.code);
    if (spec.code.message_symbols != ceil_div(spec.n, spec.code.field_width)) {
        throw std::invalid_argument("code carries " + std::to_string(spec.code.message_symbols) +
                                    " symbols; n=" + std::to_string(spec.n) + " pads to " +
                                    std::to_string(ceil_div(spec.n, spec.code.field_width)));
    }
    if (spec.design.set_size != spec.code.index_bits()) {
        throw std::invalid_argument("design set size " + std::to_string(spec.design.set_size) +
                                    " differs from codeword index width " +
                                    std::to_string(spec.code.index_bits()));
    }
    if (spec.design.universe_size != spec.t) {
        throw std::invalid_argument("design universe differs from the seed length");
    }
    if (spec.design.set_count() < spec.m) {
        throw std::invalid_argument("design has " + std::to_string(spec.design.set_count()) +
                                    " sets for " + std::to_string(spec.m) + " output bits");
    }
    const DesignReport report = verify_design(spec.design);
    if (!report.valid) throw std::invalid_argument("design rejected: " + report.reason);
}

BitString trevisan_extract(const ExtractorSpec& spec, const BitString& x, const BitString& y) {
    if (x.size() != spec.n) {
        throw std::invalid_argument("source has " + std::to_string(x.size()) + " bits, expected " +
                                    std::to_string(spec.n));
    }
    if (y.size() != spec.t) {
        throw std::invalid_argument("seed has " + std::to_string(y.size()) + " bits, expected " +
                                    std::to_string(spec.t));
    }
    BitString out(spec.m);
    extract_into(spec, Field(spec.code.field_width), x, y, out);
    return out;
}

SeededFunction as_seeded_function(const ExtractorSpec& spec) {
    auto shared = std::make_shared<const ExtractorSpec>(spec);
    const Field field(spec.code.field_width);
    std::set<std::uint32_t> used;
    for (std::size_t i = 0; i < spec.m; ++i) used.insert(spec.design.sets[i].begin(), spec.design.sets[i].end());
    return SeededFunction(
        spec.n, spec.t, spec.m,
        [shared, field](const BitString& x, const BitString& y, BitString& out) {
            extract_into(*shared, field, x, y, out);
        },
        std::vector<std::uint32_t>(used.begin(), used.end()));
}

}  // namespace xforge
