#include "xforge/compose.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "xforge/errors.hpp"

namespace xforge {

namespace {

std::vector<std::uint32_t> shifted_support(const std::vector<std::uint32_t>& support,
                                           std::uint32_t offset) {
    std::vector<std::uint32_t> out;
    out.reserve(support.size());
    for (std::uint32_t s : support) out.push_back(s + offset);
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

SeededFunction block_compose(const SeededFunction& outer, const SeededFunction& inner) {
    if (outer.input_bits() != inner.input_bits()) {
        throw std::invalid_argument("block composition: halves take " +
                                    std::to_string(outer.input_bits()) + " and " +
                                    std::to_string(inner.input_bits()) + " bits");
    }
    if (inner.output_bits() != outer.seed_bits()) {
        throw std::invalid_argument("block composition: inner output of " +
                                    std::to_string(inner.output_bits()) +
                                    " bits does not match outer seed of " +
                                    std::to_string(outer.seed_bits()) + " bits");
    }
    const std::size_t half = outer.input_bits();
    return SeededFunction(
        2 * half, inner.seed_bits(), outer.output_bits(),
        [outer, inner, half](const BitString& x, const BitString& y, BitString& out) {
            BitString mid(inner.output_bits());
            inner.apply_into(x.slice(half, half), y, mid);
            outer.apply_into(x.slice(0, half), mid, out);
        },
        inner.seed_support());
}

SeededFunction condense_extract(const SeededFunction& condenser, const SeededFunction& extractor,
                                std::size_t pad_bits) {
    const std::size_t d = condenser.seed_bits();
    const std::size_t condensed = condenser.output_bits();
    if (extractor.input_bits() != condensed + d + pad_bits) {
        throw std::invalid_argument("condense-then-extract: extractor takes " +
                                    std::to_string(extractor.input_bits()) + " bits, condenser gives " +
                                    std::to_string(condensed) + " + " + std::to_string(d) +
                                    " seed bits + " + std::to_string(pad_bits) + " padding");
    }
    std::vector<std::uint32_t> support;
    if (!extractor.seed_support().empty()) {
        for (std::uint32_t i = 0; i < d; ++i) support.push_back(i);
        auto tail = shifted_support(extractor.seed_support(), static_cast<std::uint32_t>(d));
        support.insert(support.end(), tail.begin(), tail.end());
    }
    return SeededFunction(
        condenser.input_bits(), d + extractor.seed_bits(), extractor.output_bits(),
        [condenser, extractor, d, condensed](const BitString& x, const BitString& y, BitString& out) {
            const BitString y1 = y.slice(0, d);
            BitString body(condensed);
            condenser.apply_into(x, y1, body);
            BitString input = body.concat(y1).resized(extractor.input_bits());
            extractor.apply_into(input, y.slice(d, extractor.seed_bits()), out);
        },
        std::move(support));
}

HighEntropySpec build_high_entropy_extractor(std::size_t n, std::size_t b, double epsilon) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("high-entropy extractor needs an even n >= 2");
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    const std::size_t half = n / 2;
    const double entropy = static_cast<double>(half) - static_cast<double>(b) - std::log2(1.0 / epsilon);
    if (b >= half || !(entropy > 0)) {
        throw InfeasibleParameters("high-entropy extractor: b=" + std::to_string(b) +
                                   " violates b < n/2 - log2(1/epsilon) = " +
                                   fmt(static_cast<double>(half) - std::log2(1.0 / epsilon)));
    }
    HighEntropySpec spec;
    spec.n = n;
    spec.b = b;
    spec.epsilon = epsilon;
    spec.inner_entropy = entropy;
    spec.error_budget = 3 * epsilon;
    spec.outer = build_trevisan(TrevisanPreset::polylog_seed, half, (half - b + 1) / 2, epsilon);
    spec.inner = build_trevisan(TrevisanPreset::log_seed, half, spec.outer.t, epsilon);
    return spec;
}

void validate(const HighEntropySpec& spec) {
    if (spec.n < 2 || spec.n % 2 != 0) throw std::invalid_argument("high-entropy extractor needs an even n");
    validate(spec.outer);
    validate(spec.inner);
    if (spec.outer.n != spec.n / 2 || spec.inner.n != spec.n / 2) {
        throw std::invalid_argument("high-entropy extractor halves must take n/2 bits each");
    }
    if (spec.inner.m != spec.outer.t) {
        throw std::invalid_argument("inner output length must equal the outer seed length");
    }
}

SeededFunction as_seeded_function(const HighEntropySpec& spec) {
    return block_compose(as_seeded_function(spec.outer), as_seeded_function(spec.inner));
}

double default_zeta(double beta) { return 0.5 * (1.0 - 1.0 / (2.0 * (1.0 - beta))); }

double pipeline_alpha(double beta, double zeta) { return 2.0 * (1.0 - beta) * (1.0 - zeta) - 1.0; }

Rational prefix_bound(std::size_t n, std::size_t b, std::size_t log_inv_epsilon) {
    if (n % 2 != 0) throw std::invalid_argument("prefix bound needs an even n");
    const long long half = static_cast<long long>(n / 2);
    const long long k = half - static_cast<long long>(b) - static_cast<long long>(log_inv_epsilon);
    const long long denom_exp = static_cast<long long>(n) - static_cast<long long>(b);
    auto pow2 = [](long long e) {
        Rational r = 1;
        const Rational two = e >= 0 ? Rational(2) : Rational(1, 2);
        for (long long i = 0; i < (e >= 0 ? e : -e); ++i) r *= two;
        return r;
    };
    return pow2(half) * pow2(k) / pow2(denom_exp);
}

const char* to_string(PipelineMode mode) noexcept {
    return mode == PipelineMode::flat ? "flat" : "storage";
}

PipelineSpec build_pipeline(std::size_t n, std::size_t k, double beta, double epsilon,
                            PipelineMode mode) {
    if (!(beta >= 0 && beta < 0.5)) {
        throw InfeasibleParameters("pipeline requires 0 <= beta < 1/2 (got beta=" + fmt(beta) + ")");
    }
    if (k < 1 || k > n) throw InfeasibleParameters("pipeline requires 0 < k <= n");
    PipelineSpec spec;
    spec.n = n;
    spec.k = k;
    spec.beta = beta;
    spec.zeta = default_zeta(beta);
    spec.alpha = pipeline_alpha(beta, spec.zeta);
    spec.epsilon = epsilon;
    spec.mode = mode;
    spec.storage_bits = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(k) - 1e-12));
    spec.roundings.push_back("storage bound ceil(beta*k) = " + std::to_string(spec.storage_bits));

    spec.condenser = build_condenser(n, k, epsilon, spec.alpha);
    const std::size_t d = spec.condenser.seed_bits();
    spec.roundings.push_back("condenser output " + std::to_string(spec.condenser.output_bits()) +
                             " bits for (1+alpha)k = " +
                             fmt((1.0 + spec.alpha) * static_cast<double>(k)));

    const std::size_t raw = spec.condenser.strong_output_bits();
    spec.pad_bits = raw % 2;
    const std::size_t input = raw + spec.pad_bits;
    if (spec.pad_bits != 0) {
        spec.roundings.push_back("extractor input padded from " + std::to_string(raw) + " to " +
                                 std::to_string(input) + " bits");
    }
    if (d + k <= spec.storage_bits) {
        throw InfeasibleParameters("pipeline: storage bound leaves no entropy for the extractor");
    }
    const std::size_t entropy = d + k - spec.storage_bits;
    const std::size_t b = input - entropy;
    spec.roundings.push_back("extractor entropy d + k - ceil(beta*k) = " + std::to_string(entropy) +
                             " of " + std::to_string(input) + " bits, so b = " + std::to_string(b));
    spec.extractor = build_high_entropy_extractor(input, b, epsilon);
    spec.roundings.push_back("outer output ceil((n/2 - b)/2) = " +
                             std::to_string(spec.extractor.output_bits()));

    spec.total_error = 2 * epsilon + spec.extractor.error_budget;
    spec.epsilon_in_regime =
        std::log2(1.0 / epsilon) <= std::pow(static_cast<double>(k), beta);
    validate(spec);
    return spec;
}

void validate(const PipelineSpec& spec) {
    validate(spec.condenser);
    validate(spec.extractor);
    if (spec.pad_bits > 1 ||
        spec.extractor.n != spec.condenser.strong_output_bits() + spec.pad_bits) {
        throw std::invalid_argument("pipeline: extractor input does not match condenser output");
    }
}

SeededFunction as_seeded_function(const PipelineSpec& spec) {
    return condense_extract(as_seeded_function(spec.condenser), as_seeded_function(spec.extractor),
                            spec.pad_bits);
}

}  // namespace xforge
