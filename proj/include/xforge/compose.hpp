#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "xforge/bitstring.hpp"
#include "xforge/condenser.hpp"
#include "xforge/rational.hpp"
#include "xforge/seeded.hpp"
#include "xforge/trevisan.hpp"

namespace xforge {

// E(x1 || x2, y) = outer(x1, inner(x2, y)). Requires outer and inner to take
// sources of the same length and inner's output to be exactly outer's seed.
SeededFunction block_compose(const SeededFunction& outer, const SeededFunction& inner);

// E(x, y1 || y2) = extractor(C(x, y1) || y1 || 0^pad_bits, y2). The
// extractor's input length must be condenser output + condenser seed + pad.
SeededFunction condense_extract(const SeededFunction& condenser, const SeededFunction& extractor,
                                std::size_t pad_bits = 0);

// Two Trevisan halves wired by block_compose for sources missing at most b
// bits of entropy: outer is the polylog-seed preset on n/2 bits with
// ceil((n/2 - b) / 2) outputs, inner is the log-seed preset on n/2 bits whose
// output seeds outer.
struct HighEntropySpec {
    std::size_t n = 0;
    std::size_t b = 0;
    double epsilon = 0;
    double inner_entropy = 0;  // n/2 - b - log2(1/epsilon)
    double error_budget = 0;   // 3 epsilon
    ExtractorSpec outer;
    ExtractorSpec inner;

    std::size_t seed_bits() const noexcept { return inner.t; }
    std::size_t output_bits() const noexcept { return outer.m; }
    friend bool operator==(const HighEntropySpec&, const HighEntropySpec&) = default;
};

// Requires n even and b < n/2 - log2(1/epsilon); throws InfeasibleParameters.
HighEntropySpec build_high_entropy_extractor(std::size_t n, std::size_t b, double epsilon);
void validate(const HighEntropySpec& spec);
SeededFunction as_seeded_function(const HighEntropySpec& spec);

// zeta = (1 - 1/(2(1 - beta))) / 2, the default that keeps alpha positive.
double default_zeta(double beta);
// alpha = 2(1 - beta)(1 - zeta) - 1.
double pipeline_alpha(double beta, double zeta);

// 2^(n/2) * 2^k / 2^(n-b) with k = n/2 - b - log_inv_epsilon: the bound on the
// probability of a bad prefix, which equals 2^-log_inv_epsilon.
Rational prefix_bound(std::size_t n, std::size_t b, std::size_t log_inv_epsilon);

enum class PipelineMode { flat, storage };
const char* to_string(PipelineMode mode) noexcept;

// Condense (n, k) to (1 + alpha) k bits, then run the high-entropy extractor
// on the strong condenser output.
struct PipelineSpec {
    std::size_t n = 0;
    std::size_t k = 0;
    double beta = 0;
    double zeta = 0;
    double alpha = 0;
    double epsilon = 0;
    PipelineMode mode = PipelineMode::storage;
    std::size_t storage_bits = 0;  // ceil(beta k)
    std::size_t pad_bits = 0;      // zeros appended so the extractor input is even
    CondenserSpec condenser;
    HighEntropySpec extractor;
    double total_error = 0;        // condenser 2 epsilon + extractor 3 epsilon
    bool epsilon_in_regime = false;  // epsilon >= 2^-(k^beta)
    std::vector<std::string> roundings;

    std::size_t seed_bits() const noexcept { return condenser.seed_bits() + extractor.seed_bits(); }
    std::size_t output_bits() const noexcept { return extractor.output_bits(); }
    friend bool operator==(const PipelineSpec&, const PipelineSpec&) = default;
};

// Requires 0 <= beta < 1/2; throws InfeasibleParameters naming the failing
// constraint when the chain cannot be built.
PipelineSpec build_pipeline(std::size_t n, std::size_t k, double beta, double epsilon,
                            PipelineMode mode = PipelineMode::storage);
void validate(const PipelineSpec& spec);
SeededFunction as_seeded_function(const PipelineSpec& spec);

}  // namespace xforge
