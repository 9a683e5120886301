#include "xforge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "xforge/errors.hpp"
#include "xforge/oracle.hpp"
#include "xforge/serialize.hpp"

namespace xforge::cli {

namespace {

constexpr std::uint64_t kDefaultTestSeed = 1;

class Exit : public std::runtime_error {
 public:
    Exit(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

 private:
    int code_;
};

struct Options {
    std::optional<std::size_t> n, k, b, m;
    std::optional<double> beta, alpha;
    std::optional<std::string> eps;
    std::string mode;
    std::string preset = "polylog_seed";
    bool offset = false;
    std::string target;
    std::string spec_path, in_path, out_path, report_path;
    std::optional<std::string> seed, seed_file;
    std::uint64_t budget = std::uint64_t{1} << 34;
    std::uint64_t test_seed = kDefaultTestSeed;
    std::optional<std::size_t> samples;
};

// "0.125" or "1/8".
Rational parse_probability(const std::string& text) {
    Rational value;
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            value = Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
        } else {
            std::size_t used = 0;
            const double d = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            value = Rational(d);
        }
    } catch (const std::exception&) {
        throw Exit(kUsage, "--eps: cannot parse '" + text + "'");
    }
    if (!(value > 0 && value < 1)) throw Exit(kUsage, "--eps must lie in (0, 1)");
    return value;
}

template <typename T>
T need(const std::optional<T>& v, const char* flag, const std::string& why) {
    if (!v) throw Exit(kUsage, std::string(flag) + " is required " + why);
    return *v;
}

std::string read_file(const std::string& path, int code_on_error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit(code_on_error, "cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw Exit(kFail, "cannot write '" + path + "'");
    }
}

std::string bytes_of(const BitString& bits) {
    const auto v = bits.to_bytes();
    return std::string(v.begin(), v.end());
}

AnySpec load_spec(const Options& o) {
    if (o.spec_path.empty()) throw Exit(kUsage, "--spec is required");
    const std::string text = read_file(o.spec_path, kUnreadableSpec);
    try {
        return parse_spec(text);
    } catch (const SpecError& e) {
        throw Exit(kUnreadableSpec, o.spec_path + ": " + e.what());
    }
}

Json rational_json(const Rational& r) { return Json{{"exact", to_string(r)}, {"value", to_double(r)}}; }

void emit_report(const Options& o, const Json& report, std::ostream& err) {
    if (!o.report_path.empty()) {
        write_file(o.report_path, report.dump(2) + "\n");
    } else {
        err << report.dump(2) << "\n";
    }
}

// ---- params ----------------------------------------------------------------

int cmd_params(const Options& o, std::ostream& out, std::ostream& err) {
    AnySpec spec;
    Json summary = Json::object();
    const auto eps_of = [&](const char* why) { return to_double(parse_probability(need(o.eps, "--eps", why))); };
    if (o.mode == "flat" || o.mode == "storage") {
        const std::string why = "for mode " + o.mode;
        const double beta = need(o.beta, "--beta", why);
        if (!(beta < 0.5)) throw InfeasibleParameters("beta=" + std::to_string(beta) + " violates the precondition beta < 1/2");
        PipelineSpec p = build_pipeline(need(o.n, "--n", why), need(o.k, "--k", why), beta, eps_of(why.c_str()),
                                        o.mode == "flat" ? PipelineMode::flat : PipelineMode::storage);
        summary = {{"totalError", p.total_error}, {"roundings", p.roundings},
                   {"epsilonInRegime", p.epsilon_in_regime}, {"alpha", p.alpha}, {"zeta", p.zeta}};
        spec = std::move(p);
    } else if (o.mode == "qproof") {
        const std::string why = "for mode qproof";
        HighEntropySpec h = build_high_entropy_extractor(need(o.n, "--n", why), need(o.b, "--b", why), eps_of(why.c_str()));
        summary = {{"totalError", h.error_budget},
                   {"roundings", {"outer output ceil((n/2 - b)/2) = " + std::to_string(h.output_bits()),
                                  "inner entropy n/2 - b - log2(1/eps) = " + std::to_string(h.inner_entropy)}}};
        spec = std::move(h);
    } else if (o.mode == "trevisan") {
        const std::string why = "for mode trevisan";
        TrevisanPreset preset;
        try {
            preset = trevisan_preset_from_string(o.preset);
        } catch (const std::invalid_argument& e) {
            throw Exit(kUsage, e.what());
        }
        ExtractorSpec t = build_trevisan(preset, need(o.n, "--n", why), need(o.m, "--m", why), eps_of(why.c_str()));
        summary = {{"totalError", t.epsilon_target}, {"fieldWidth", t.code.field_width}};
        spec = std::move(t);
    } else if (o.mode == "toeplitz") {
        const std::string why = "for mode toeplitz";
        ToeplitzSpec z = make_toeplitz(need(o.n, "--n", why), need(o.m, "--m", why), o.offset);
        summary = {{"offset", z.offset}};
        spec = z;
    } else if (o.mode == "condenser") {
        const std::string why = "for mode condenser";
        CondenserSpec c = build_condenser(need(o.n, "--n", why), need(o.k, "--k", why), eps_of(why.c_str()),
                                          o.alpha.value_or(1.0));
        summary = {{"totalError", c.epsilon}};
        spec = std::move(c);
    } else {
        throw Exit(kUsage, "unknown --mode '" + o.mode + "'");
    }

    const std::string text = spec_to_json(spec).dump(2) + "\n";
    if (o.out_path.empty()) {
        out << text;
    } else {
        write_file(o.out_path, text);
    }
    const SeededFunction f = as_seeded_function(spec);
    Json report = {{"command", "params"},
                   {"mode", o.mode},
                   {"kind", spec_kind(spec)},
                   {"specHash", sha256_hex(canonical_text(spec))},
                   {"inputBits", f.input_bits()},
                   {"seedBits", f.seed_bits()},
                   {"outputBits", f.output_bits()}};
    report.update(summary);
    emit_report(o, report, err);
    return kPass;
}

// ---- extract ---------------------------------------------------------------

BitString resolve_seed(const Options& o, std::size_t t, Json& report, std::ostream& err) {
    const int sources = (o.seed ? 1 : 0) + (o.seed_file ? 1 : 0);
    if (sources != 1) throw Exit(kUsage, "give exactly one of --seed <hex|system> or --seed-file");
    const std::size_t bytes = (t + 7) / 8;
    if (o.seed_file) {
        const std::string raw = read_file(*o.seed_file, kSeedMismatch);
        if (raw.size() != bytes) {
            throw Exit(kSeedMismatch, "seed file has " + std::to_string(raw.size()) + " bytes, spec needs " +
                                          std::to_string(bytes) + " (" + std::to_string(t) + " bits)");
        }
        report["seedSource"] = "file";
        return BitString::from_bytes(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()), t);
    }
    if (*o.seed == "system") {
        std::random_device device;
        std::vector<std::uint8_t> raw(bytes);
        for (auto& byte : raw) byte = static_cast<std::uint8_t>(device() & 0xFF);
        BitString y = BitString::from_bytes(raw, t);
        err << "xforge: seed drawn from system entropy: " << y.to_hex() << "\n";
        report["seedSource"] = "system";
        return y;
    }
    std::string hex = *o.seed;
    if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex = hex.substr(2);
    std::transform(hex.begin(), hex.end(), hex.begin(), [](unsigned char c) { return std::tolower(c); });
    if (hex.size() != 2 * bytes) {
        throw Exit(kSeedMismatch, "seed has " + std::to_string(hex.size()) + " hex digits, spec needs " +
                                      std::to_string(2 * bytes) + " (" + std::to_string(t) + " bits)");
    }
    BitString y;
    try {
        y = BitString::from_hex(hex, t);
    } catch (const std::exception& e) {
        throw Exit(kSeedMismatch, std::string("seed: ") + e.what());
    }
    if (y.to_hex() != hex) throw Exit(kSeedMismatch, "seed sets bits beyond the spec's " + std::to_string(t) + " bits");
    report["seedSource"] = "hex";
    return y;
}

int cmd_extract(const Options& o, std::ostream&, std::ostream& err) {
    const AnySpec spec = load_spec(o);
    const SeededFunction f = as_seeded_function(spec);
    if (o.in_path.empty() || o.out_path.empty()) throw Exit(kUsage, "extract needs --in and --out");
    const std::string input = read_file(o.in_path, kShortInput);
    const std::size_t n = f.input_bits();
    if (input.size() * 8 < n) {
        throw Exit(kShortInput, "input has " + std::to_string(input.size() * 8) + " bits, spec needs " + std::to_string(n));
    }
    Json report = {{"command", "extract"}, {"kind", spec_kind(spec)}, {"specHash", sha256_hex(canonical_text(spec))}};
    const BitString y = resolve_seed(o, f.seed_bits(), report, err);
    const BitString x = BitString::from_bytes(
        std::span(reinterpret_cast<const std::uint8_t*>(input.data()), (n + 7) / 8), n);

    const auto start = std::chrono::steady_clock::now();
    const BitString z = f(x, y);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string output = bytes_of(z);
    write_file(o.out_path, output);
    report.update({{"inputBits", n},
                   {"ignoredInputBits", input.size() * 8 - n},
                   {"seedBits", f.seed_bits()},
                   {"seedHex", y.to_hex()},
                   {"outputBits", z.size()},
                   {"inputSha256", sha256_hex(bytes_of(x))},
                   {"outputSha256", sha256_hex(output)},
                   {"seconds", seconds},
                   {"inputBitsPerSecond", seconds > 0 ? static_cast<double>(n) / seconds : 0.0}});
    emit_report(o, report, err);
    return kPass;
}

// ---- verify ----------------------------------------------------------------

struct Tally {
    Json checks = Json::array();
    bool failed = false;
    bool inconclusive = false;

    void add(Json entry, bool pass) {
        entry["pass"] = pass;
        failed = failed || !pass;
        checks.push_back(std::move(entry));
    }
    void skip(Json entry) {
        entry["inconclusive"] = true;
        inconclusive = true;
        checks.push_back(std::move(entry));
    }
};

std::vector<const ExtractorSpec*> trevisan_parts(const AnySpec& spec) {
    if (const auto* t = std::get_if<ExtractorSpec>(&spec)) return {t};
    if (const auto* h = std::get_if<HighEntropySpec>(&spec)) return {&h->outer, &h->inner};
    if (const auto* p = std::get_if<PipelineSpec>(&spec)) return {&p->extractor.outer, &p->extractor.inner};
    throw Exit(kUsage, std::string("spec kind '") + spec_kind(spec) + "' has no Trevisan components");
}

void verify_designs(const AnySpec& spec, Tally& tally) {
    for (const ExtractorSpec* t : trevisan_parts(spec)) {
        const Design& d = t->design;
        const DesignReport r = verify_design(d);
        bool pass = r.valid;
        Json entry = {{"check", std::string("design ") + to_string(t->preset)},
                      {"sets", d.set_count()},
                      {"maxOverlap", r.max_overlap},
                      {"maxWeakSumRatio", r.max_weak_sum_ratio}};
        if (!r.valid) entry["reason"] = r.reason;
        if (d.kind == DesignKind::standard) {
            const std::size_t bound = poly_design_shape(d.set_count(), d.set_size).degree_bound - 1;
            entry["overlapBound"] = bound;
            pass = pass && r.max_overlap <= bound;
        } else {
            entry["weakBound"] = kLogSeedDesignRho;
            pass = pass && satisfies_weak_bound(d, kLogSeedDesignRho);
        }
        tally.add(std::move(entry), pass);
    }
}

void verify_codes(const AnySpec& spec, const Options& o, Tally& tally) {
    for (const ExtractorSpec* t : trevisan_parts(spec)) {
        const CodeSpec& c = t->code;
        Json entry = {{"check", "code distance"}, {"fieldWidth", c.field_width}, {"messageSymbols", c.message_symbols},
                      {"designedDistance", rational_json(code_distance(c))}};
        const std::size_t mbits = c.message_bits();
        const std::uint64_t work = mbits >= 40 ? UINT64_MAX : (std::uint64_t{1} << mbits) * c.codeword_length();
        if (mbits >= 40 || work > o.budget) {
            entry["reason"] = "exhaustive weight enumeration exceeds the budget";
            tally.skip(std::move(entry));
            continue;
        }
        // The code is linear, so its minimum distance is its minimum nonzero weight.
        const Field field(c.field_width);
        std::uint64_t min_weight = UINT64_MAX;
        std::vector<std::uint32_t> symbols(c.message_symbols);
        for (std::uint64_t msg = 1; msg < (std::uint64_t{1} << mbits); ++msg) {
            for (std::size_t i = 0; i < symbols.size(); ++i) {
                symbols[i] = static_cast<std::uint32_t>((msg >> (i * c.field_width)) & field.mask());
            }
            std::uint64_t weight = 0;
            for (std::uint64_t idx = 0; idx < c.codeword_length(); ++idx) weight += encode_bit_symbols(field, symbols, idx);
            min_weight = std::min(min_weight, weight);
        }
        const Rational measured(BigInt(min_weight), BigInt(c.codeword_length()));
        entry["measuredDistance"] = rational_json(measured);
        tally.add(std::move(entry), measured >= code_distance(c));
    }
}

Rational extractor_threshold(const AnySpec& spec, const Options& o, std::size_t k) {
    if (o.eps) return parse_probability(*o.eps);
    if (const auto* t = std::get_if<ExtractorSpec>(&spec)) return Rational(t->epsilon_target);
    if (const auto* h = std::get_if<HighEntropySpec>(&spec)) return Rational(h->error_budget);
    if (const auto* p = std::get_if<PipelineSpec>(&spec)) return Rational(p->total_error);
    if (const auto* z = std::get_if<ToeplitzSpec>(&spec)) {
        if (k < z->m) throw Exit(kUsage, "leftover-hash threshold needs k >= m");
        // 2^-(k-m)/2, exact when k - m is even.
        const std::size_t gap = k - z->m;
        if (gap % 2 == 0) return Rational(BigInt(1), BigInt(1) << (gap / 2));
        return Rational(std::ldexp(1.0, -static_cast<int>(gap) / 2) / std::sqrt(2.0));
    }
    throw Exit(kUsage, "--eps is required for this spec kind");
}

void verify_extractor(const AnySpec& spec, const Options& o, Tally& tally) {
    if (std::holds_alternative<CondenserSpec>(spec)) throw Exit(kUsage, "a condenser is not an extractor; use --target condenser");
    const SeededFunction f = as_seeded_function(spec);
    const std::size_t k = need(o.k, "--k", "for --target extractor");
    if (k > f.input_bits()) throw Exit(kUsage, "--k exceeds the source length");
    const Rational threshold = extractor_threshold(spec, o, k);
    const std::size_t samples = o.samples.value_or(100);
    const CounterRng rng(o.test_seed);
    OracleBudget budget;
    budget.max_evaluations = o.budget;
    Rational worst = 0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const FlatSource x = sample_flat_source(f.input_bits(), k, rng.split(i));
        Rational d;
        try {
            d = extractor_distance(f, x, budget);
        } catch (const BudgetExceeded& e) {
            tally.skip({{"check", "extractor distance"}, {"source", i}, {"reason", e.what()}});
            return;
        }
        worst = std::max(worst, d);
        if (d > threshold) ++failures;
    }
    tally.add({{"check", "extractor distance"}, {"sources", samples}, {"k", k},
               {"threshold", rational_json(threshold)}, {"worstDistance", rational_json(worst)},
               {"violations", failures}},
              failures == 0);
}

void verify_condenser(const AnySpec& spec, const Options& o, Tally& tally) {
    const CondenserSpec* c = std::get_if<CondenserSpec>(&spec);
    if (const auto* p = std::get_if<PipelineSpec>(&spec)) c = &p->condenser;
    if (c == nullptr) throw Exit(kUsage, "--target condenser needs a condenser or pipeline spec");
    const SeededFunction strong = as_strong_seeded_function(*c);
    const SeededFunction plain = as_seeded_function(*c);
    const Rational eps(c->epsilon);
    const std::size_t samples = o.samples.value_or(50);
    const CounterRng rng(o.test_seed);
    OracleBudget budget;
    budget.max_evaluations = o.budget;
    Rational worst_injective = 1, worst_distance = 0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const FlatSource x = sample_flat_source(c->n, c->k, rng.split(i));
        try {
            const Rational inj = injective_fraction(strong, x, budget);
            const Rational dist =
                distance_to_min_entropy(seeded_output_distribution(plain, x, budget), c->seed_bits() + c->k);
            worst_injective = std::min(worst_injective, inj);
            worst_distance = std::max(worst_distance, dist);
            if (inj < 1 - eps || dist > eps) ++failures;
        } catch (const BudgetExceeded& e) {
            tally.skip({{"check", "condenser"}, {"source", i}, {"reason", e.what()}});
            return;
        }
    }
    tally.add({{"check", "condenser"}, {"sources", samples}, {"epsilon", rational_json(eps)},
               {"worstInjectiveFraction", rational_json(worst_injective)},
               {"worstEntropyDistance", rational_json(worst_distance)}, {"violations", failures}},
              failures == 0);
}

void verify_lemmas(const Options& o, Tally& tally) {
    const std::size_t samples = o.samples.value_or(200);
    const CounterRng rng(o.test_seed);
    std::size_t violations = 0;
    Json failed = Json::array();
    auto run_table = [&](const JointTable& j, std::size_t split, const std::string& label) {
        const LemmaReport r = lemma_suite(j, split);
        for (const LemmaCheck& c : r.checks) {
            if (c.pass) continue;
            ++violations;
            failed.push_back({{"table", label}, {"lemma", c.name}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}});
        }
    };
    for (std::size_t i = 0; i < samples; ++i) {
        CounterRng r = rng.split(i);
        const std::size_t n = 2 + r.below(4);
        const std::size_t symbols = 1 + r.below(8);
        const std::size_t split = r.below(n + 1);
        run_table(random_joint_table(n, symbols, r.split(1)), split, "random " + std::to_string(i));
    }
    run_table(full_copy_table(3), 1, "full copy");
    run_table(independent_table(3, 4), 1, "independent");
    run_table(one_bit_leak_table(3), 1, "one-bit leak");
    tally.add({{"check", "lemma suite"}, {"randomTables", samples}, {"adversarialTables", 3},
               {"violations", violations}, {"failures", failed}},
              violations == 0);
}

void verify_pipeline(const AnySpec& spec, const Options& o, Tally& tally) {
    const std::size_t samples = o.samples.value_or(1000);
    const CounterRng rng(o.test_seed);
    const SeededFunction f = as_seeded_function(spec);
    auto random_bits = [](CounterRng& r, std::size_t len) {
        BitString b(len);
        for (std::size_t i = 0; i < len; i += 64) b.set_word(i, r.next(), static_cast<unsigned>(std::min<std::size_t>(64, len - i)));
        return b;
    };
    std::function<BitString(const BitString&, const BitString&)> replay;
    if (const auto* h = std::get_if<HighEntropySpec>(&spec)) {
        replay = [h](const BitString& x, const BitString& y) {
            const std::size_t half = h->n / 2;
            return trevisan_extract(h->outer, x.slice(0, half), trevisan_extract(h->inner, x.slice(half, half), y));
        };
    } else if (const auto* p = std::get_if<PipelineSpec>(&spec)) {
        replay = [p](const BitString& x, const BitString& y) {
            const std::size_t d = p->condenser.seed_bits();
            const BitString condensed = strong_form(p->condenser, x, y.slice(0, d)).resized(p->extractor.n);
            const HighEntropySpec& h = p->extractor;
            const std::size_t half = h.n / 2;
            const BitString y2 = y.slice(d, h.seed_bits());
            return trevisan_extract(h.outer, condensed.slice(0, half),
                                    trevisan_extract(h.inner, condensed.slice(half, half), y2));
        };
    } else {
        throw Exit(kUsage, "--target pipeline needs a block or pipeline spec");
    }
    verify_designs(spec, tally);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        CounterRng r = rng.split(i);
        const BitString x = random_bits(r, f.input_bits());
        const BitString y = random_bits(r, f.seed_bits());
        const BitString z = f(x, y);
        if (z.size() != f.output_bits() || z != replay(x, y)) ++mismatches;
    }
    tally.add({{"check", "composition replay"}, {"inputs", samples}, {"mismatches", mismatches}}, mismatches == 0);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.budget == 0) throw Exit(kUsage, "--budget must be positive");
    Tally tally;
    Json report = {{"command", "verify"}, {"target", o.target}, {"testSeed", o.test_seed}, {"budget", o.budget}};
    const auto start = std::chrono::steady_clock::now();
    if (o.target == "lemmas") {
        verify_lemmas(o, tally);
    } else {
        const AnySpec spec = load_spec(o);
        report["specHash"] = sha256_hex(canonical_text(spec));
        report["kind"] = spec_kind(spec);
        if (o.target == "design") {
            verify_designs(spec, tally);
        } else if (o.target == "code") {
            verify_codes(spec, o, tally);
        } else if (o.target == "extractor") {
            verify_extractor(spec, o, tally);
        } else if (o.target == "condenser") {
            verify_condenser(spec, o, tally);
        } else if (o.target == "pipeline") {
            verify_pipeline(spec, o, tally);
        } else {
            throw Exit(kUsage, "unknown --target '" + o.target + "'");
        }
    }
    const int code = tally.failed ? kFail : tally.inconclusive ? kInconclusive : kPass;
    report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["checks"] = tally.checks;
    report["result"] = code == kPass ? "pass" : code == kFail ? "fail" : "inconclusive";
    emit_report(o, report, err);
    out << "verify " << o.target << ": " << report["result"].get<std::string>() << "\n";
    return code;
}

// ---- bench -----------------------------------------------------------------

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    const AnySpec spec = load_spec(o);
    const SeededFunction f = as_seeded_function(spec);
    const std::size_t samples = o.samples.value_or(1000);
    CounterRng rng(o.test_seed);
    std::vector<std::pair<BitString, BitString>> inputs;
    for (std::size_t i = 0; i < std::min<std::size_t>(samples, 64); ++i) {
        BitString x(f.input_bits()), y(f.seed_bits());
        for (std::size_t b = 0; b < x.size(); b += 64) x.set_word(b, rng.next(), static_cast<unsigned>(std::min<std::size_t>(64, x.size() - b)));
        for (std::size_t b = 0; b < y.size(); b += 64) y.set_word(b, rng.next(), static_cast<unsigned>(std::min<std::size_t>(64, y.size() - b)));
        inputs.emplace_back(std::move(x), std::move(y));
    }
    BitString z(f.output_bits());
    std::size_t ones = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < samples; ++i) {
        const auto& [x, y] = inputs[i % inputs.size()];
        f.apply_into(x, y, z);
        ones += z.popcount();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Json report = {{"command", "bench"},
                         {"kind", spec_kind(spec)},
                         {"specHash", sha256_hex(canonical_text(spec))},
                         {"evaluations", samples},
                         {"seconds", seconds},
                         {"evaluationsPerSecond", seconds > 0 ? static_cast<double>(samples) / seconds : 0.0},
                         {"inputBitsPerSecond", seconds > 0 ? static_cast<double>(samples * f.input_bits()) / seconds : 0.0},
                         {"outputOnes", ones}};
    emit_report(o, report, err);
    out << "bench: " << samples << " evaluations in " << seconds << " s\n";
    return kPass;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"xforge: seeded randomness extractors, condensers and their exact verification"};
    app.require_subcommand(1);

    auto* params = app.add_subcommand("params", "Resolve parameters and emit a spec");
    params->add_option("--mode", o.mode, "flat | storage | qproof | trevisan | toeplitz | condenser")->required();
    params->add_option("--n", o.n, "Source length in bits");
    params->add_option("--k", o.k, "Source min-entropy in bits");
    params->add_option("--beta", o.beta, "Storage fraction, beta < 1/2");
    params->add_option("--b", o.b, "Missing entropy for qproof mode");
    params->add_option("--m", o.m, "Output bits for a single component");
    params->add_option("--eps", o.eps, "Error, as a decimal or p/q");
    params->add_option("--alpha", o.alpha, "Condenser expansion slack (default 1)");
    params->add_option("--preset", o.preset, "polylog_seed | log_seed");
    params->add_flag("--offset", o.offset, "Toeplitz: append an m-bit offset to the seed");
    params->add_option("--out", o.out_path, "Write the spec here instead of stdout");
    params->add_option("--report", o.report_path, "Write the JSON report here instead of stderr");

    auto* extract = app.add_subcommand("extract", "Apply a spec to a source file");
    extract->add_option("--spec", o.spec_path, "Spec JSON")->required();
    extract->add_option("--in", o.in_path, "Source bytes, least-significant bit first")->required();
    extract->add_option("--out", o.out_path, "Output bytes")->required();
    extract->add_option("--seed", o.seed, "Seed as hex, or 'system' for logged system entropy");
    extract->add_option("--seed-file", o.seed_file, "Seed bytes");
    extract->add_option("--report", o.report_path, "Write the JSON report here instead of stderr");

    auto* verify = app.add_subcommand("verify", "Run an exact verification suite");
    verify->add_option("--target", o.target, "design | code | extractor | condenser | lemmas | pipeline")->required();
    verify->add_option("--spec", o.spec_path, "Spec JSON");
    verify->add_option("--k", o.k, "Flat-source entropy for --target extractor");
    verify->add_option("--eps", o.eps, "Pass threshold override");
    verify->add_option("--samples", o.samples, "Number of sources, tables or inputs");
    verify->add_option("--budget", o.budget, "Maximum function evaluations per enumeration");
    verify->add_option("--test-seed", o.test_seed, "Seed for all verification randomness");
    verify->add_option("--report", o.report_path, "Write the JSON report here instead of stderr");

    auto* bench = app.add_subcommand("bench", "Time repeated evaluation of a spec");
    bench->add_option("--spec", o.spec_path, "Spec JSON")->required();
    bench->add_option("--samples", o.samples, "Evaluations to time");
    bench->add_option("--test-seed", o.test_seed, "Seed for the random inputs");
    bench->add_option("--report", o.report_path, "Write the JSON report here instead of stderr");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (params->parsed()) return cmd_params(o, out, err);
        if (extract->parsed()) return cmd_extract(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        return cmd_bench(o, out, err);
    } catch (const Exit& e) {
        err << "xforge: " << e.what() << "\n";
        return e.code();
    } catch (const InfeasibleParameters& e) {
        err << "xforge: infeasible parameters: " << e.what() << "\n";
        return kInfeasible;
    } catch (const BudgetExceeded& e) {
        err << "xforge: inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const SpecError& e) {
        err << "xforge: " << e.what() << "\n";
        return kUnreadableSpec;
    } catch (const std::invalid_argument& e) {
        err << "xforge: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "xforge: " << e.what() << "\n";
        return kFail;
    }
}

}  // namespace xforge::cli
