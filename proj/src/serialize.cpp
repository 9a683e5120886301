#include "xforge/serialize.hpp"

#include <utility>

namespace xforge {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.contains(key)) throw SpecError(std::string("spec is missing \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("spec field \"") + key + "\": " + e.what());
    }
}

void expect_kind(const Json& j, const char* kind) {
    if (field<std::string>(j, "kind") != kind) {
        throw SpecError(std::string("expected a spec of kind \"") + kind + "\"");
    }
}

// Rewraps validation failures so callers see a single error type.
template <typename F>
void revalidate(F&& check) {
    try {
        check();
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(std::string("invalid spec: ") + e.what());
    }
}

}  // namespace

void to_json(Json& j, const Design& d) {
    j = Json{{"t", d.universe_size}, {"l", d.set_size}, {"kind", to_string(d.kind)},
             {"sets", d.sets},       {"certifiedOverlap", d.certified_overlap}};
}

void from_json(const Json& j, Design& d) {
    d.universe_size = field<std::size_t>(j, "t");
    d.set_size = field<std::size_t>(j, "l");
    revalidate([&] { d.kind = design_kind_from_string(field<std::string>(j, "kind")); });
    d.sets = field<std::vector<std::vector<std::uint32_t>>>(j, "sets");
    d.certified_overlap = field<double>(j, "certifiedOverlap");
    const DesignReport report = verify_design(d);
    if (!report.valid) throw SpecError("invalid design: " + report.reason);
}

void to_json(Json& j, const CodeSpec& c) {
    j = Json{{"fieldWidth", c.field_width}, {"messageSymbols", c.message_symbols}};
}

void from_json(const Json& j, CodeSpec& c) {
    c.field_width = field<unsigned>(j, "fieldWidth");
    c.message_symbols = field<std::size_t>(j, "messageSymbols");
    revalidate([&] { validate(c); });
}

void to_json(Json& j, const ExtractorSpec& s) {
    j = Json{{"kind", "trevisan"},  {"n", s.n},       {"t", s.t},
             {"m", s.m},            {"preset", to_string(s.preset)},
             {"epsilonTarget", s.epsilon_target}, {"code", s.code}, {"design", s.design}};
}

void from_json(const Json& j, ExtractorSpec& s) {
    expect_kind(j, "trevisan");
    s.n = field<std::size_t>(j, "n");
    s.t = field<std::size_t>(j, "t");
    s.m = field<std::size_t>(j, "m");
    revalidate([&] { s.preset = trevisan_preset_from_string(field<std::string>(j, "preset")); });
    s.epsilon_target = field<double>(j, "epsilonTarget");
    s.code = field<CodeSpec>(j, "code");
    s.design = field<Design>(j, "design");
    revalidate([&] { validate(s); });
}

void to_json(Json& j, const ToeplitzSpec& s) {
    j = Json{{"kind", "toeplitz"}, {"n", s.n}, {"m", s.m}, {"offset", s.offset}};
}

void from_json(const Json& j, ToeplitzSpec& s) {
    expect_kind(j, "toeplitz");
    s.n = field<std::size_t>(j, "n");
    s.m = field<std::size_t>(j, "m");
    s.offset = j.contains("offset") ? field<bool>(j, "offset") : false;
    revalidate([&] { validate(s); });
}

void to_json(Json& j, const CondenserSpec& s) {
    const auto coeffs = s.modulus.coefficients();
    j = Json{{"kind", "condenser"},
             {"n", s.n},
             {"k", s.k},
             {"epsilon", s.epsilon},
             {"alpha", s.alpha},
             {"fieldWidth", s.field_width},
             {"messageSymbols", s.message_symbols},
             {"power", s.power},
             {"outputSymbols", s.output_symbols},
             {"modulus", std::vector<std::uint32_t>(coeffs.begin(), coeffs.end())}};
}

void from_json(const Json& j, CondenserSpec& s) {
    expect_kind(j, "condenser");
    s.n = field<std::size_t>(j, "n");
    s.k = field<std::size_t>(j, "k");
    s.epsilon = field<double>(j, "epsilon");
    s.alpha = field<double>(j, "alpha");
    s.field_width = field<unsigned>(j, "fieldWidth");
    s.message_symbols = field<std::size_t>(j, "messageSymbols");
    s.power = field<std::uint64_t>(j, "power");
    s.output_symbols = field<std::size_t>(j, "outputSymbols");
    revalidate([&] {
        s.modulus = FieldPoly(s.field_width, field<std::vector<std::uint32_t>>(j, "modulus"));
        validate(s);
    });
}

void to_json(Json& j, const HighEntropySpec& s) {
    j = Json{{"kind", "block"},
             {"n", s.n},
             {"b", s.b},
             {"epsilon", s.epsilon},
             {"innerEntropy", s.inner_entropy},
             {"errorBudget", s.error_budget},
             {"outer", s.outer},
             {"inner", s.inner}};
}

void from_json(const Json& j, HighEntropySpec& s) {
    expect_kind(j, "block");
    s.n = field<std::size_t>(j, "n");
    s.b = field<std::size_t>(j, "b");
    s.epsilon = field<double>(j, "epsilon");
    s.inner_entropy = field<double>(j, "innerEntropy");
    s.error_budget = field<double>(j, "errorBudget");
    s.outer = field<ExtractorSpec>(j, "outer");
    s.inner = field<ExtractorSpec>(j, "inner");
    revalidate([&] { validate(s); });
}

void to_json(Json& j, const PipelineSpec& s) {
    j = Json{{"kind", "pipeline"},
             {"mode", to_string(s.mode)},
             {"n", s.n},
             {"k", s.k},
             {"beta", s.beta},
             {"zeta", s.zeta},
             {"alpha", s.alpha},
             {"epsilon", s.epsilon},
             {"storageBits", s.storage_bits},
             {"padBits", s.pad_bits},
             {"totalError", s.total_error},
             {"epsilonInRegime", s.epsilon_in_regime},
             {"roundings", s.roundings},
             {"seedBits", s.seed_bits()},
             {"outputBits", s.output_bits()},
             {"condenser", s.condenser},
             {"extractor", s.extractor}};
}

void from_json(const Json& j, PipelineSpec& s) {
    expect_kind(j, "pipeline");
    const std::string mode = field<std::string>(j, "mode");
    if (mode != "flat" && mode != "storage") throw SpecError("unknown pipeline mode '" + mode + "'");
    s.mode = mode == "flat" ? PipelineMode::flat : PipelineMode::storage;
    s.n = field<std::size_t>(j, "n");
    s.k = field<std::size_t>(j, "k");
    s.beta = field<double>(j, "beta");
    s.zeta = field<double>(j, "zeta");
    s.alpha = field<double>(j, "alpha");
    s.epsilon = field<double>(j, "epsilon");
    s.storage_bits = field<std::size_t>(j, "storageBits");
    s.pad_bits = field<std::size_t>(j, "padBits");
    s.total_error = field<double>(j, "totalError");
    s.epsilon_in_regime = field<bool>(j, "epsilonInRegime");
    s.roundings = field<std::vector<std::string>>(j, "roundings");
    s.condenser = field<CondenserSpec>(j, "condenser");
    s.extractor = field<HighEntropySpec>(j, "extractor");
    revalidate([&] { validate(s); });
    if (field<std::size_t>(j, "seedBits") != s.seed_bits() || field<std::size_t>(j, "outputBits") != s.output_bits()) {
        throw SpecError("pipeline seedBits/outputBits disagree with its components");
    }
}

void to_json(Json& j, const ConstantSpec& s) {
    j = Json{{"kind", "constant"}, {"n", s.n}, {"t", s.t}, {"m", s.value.size()}, {"value", s.value.to_string()}};
}

void from_json(const Json& j, ConstantSpec& s) {
    expect_kind(j, "constant");
    s.n = field<std::size_t>(j, "n");
    s.t = field<std::size_t>(j, "t");
    const std::string bits = field<std::string>(j, "value");
    revalidate([&] { s.value = BitString::from_string(bits); });
    if (s.value.size() != field<std::size_t>(j, "m") || s.value.empty()) {
        throw SpecError("constant stub value does not have m bits");
    }
}

const char* spec_kind(const AnySpec& spec) noexcept {
    static constexpr const char* kNames[] = {"trevisan", "toeplitz", "condenser", "block", "pipeline", "constant"};
    return kNames[spec.index()];
}

Json spec_to_json(const AnySpec& spec) {
    return std::visit([](const auto& s) { return Json(s); }, spec);
}

AnySpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw SpecError("spec must be a JSON object");
    const std::string kind = field<std::string>(j, "kind");
    if (kind == "trevisan") return j.get<ExtractorSpec>();
    if (kind == "toeplitz") return j.get<ToeplitzSpec>();
    if (kind == "condenser") return j.get<CondenserSpec>();
    if (kind == "block") return j.get<HighEntropySpec>();
    if (kind == "pipeline") return j.get<PipelineSpec>();
    if (kind == "constant") return j.get<ConstantSpec>();
    throw SpecError("unknown spec kind '" + kind + "'");
}

std::string canonical_text(const AnySpec& spec) { return spec_to_json(spec).dump(); }

AnySpec parse_spec(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

SeededFunction as_seeded_function(const AnySpec& spec) {
    return std::visit([](const auto& s) { return xforge::as_seeded_function(s); }, spec);
}

}  // namespace xforge
