#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "xforge/code.hpp"
#include "xforge/compose.hpp"
#include "xforge/condenser.hpp"
#include "xforge/design.hpp"
#include "xforge/seeded.hpp"
#include "xforge/toeplitz.hpp"
#include "xforge/trevisan.hpp"

namespace xforge {

using Json = nlohmann::json;

// Malformed or inconsistent spec document.
class SpecError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

void to_json(Json& j, const Design& d);
void from_json(const Json& j, Design& d);
void to_json(Json& j, const CodeSpec& c);
void from_json(const Json& j, CodeSpec& c);
void to_json(Json& j, const ExtractorSpec& s);
void from_json(const Json& j, ExtractorSpec& s);
void to_json(Json& j, const ToeplitzSpec& s);
void from_json(const Json& j, ToeplitzSpec& s);
void to_json(Json& j, const CondenserSpec& s);
void from_json(const Json& j, CondenserSpec& s);
void to_json(Json& j, const HighEntropySpec& s);
void from_json(const Json& j, HighEntropySpec& s);
void to_json(Json& j, const PipelineSpec& s);
void from_json(const Json& j, PipelineSpec& s);
void to_json(Json& j, const ConstantSpec& s);
void from_json(const Json& j, ConstantSpec& s);

using AnySpec =
    std::variant<ExtractorSpec, ToeplitzSpec, CondenserSpec, HighEntropySpec, PipelineSpec, ConstantSpec>;

// "trevisan", "toeplitz", "condenser", "block", "pipeline" or "constant".
const char* spec_kind(const AnySpec& spec) noexcept;

Json spec_to_json(const AnySpec& spec);
// Dispatches on "kind" and revalidates every invariant; throws SpecError.
AnySpec spec_from_json(const Json& j);

// Compact form with sorted keys; identical specs give identical bytes.
std::string canonical_text(const AnySpec& spec);
AnySpec parse_spec(const std::string& text);

SeededFunction as_seeded_function(const AnySpec& spec);

}  // namespace xforge
