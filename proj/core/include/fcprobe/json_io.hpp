#pragma once

#include <nlohmann/json.hpp>

#include "fcprobe/analysis.hpp"
#include "fcprobe/column_lab.hpp"
#include "fcprobe/fixture.hpp"

// Canonical JSON forms. Parsers throw ValidationError with the offending
// field path in the message, e.g. "columns[2].t: expected unsigned integer".
namespace fcprobe {

using json = nlohmann::json;

// {"kind":"code","index":8,"t":3}; an optional "label" is ignored here.
ColumnRef column_ref_from_json(const json& j, const std::string& path = "column");
json to_json(const ColumnRef& c);

// {"columns":[...], "mask":[{"start":576,"len":64}], "include_bias":false}
SpliceSpec splice_spec_from_json(const json& j);
json to_json(const SpliceSpec& s);

// {"code":[...], "noise":[...]} or {"z":[...]}.
LatentVector latent_from_json(const json& j, const ArchitectureSpec& arch);

// Either a preset name string or a full object.
ArchitectureSpec architecture_from_json(const json& j);
json to_json(const ArchitectureSpec& a);

FixtureSpec fixture_spec_from_json(const json& j);

json to_json(const LabeledMatrix& m);
json to_json(const Embedding& e);

}  // namespace fcprobe
