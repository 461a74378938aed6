#pragma once

#include <string>

#include <json.hpp>

#include "wroca/core.hpp"
#include "wroca/dwa.hpp"
#include "wroca/equiv.hpp"
#include "wroca/unfold.hpp"

namespace wroca::json_io {

using nlohmann::json;

// All readers throw ParseError on schema violations (including unknown keys)
// and propagate the field's ParseError/DivisionByZero for bad elements.

FieldSpec field_from_json(const json& j);
json to_json(const FieldSpec& field);

Dwroca dwroca_from_json(const json& j);
json to_json(const Dwroca& a);

/// Same layout without delta0 and ce; "initial" is optional.
Dwa dwa_from_json(const json& j);
json to_json(const Dwa& b);

json to_json(const EquivalenceVerdict& v, const Alphabet& alphabet);
json to_json(const BoundReport& r);

/// Throws ParseError when the file cannot be read or is not JSON.
json read_file(const std::string& path);

}  // namespace wroca::json_io
