#pragma once

// JSON encodings of fields, elements, matrices and configurations. Exact
// values travel as strings, never floats.

#include <optional>
#include <string>

#include <json.hpp>

#include "skewgroup/config.hpp"
#include "skewgroup/families.hpp"
#include "skewgroup/field.hpp"
#include "skewgroup/mat2.hpp"

namespace skewgroup {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// {"kind":"rational"} | {"kind":"prime","p":5} |
/// {"kind":"extension","base":<spec>,"minpoly":["1","0","1"]}; reading also
/// accepts {"kind":"cyclotomic","n":20}. Errors: ParseError, InvalidFieldSpec.
Json field_spec_to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const Json& j);

/// A scalar string for degree-1 fields, otherwise the coefficient vector.
Json element_to_json(const FieldElement& x);
/// Accepts a string (an expression in z) or a coefficient array.
/// Errors: ParseError.
FieldElement element_from_json(const Field& f, const Json& j);

Json matrix_to_json(const Mat2& m);
Mat2 matrix_from_json(const Field& f, const Json& j);

Json point_to_json(const ProjPoint& p);

/// {"field", "lines": ["zero", "infinity", "identity", <matrix>, ...]}.
Json config_to_json(const LineConfig& cfg);
/// Errors: ParseError, InvalidConfig (repeated special line), field errors.
LineConfig config_from_json(const Json& j);

/// Configuration plus a "family" block with name, parameters and expected group.
Json family_to_json(const Family& fam);

/// Reads and parses a JSON file. Errors: ParseError.
Json read_json_file(const std::string& path);

}  // namespace skewgroup
