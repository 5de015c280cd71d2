#pragma once

#include "lrsynth/mdp.hpp"
#include "lrsynth/rational.hpp"

#include <json.hpp>

#include <string>

namespace lrsynth {

/// Insertion-ordered JSON keeps emitted documents diff-friendly.
using Json = nlohmann::ordered_json;

Json mdp_to_json(const Mdp& mdp);
Mdp mdp_from_json(const Json& doc);

/// Accepts a JSON string ("1/2", "0.25") or a JSON number (integers exactly;
/// floating numbers through their shortest decimal text).
Rational rational_from_json(const Json& value, const std::string& context);

/// Serializes with 2-space indentation and a trailing newline.
std::string dump_json(const Json& doc);

/// Parses text, converting syntax errors to ParseError with line and column.
Json parse_json_text(std::string_view text);

}  // namespace lrsynth
