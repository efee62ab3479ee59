#pragma once

#include "siskit/model.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace siskit {

using Json = nlohmann::ordered_json;

/// Structural parse only: syntax, field types, value domains and id format.
/// Cross-references are not resolved; run validate_model() on the result.
/// Throws Error{syntax} or Error{schema}.
AssessmentModel parse_model_document(std::string_view text);
AssessmentModel model_from_json(const Json& doc);

/// Full parse: structural parse followed by validate_model(). The first
/// error-level diagnostic is thrown as an Error carrying its path.
AssessmentModel parse_model(std::string_view text);

Json model_to_json(const AssessmentModel& model);
std::string serialize_model(const AssessmentModel& model);

/// Reads a whole file. Throws Error{io} when it cannot be opened.
std::string read_text_file(const std::string& path);

/// Throws Error{syntax} with line/column on malformed input.
Json parse_json_text(std::string_view text);

} // namespace siskit
