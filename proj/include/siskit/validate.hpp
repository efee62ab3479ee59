#pragma once

#include "siskit/error.hpp"
#include "siskit/model.hpp"

#include <string>
#include <vector>

namespace siskit {

enum class Severity { warning, error };

std::string_view to_string(Severity s); // "WARNING" / "ERROR"

struct Diagnostic {
    Severity severity = Severity::error;
    ErrorCode code = ErrorCode::invalid_model;
    std::string path;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// Checks every model invariant. Errors come first in document order,
/// followed by warnings. An empty result means the model is clean.
std::vector<Diagnostic> validate_model(const AssessmentModel& model);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// "LEVEL path.to.field: message"
std::string format_diagnostic(const Diagnostic& d);

} // namespace siskit
