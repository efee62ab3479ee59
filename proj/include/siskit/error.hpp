#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace siskit {

enum class ErrorCode {
    syntax,
    schema,
    dangling_reference,
    duplicate_id,
    invalid_model,
    level_out_of_range,
    empty_input,
    missing_priority,
    wrong_dimension,
    unknown_scenario,
    optimal_not_optimal,
    no_theoretical_optimal,
    unknown_cell,
    invalid_effect,
    duplicate_override,
    optimal_readonly,
    unknown_session,
    session_expired,
    io,
    internal,
};

// Stable snake_case name, used as the machine-readable code in service errors.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string path = {})
        : std::runtime_error(std::move(message)), code_(code), path_(std::move(path)) {}

    ErrorCode code() const noexcept { return code_; }

    // Location of the offending element, e.g. "alternatives[1].matrices[0].effects[2][0]".
    const std::string& path() const noexcept { return path_; }

private:
    ErrorCode code_;
    std::string path_;
};

} // namespace siskit
