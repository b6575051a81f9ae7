#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

enum class ErrorCode {
    degenerate_input,
    unsupported_scenario,
    conditioning,
    singular_chain,
    structural,
    config,
    numerical,
    io,
    internal,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::degenerate_input: return "degenerate_input";
        case ErrorCode::unsupported_scenario: return "unsupported_scenario";
        case ErrorCode::conditioning: return "conditioning";
        case ErrorCode::singular_chain: return "singular_chain";
        case ErrorCode::structural: return "structural";
        case ErrorCode::config: return "config";
        case ErrorCode::numerical: return "numerical";
        case ErrorCode::io: return "io";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string context = {})
        : std::runtime_error(message), code_(code), context_(std::move(context)) {}

    ErrorCode code() const { return code_; }
    const std::string& context() const { return context_; }

private:
    ErrorCode code_;
    std::string context_;
};

}  // namespace burgers
