#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace revdecide {

enum class ErrorKind {
    validation,
    range,
    lookup,
    completeness,
    duplication,
    mapping,
    schema,
    reference,
    degenerate_input,
    io,
    usage,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine. `stage` is filled in by the scenario
/// runner when an error crosses a pipeline boundary.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& stage() const noexcept { return stage_; }

    /// Usage errors map to exit code 2, everything else to 1.
    bool is_usage() const noexcept { return kind_ == ErrorKind::usage; }

    void set_stage(std::string stage);

private:
    static std::string compose(ErrorKind kind, const std::string& stage, const std::string& message);

    ErrorKind kind_;
    std::string message_;
    std::string stage_;
};

[[noreturn]] void fail(ErrorKind kind, std::string message);

} // namespace revdecide
