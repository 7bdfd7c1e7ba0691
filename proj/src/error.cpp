#include "revdecide/error.hpp"

namespace revdecide {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::validation: return "validation error";
    case ErrorKind::range: return "range error";
    case ErrorKind::lookup: return "lookup error";
    case ErrorKind::completeness: return "completeness error";
    case ErrorKind::duplication: return "duplication error";
    case ErrorKind::mapping: return "mapping error";
    case ErrorKind::schema: return "schema error";
    case ErrorKind::reference: return "reference error";
    case ErrorKind::degenerate_input: return "degenerate input";
    case ErrorKind::io: return "i/o error";
    case ErrorKind::usage: return "usage error";
    }
    return "error";
}

Error::Error(ErrorKind kind, std::string message)
    : std::runtime_error(compose(kind, {}, message)), kind_(kind), message_(std::move(message)) {}

void Error::set_stage(std::string stage) {
    if (!stage_.empty()) {
        return; // innermost stage wins
    }
    stage_ = std::move(stage);
    static_cast<std::runtime_error&>(*this) = std::runtime_error(compose(kind_, stage_, message_));
}

std::string Error::compose(ErrorKind kind, const std::string& stage, const std::string& message) {
    std::string out;
    if (!stage.empty()) {
        out += "[" + stage + "] ";
    }
    out += to_string(kind);
    out += ": ";
    out += message;
    return out;
}

void fail(ErrorKind kind, std::string message) { throw Error(kind, std::move(message)); }

} // namespace revdecide
