#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace disjlab {

enum class ErrorKind {
    SupportEmpty,
    CapExceeded,
    Range,
    Parameter,
    Divisibility,
    KindMismatch,
    DimensionMismatch,
    MalformedTree,
    NonConvergence,
    Parse,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SupportEmpty: return "support-empty";
        case ErrorKind::CapExceeded: return "cap-exceeded";
        case ErrorKind::Range: return "range";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Divisibility: return "divisibility";
        case ErrorKind::KindMismatch: return "kind-mismatch";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::MalformedTree: return "malformed-tree";
        case ErrorKind::NonConvergence: return "non-convergence";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace disjlab
