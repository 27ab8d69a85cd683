#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace driftmeter {

enum class ErrorKind {
    // input validation
    InvalidConfig,
    MissingColumn,
    UnbalancedPanel,
    NonNumericCell,
    DuplicateObservation,
    UnknownTimePoint,
    ItemMismatch,
    KMismatch,
    IndexUnavailable,
    InvalidThreshold,
    InvalidMix,
    OutOfRangeContribution,
    // computation
    DegenerateInput,
    DegenerateRegression,
    SingleClass,
    // filesystem
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit status for an error: 1 validation, 2 IO, 3 computation.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::UnbalancedPanel: return "UnbalancedPanel";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::DuplicateObservation: return "DuplicateObservation";
    case ErrorKind::UnknownTimePoint: return "UnknownTimePoint";
    case ErrorKind::ItemMismatch: return "ItemMismatch";
    case ErrorKind::KMismatch: return "KMismatch";
    case ErrorKind::IndexUnavailable: return "IndexUnavailable";
    case ErrorKind::InvalidThreshold: return "InvalidThreshold";
    case ErrorKind::InvalidMix: return "InvalidMix";
    case ErrorKind::OutOfRangeContribution: return "OutOfRangeContribution";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DegenerateRegression: return "DegenerateRegression";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

inline int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Io: return 2;
    case ErrorKind::DegenerateInput:
    case ErrorKind::DegenerateRegression:
    case ErrorKind::SingleClass: return 3;
    default: return 1;
    }
}

} // namespace driftmeter
