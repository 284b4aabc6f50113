#ifndef UNISTOCH_ERROR_HPP
#define UNISTOCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace unistoch {

enum class ErrorCode {
    NotSquare,
    NegativeEntry,
    RowSum,
    ColSum,
    NotUnitary,
    DimensionMismatch,
    EqualInputs,
    Unsupported,
    MatchingFailure,
    DegenerateInput,
    NotUnistochasticInput,
    RadiusTooLarge,
    EvenLength,
    NotBiunimodular,
    TooLarge,
    NotHadamard,
    NotLatin,
    ParseError,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Single exception type used across the library; `code()` identifies the
/// failed contract so callers (and the CLI) can map it to an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NegativeEntry: return "NegativeEntry";
        case ErrorCode::RowSum: return "RowSum";
        case ErrorCode::ColSum: return "ColSum";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EqualInputs: return "EqualInputs";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::MatchingFailure: return "MatchingFailure";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::NotUnistochasticInput: return "NotUnistochasticInput";
        case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
        case ErrorCode::EvenLength: return "EvenLength";
        case ErrorCode::NotBiunimodular: return "NotBiunimodular";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotHadamard: return "NotHadamard";
        case ErrorCode::NotLatin: return "NotLatin";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace unistoch

#endif
