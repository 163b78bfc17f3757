#pragma once

#include <stdexcept>
#include <string>

namespace isoquat {

// Stable error taxonomy; the CLI maps codes to process exit codes.
enum class ErrorCode {
    Parse = 2,        // malformed literal or instance file
    Precondition = 3, // NotIsotropic, ZeroVector, Singular, Inconsistent, ...
    Certificate = 4,  // operation requires a division certificate
    Internal = 5,     // a guaranteed invariant failed at runtime (bug or invalid input)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), code_(code), kind_(std::move(kind)) {}

    ErrorCode code() const { return code_; }
    const std::string& kind() const { return kind_; }

private:
    ErrorCode code_;
    std::string kind_;
};

struct ParseError : Error {
    ParseError(int line, int col, const std::string& msg)
        : Error(ErrorCode::Parse, "ParseError",
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line, col;
};

struct NotIsotropic : Error {
    explicit NotIsotropic(const std::string& msg) : Error(ErrorCode::Precondition, "NotIsotropic", msg) {}
};
struct ZeroVector : Error {
    explicit ZeroVector(const std::string& msg) : Error(ErrorCode::Precondition, "ZeroVector", msg) {}
};
struct Singular : Error {
    explicit Singular(const std::string& msg) : Error(ErrorCode::Precondition, "Singular", msg) {}
};
struct Inconsistent : Error {
    explicit Inconsistent(const std::string& msg) : Error(ErrorCode::Precondition, "Inconsistent", msg) {}
};
struct PreconditionDegree : Error {
    explicit PreconditionDegree(const std::string& msg)
        : Error(ErrorCode::Precondition, "PreconditionDegree", msg) {}
};
struct NoCertificate : Error {
    explicit NoCertificate(const std::string& msg) : Error(ErrorCode::Certificate, "NoCertificate", msg) {}
};
struct ClaimViolation : Error {
    explicit ClaimViolation(const std::string& msg) : Error(ErrorCode::Internal, "ClaimViolation", msg) {}
};
struct InternalInvariant : Error {
    explicit InternalInvariant(const std::string& msg) : Error(ErrorCode::Internal, "InternalInvariant", msg) {}
};

} // namespace isoquat
