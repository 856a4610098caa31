#ifndef ROG_ERRORS_HPP
#define ROG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rog {

// Base error. `code` maps onto the CLI exit-code contract (2..6).
struct Error : std::runtime_error {
  int code;
  explicit Error(const std::string& msg, int c = 6) : std::runtime_error(msg), code(c) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg, 3) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg, 2) {}
};

struct NonConvergence : Error {
  explicit NonConvergence(const std::string& msg) : Error(msg, 5) {}
};

struct NotInRange : Error {
  explicit NotInRange(const std::string& msg) : Error(msg, 4) {}
};

struct InfeasibleBase : Error {
  explicit InfeasibleBase(const std::string& msg) : Error(msg, 4) {}
};

struct InfeasibleInput : Error {
  explicit InfeasibleInput(const std::string& msg) : Error(msg, 4) {}
};

struct DegeneratePencil : Error {
  explicit DegeneratePencil(const std::string& msg) : Error(msg, 4) {}
};

struct SolveFailed : Error {
  explicit SolveFailed(const std::string& msg) : Error(msg, 5) {}
};

struct NotFound : Error {
  explicit NotFound(const std::string& msg) : Error(msg, 5) {}
};

struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& msg) : Error(msg, 4) {}
};

struct SamplingFailed : Error {
  explicit SamplingFailed(const std::string& msg) : Error(msg, 5) {}
};

struct ReductionFailed : Error {
  explicit ReductionFailed(const std::string& msg) : Error(msg, 5) {}
};

struct CertificateMismatch : Error {
  explicit CertificateMismatch(const std::string& msg) : Error(msg, 4) {}
};

struct SliceMismatch : Error {
  explicit SliceMismatch(const std::string& msg) : Error(msg, 4) {}
};

struct UntaggedSpec : Error {
  explicit UntaggedSpec(const std::string& msg) : Error(msg, 4) {}
};

struct VerificationFailed : Error {
  explicit VerificationFailed(const std::string& msg) : Error(msg, 6) {}
};

}  // namespace rog

#endif
