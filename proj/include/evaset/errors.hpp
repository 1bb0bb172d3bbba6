#pragma once

#include <stdexcept>
#include <string>

namespace evaset {

// Error taxonomy shared across the library.  Each condition gets its own type
// so callers (and tests) can catch precisely what they expect.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrime : Error {
    explicit NotPrime(const std::string& m) : Error(m) {}
};
struct Overflow : Error {
    explicit Overflow(const std::string& m) : Error(m) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& m) : Error(m) {}
};
struct TooSmall : Error {
    explicit TooSmall(const std::string& m) : Error(m) {}
};
struct DegenerateTriple : Error {
    explicit DegenerateTriple(const std::string& m) : Error(m) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& m) : Error(m) {}
};
struct EmptyInput : Error {
    explicit EmptyInput(const std::string& m) : Error(m) {}
};
// A k-flat carries more points than the randomized supersaturation step
// tolerates; the witness flat is reported in the message.
struct RichFlatPresent : Error {
    explicit RichFlatPresent(const std::string& m) : Error(m) {}
};
struct NonTermination : Error {
    explicit NonTermination(const std::string& m) : Error(m) {}
};
struct Unsupported : Error {
    explicit Unsupported(const std::string& m) : Error(m) {}
};
// A randomized constructor ran out of attempts without a verified result.
struct ExhaustedAttempts : Error {
    explicit ExhaustedAttempts(const std::string& m) : Error(m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(m) {}
};
struct InvalidParams : Error {
    explicit InvalidParams(const std::string& m) : Error(m) {}
};

}  // namespace evaset
