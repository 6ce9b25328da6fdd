#pragma once

#include <stdexcept>
#include <string>

namespace permcycles {

// Exit codes used by the CLI; each error class maps to one of them.
enum class ExitCode : int { Ok = 0, Parse = 2, Domain = 3, Unsupported = 4, ValidationFail = 5 };

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ExitCode::Parse, w) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ExitCode::Domain, w) {}
};

struct UnsupportedRegime : Error {
    explicit UnsupportedRegime(const std::string& w) : Error(ExitCode::Unsupported, w) {}
};

}  // namespace permcycles
