#pragma once

#include <stdexcept>
#include <string>

namespace fusionpack {

enum class ErrorKind {
    Dimension,      // shape or size mismatch
    Parameter,      // argument outside the operation's domain
    RankDeficiency, // linearly dependent input
    Degenerate,     // rank 0 or full rank where an embeddable projection is required
    Unsupported,    // valid request the library does not generate (import instead)
    Hypothesis,     // construction hypothesis violated
    Structural,     // input lacks the structure an operation requires
    Internal,       // a verified identity failed; indicates a bug
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::RankDeficiency: return "rank-deficiency error";
    case ErrorKind::Degenerate: return "degenerate error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Hypothesis: return "hypothesis error";
    case ErrorKind::Structural: return "structural error";
    case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

} // namespace fusionpack
