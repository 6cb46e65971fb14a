#pragma once
// Error kinds surfaced by the library. The CLI maps kind() to exit codes.

#include <stdexcept>
#include <string>

namespace hirz {

enum class ErrorKind {
    InvalidSpec,        // bad (n,p,q), bad partition, bad involution
    NotVexillary,
    Inconsistency,      // AmbiguousFill, NoPreimage, residual checks, ...
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, std::string code, const std::string &msg)
        : std::runtime_error(msg), kind_(k), code_(std::move(code)) {}
    ErrorKind kind() const noexcept { return kind_; }
    const std::string &code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

inline Error invalid_spec(const std::string &code, const std::string &msg)
{
    return Error(ErrorKind::InvalidSpec, code, msg);
}
inline Error inconsistency(const std::string &code, const std::string &msg)
{
    return Error(ErrorKind::Inconsistency, code, msg);
}

} // namespace hirz
