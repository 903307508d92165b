#ifndef MNSERIES_ERROR_HPP
#define MNSERIES_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mns
{

enum class Errc {
    DivisionByZero,
    VariantMismatch,
    KindMismatch,
    IdentityHasNoJump,
    NotInSubgroup,
    SpecMismatch,
    NoLeadingTerm,
    InsufficientPrecision,
    NoConvergence,
    PreconditionViolated,
    NotCauchy,
    NonInvertibleSigma,
    DeltaNotZero,
    UnboundVariable,
    InversionFailed,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

// Every library failure is reported through this type; code() names the
// failure class so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string &what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

class ParseError : public Error
{
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string &detail);

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string> &expected() const noexcept { return expected_; }
    const std::string &detail() const noexcept { return detail_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
    std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string &what);

} // namespace mns

#endif
