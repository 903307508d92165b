#include <mnseries/error.hpp>

namespace mns
{

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
        case Errc::DivisionByZero:
            return "DivisionByZero";
        case Errc::VariantMismatch:
            return "VariantMismatch";
        case Errc::KindMismatch:
            return "KindMismatch";
        case Errc::IdentityHasNoJump:
            return "IdentityHasNoJump";
        case Errc::NotInSubgroup:
            return "NotInSubgroup";
        case Errc::SpecMismatch:
            return "SpecMismatch";
        case Errc::NoLeadingTerm:
            return "NoLeadingTerm";
        case Errc::InsufficientPrecision:
            return "InsufficientPrecision";
        case Errc::NoConvergence:
            return "NoConvergence";
        case Errc::PreconditionViolated:
            return "PreconditionViolated";
        case Errc::NotCauchy:
            return "NotCauchy";
        case Errc::NonInvertibleSigma:
            return "NonInvertibleSigma";
        case Errc::DeltaNotZero:
            return "DeltaNotZero";
        case Errc::UnboundVariable:
            return "UnboundVariable";
        case Errc::InversionFailed:
            return "InversionFailed";
        case Errc::ParseError:
            return "ParseError";
        case Errc::InvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

namespace
{

std::string describe_parse(std::size_t position, const std::vector<std::string> &expected, const std::string &detail)
{
    std::string out = "at position " + std::to_string(position) + ": " + detail;
    if (!expected.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) out += ", ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

} // namespace

ParseError::ParseError(std::size_t position, std::vector<std::string> expected, const std::string &detail)
    : Error(Errc::ParseError, describe_parse(position, expected, detail)), position_(position),
      expected_(std::move(expected)), detail_(detail)
{
}

void fail(Errc code, const std::string &what)
{
    throw Error(code, what);
}

} // namespace mns
