#include <amalg/error.hh>

namespace amalg {

auto to_string(ErrorCode code) -> std::string_view
{
    switch (code) {
        case ErrorCode::InvalidSymbol: return "InvalidSymbol";
        case ErrorCode::SymbolClash: return "SymbolClash";
        case ErrorCode::NotSubsignature: return "NotSubsignature";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
        case ErrorCode::RangeError: return "RangeError";
        case ErrorCode::NotBijective: return "NotBijective";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownSymbol: return "UnknownSymbol";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::MembershipError: return "MembershipError";
        case ErrorCode::NotRelational: return "NotRelational";
        case ErrorCode::InvalidCertificate: return "InvalidCertificate";
        case ErrorCode::InvalidWitness: return "InvalidWitness";
        case ErrorCode::WellDefinednessFailure: return "WellDefinednessFailure";
        case ErrorCode::InducedRelationConflict: return "InducedRelationConflict";
        case ErrorCode::Inapplicable: return "Inapplicable";
        case ErrorCode::HypothesisFailure: return "HypothesisFailure";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::AssertionFailure: return "AssertionFailure";
        case ErrorCode::InputError: return "InputError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string & message) :
    std::runtime_error(std::string(to_string(code)) + ": " + message),
    _code(code)
{
}

Error::Error(ErrorCode code, const std::string & message, std::size_t position) :
    std::runtime_error(std::string(to_string(code)) + " at " + std::to_string(position) + ": " + message),
    _code(code),
    _position(position)
{
}

void fail(ErrorCode code, const std::string & message)
{
    throw Error(code, message);
}

} // namespace amalg
