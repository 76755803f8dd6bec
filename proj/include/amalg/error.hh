#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace amalg {

enum class ErrorCode {
    InvalidSymbol,
    SymbolClash,
    NotSubsignature,
    SignatureMismatch,
    RangeError,
    NotBijective,
    SyntaxError,
    UnknownSymbol,
    ArityMismatch,
    UnboundVariable,
    DomainMismatch,
    MembershipError,
    NotRelational,
    InvalidCertificate,
    InvalidWitness,
    WellDefinednessFailure,
    InducedRelationConflict,
    Inapplicable,
    HypothesisFailure,
    VerificationFailure,
    AssertionFailure,
    InputError,
};

auto to_string(ErrorCode code) -> std::string_view;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string & message);
    Error(ErrorCode code, const std::string & message, std::size_t position);

    auto code() const noexcept -> ErrorCode { return _code; }

    // Byte offset into the parsed text, for SyntaxError only.
    auto position() const noexcept -> std::size_t { return _position; }

private:
    ErrorCode _code;
    std::size_t _position = 0;
};

[[noreturn]] void fail(ErrorCode code, const std::string & message);

} // namespace amalg
