#include "wysx/error.hpp"

namespace wysx {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CombineConflict: return "CombineConflict";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::ModeError: return "ModeError";
    case Errc::UnknownFfi: return "UnknownFfi";
    case Errc::ArityError: return "ArityError";
    case Errc::FfiTypeError: return "FfiTypeError";
    case Errc::OpaqueArg: return "OpaqueArg";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::BodyMismatch: return "BodyMismatch";
    case Errc::OutOfFuel: return "OutOfFuel";
    case Errc::Stuck: return "Stuck";
    case Errc::NotCircuitable: return "NotCircuitable";
    case Errc::WidthOverflow: return "WidthOverflow";
    case Errc::MissingInput: return "MissingInput";
    case Errc::ChannelClosed: return "ChannelClosed";
    case Errc::TripleExhausted: return "TripleExhausted";
    case Errc::CanShError: return "CanShError";
    case Errc::PartySetMismatch: return "PartySetMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::InputError: return "InputError";
    case Errc::PreViolation: return "PreViolation";
    case Errc::DeckExhausted: return "DeckExhausted";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace wysx
