#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wysx {

enum class Errc {
  CombineConflict,
  DomainMismatch,
  ModeError,
  UnknownFfi,
  ArityError,
  FfiTypeError,
  OpaqueArg,
  UnboundVariable,
  BodyMismatch,
  OutOfFuel,
  Stuck,
  NotCircuitable,
  WidthOverflow,
  MissingInput,
  ChannelClosed,
  TripleExhausted,
  CanShError,
  PartySetMismatch,
  ParseError,
  InputError,
  PreViolation,
  DeckExhausted,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace wysx
