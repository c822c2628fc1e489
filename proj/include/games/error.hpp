#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace games {

enum class Errc {
  InvalidDimensions,
  OutOfBounds,
  LockedCell,
  InvalidDefinition,
  WrongState,
  GameFull,
  OutOfOrder,
  CorruptSnapshot,
  MissingContext,
  SemanticsError,
  UnknownRule,
  InvalidParams,
  InvalidGivens,
  InvalidValue,
  NotFound,
  IoError,
};

std::string_view to_string(Errc code);

// Every failure raised by the engine carries a stable code; callers that
// need to branch on the failure kind switch on code(), not on the message.
class GameError : public std::runtime_error {
 public:
  GameError(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace games
