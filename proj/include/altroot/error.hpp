#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altroot {

enum class ErrorKind {
  InvalidLabel,
  EmptyName,
  InvalidAddress,
  InvalidDelegation,
  DuplicateTld,
  DuplicateRegistration,
  SyntaxError,
  MissingGlue,
  UnknownRoot,
  UnknownRegistry,
  NotAssigned,
  InconsistentUniverse,
  CollisionBlocked,
  NotOperatedAnywhere,
  InvalidParams,
  ConfigError,
};

const char* to_string(ErrorKind kind);

// Every library failure is reported through this type; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Zone-file diagnostics carry the 1-based line of the first offending record.
class ZoneError : public Error {
 public:
  ZoneError(ErrorKind kind, std::size_t line, const std::string& what)
      : Error(kind, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace altroot
