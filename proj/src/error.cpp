#include "altroot/error.hpp"

namespace altroot {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::EmptyName: return "EmptyName";
    case ErrorKind::InvalidAddress: return "InvalidAddress";
    case ErrorKind::InvalidDelegation: return "InvalidDelegation";
    case ErrorKind::DuplicateTld: return "DuplicateTld";
    case ErrorKind::DuplicateRegistration: return "DuplicateRegistration";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MissingGlue: return "MissingGlue";
    case ErrorKind::UnknownRoot: return "UnknownRoot";
    case ErrorKind::UnknownRegistry: return "UnknownRegistry";
    case ErrorKind::NotAssigned: return "NotAssigned";
    case ErrorKind::InconsistentUniverse: return "InconsistentUniverse";
    case ErrorKind::CollisionBlocked: return "CollisionBlocked";
    case ErrorKind::NotOperatedAnywhere: return "NotOperatedAnywhere";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace altroot
