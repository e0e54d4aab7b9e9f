#pragma once

#include <string>
#include <variant>

#include "altroot/names.hpp"
#include "altroot/zone.hpp"

namespace altroot {

struct ResolverConfig {
  std::string resolver_id;
  RootId trusted_root;
};

struct Resolved {
  Address address;
  bool operator==(const Resolved&) const = default;
};

// No such TLD in the trusted root, or no such registration under it.
struct NameError {
  bool operator==(const NameError&) const = default;
};

// The root delegates the TLD but the registry holds no zone for it.
struct BrokenDelegation {
  RegistryId registry_id;
  bool operator==(const BrokenDelegation&) const = default;
};

using ResolutionOutcome = std::variant<Resolved, NameError, BrokenDelegation>;

std::string to_string(const ResolutionOutcome& outcome);

inline bool resolved_to(const ResolutionOutcome& outcome, Address expected) {
  const auto* r = std::get_if<Resolved>(&outcome);
  return r && r->address == expected;
}

// Walks trusted root -> TLD delegation -> registry zone. Only the top two
// labels take part. Throws UnknownRoot when the trusted root is absent.
ResolutionOutcome resolve(const DomainName& name, const ResolverConfig& cfg, const Universe& u);

// Ground truth: the address the origin root's own delegation chain yields.
// Throws NotAssigned when that chain has no registration for the name.
Address intended_address(const DomainName& name, const RootId& origin_root, const Universe& u);

}  // namespace altroot
