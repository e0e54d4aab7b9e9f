#include "altroot/resolution.hpp"

#include "altroot/error.hpp"

namespace altroot {

namespace {

struct Lookup {
  const TldDelegation* delegation = nullptr;
  const RegistryZone* registry = nullptr;
  const Registration* registration = nullptr;
};

Lookup walk(const DomainName& name, const RootZone& root, const Universe& u) {
  Lookup out;
  auto tld = name.tld();
  if (!tld) return out;
  out.delegation = root.find(*tld);
  if (!out.delegation) return out;
  out.registry = u.find_registry_zone(out.delegation->registry_id(), *tld);
  if (!out.registry) return out;
  if (auto second = name.second_level()) out.registration = out.registry->find(*second);
  return out;
}

}  // namespace

std::string to_string(const ResolutionOutcome& outcome) {
  if (const auto* r = std::get_if<Resolved>(&outcome)) return "Resolved(" + r->address.to_string() + ")";
  if (std::holds_alternative<NameError>(outcome)) return "NameError";
  return "BrokenDelegation(" + std::get<BrokenDelegation>(outcome).registry_id + ")";
}

ResolutionOutcome resolve(const DomainName& name, const ResolverConfig& cfg, const Universe& u) {
  const RootZone& root = u.root(cfg.trusted_root);
  Lookup hit = walk(name, root, u);
  if (!hit.delegation) return NameError{};
  if (!hit.registry) return BrokenDelegation{hit.delegation->registry_id()};
  if (!hit.registration) return NameError{};
  return Resolved{hit.registration->address};
}

Address intended_address(const DomainName& name, const RootId& origin_root, const Universe& u) {
  Lookup hit = walk(name, u.root(origin_root), u);
  if (!hit.registration) {
    throw Error(ErrorKind::NotAssigned, name.to_string() + " has no assignment under " + origin_root);
  }
  return hit.registration->address;
}

}  // namespace altroot
