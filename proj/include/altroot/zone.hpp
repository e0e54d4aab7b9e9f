#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "altroot/names.hpp"

namespace altroot {

using RootId = std::string;
// Registry identifiers are domain names in relative form ("neulevel.test"),
// which lets zone files recover them from the name servers' parent domain.
using RegistryId = std::string;

/// A root's assignment of one TLD string to a registry's name servers.
/// The server list is kept sorted and free of duplicates.
class TldDelegation {
 public:
  TldDelegation(Label tld, RegistryId registry_id, std::vector<Address> servers);

  const Label& tld() const noexcept { return tld_; }
  const RegistryId& registry_id() const noexcept { return registry_id_; }
  const std::vector<Address>& servers() const noexcept { return servers_; }

  // Same registry and same server set; the tld itself is not compared.
  bool same_assignment(const TldDelegation& other) const {
    return registry_id_ == other.registry_id_ && servers_ == other.servers_;
  }

  bool operator==(const TldDelegation&) const = default;

 private:
  Label tld_;
  RegistryId registry_id_;
  std::vector<Address> servers_;
};

bool is_valid_registry_id(const std::string& id);
bool is_valid_root_id(const std::string& id);

/// One root administration's TLD delegation table.
class RootZone {
 public:
  explicit RootZone(RootId root_id);

  const RootId& root_id() const noexcept { return root_id_; }
  const std::map<Label, TldDelegation>& delegations() const noexcept { return delegations_; }
  std::size_t size() const noexcept { return delegations_.size(); }

  const TldDelegation* find(const Label& tld) const;
  bool contains(const Label& tld) const { return find(tld) != nullptr; }

  // Throws DuplicateTld; the zone is unchanged on failure.
  void insert(TldDelegation d);

  bool operator==(const RootZone&) const = default;

 private:
  RootId root_id_;
  std::map<Label, TldDelegation> delegations_;
};

RootZone add_delegation(const RootZone& zone, TldDelegation d);
std::set<Label> tld_set(const RootZone& zone);

struct Registration {
  Address address;
  // Empty means the registrant is the name's own holder.
  std::string registrant;

  bool operator==(const Registration&) const = default;
};

/// A TLD operator's second-level registrations.
class RegistryZone {
 public:
  RegistryZone(RegistryId registry_id, Label tld);

  const RegistryId& registry_id() const noexcept { return registry_id_; }
  const Label& tld() const noexcept { return tld_; }
  const std::map<Label, Registration>& registrations() const noexcept { return registrations_; }
  std::size_t size() const noexcept { return registrations_.size(); }

  const Registration* find(const Label& second_level) const;

  // Throws DuplicateRegistration.
  void insert(Label second_level, Registration r);

  // Registrants counted by identifier; anonymous registrations each count once.
  std::size_t distinct_registrants() const;

  bool operator==(const RegistryZone&) const = default;

 private:
  RegistryId registry_id_;
  Label tld_;
  std::map<Label, Registration> registrations_;
};

/// Closed world of roots and registries plus the record of which root first
/// assigned each (tld, root) delegation.
class Universe {
 public:
  // Adds a root after all existing ones. Each delegation's origin is the
  // earliest already-present root holding the same assignment, else the new
  // root itself. Throws InconsistentUniverse on a duplicate root id.
  void add_root(RootZone zone);

  // Swaps in a new version of an existing root. Delegations absent from the
  // previous version take their origin from `origins`, or the root itself
  // when not listed. Throws UnknownRoot.
  void replace_root(RootZone zone, const std::map<Label, RootId>& origins = {});

  void add_registry(const RegistryId& id);
  // Throws DuplicateRegistration when the registry already has a zone for that tld.
  void add_registry_zone(RegistryZone zone);

  const std::vector<RootId>& root_order() const noexcept { return order_; }
  const std::map<RootId, RootZone>& roots() const noexcept { return roots_; }
  const std::map<RegistryId, std::vector<RegistryZone>>& registries() const noexcept {
    return registries_;
  }

  bool has_root(const RootId& id) const { return roots_.count(id) != 0; }
  // Throws UnknownRoot.
  const RootZone& root(const RootId& id) const;
  const RegistryZone* find_registry_zone(const RegistryId& id, const Label& tld) const;

  std::optional<RootId> origin(const Label& tld, const RootId& root) const;
  void set_origin(const Label& tld, const RootId& root, RootId origin);
  const std::map<std::pair<Label, RootId>, RootId>& assignment_origins() const noexcept {
    return origins_;
  }

  // Referential integrity problems, empty when the universe is well formed.
  std::vector<std::string> problems() const;
  // Throws InconsistentUniverse listing the first problem.
  void validate() const;

 private:
  std::vector<RootId> order_;
  std::map<RootId, RootZone> roots_;
  std::map<RegistryId, std::vector<RegistryZone>> registries_;
  std::map<std::pair<Label, RootId>, RootId> origins_;
};

}  // namespace altroot
