#include "altroot/zone.hpp"

#include <algorithm>

#include "altroot/error.hpp"

namespace altroot {

bool is_valid_registry_id(const std::string& id) {
  if (id.empty() || id.back() == '.') return false;
  try {
    return DomainName::parse(id).to_relative_string() == id;
  } catch (const Error&) {
    return false;
  }
}

bool is_valid_root_id(const std::string& id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ';' || c == ',' || c == ':' || static_cast<unsigned char>(c) <= ' ';
  });
}

TldDelegation::TldDelegation(Label tld, RegistryId registry_id, std::vector<Address> servers)
    : tld_(std::move(tld)), registry_id_(std::move(registry_id)), servers_(std::move(servers)) {
  if (servers_.empty()) {
    throw Error(ErrorKind::InvalidDelegation, tld_.str() + ": no name servers");
  }
  if (!is_valid_registry_id(registry_id_)) {
    throw Error(ErrorKind::InvalidDelegation, tld_.str() + ": bad registry id '" + registry_id_ + "'");
  }
  std::sort(servers_.begin(), servers_.end());
  servers_.erase(std::unique(servers_.begin(), servers_.end()), servers_.end());
}

RootZone::RootZone(RootId root_id) : root_id_(std::move(root_id)) {
  if (!is_valid_root_id(root_id_)) {
    throw Error(ErrorKind::InvalidParams, "bad root id '" + root_id_ + "'");
  }
}

const TldDelegation* RootZone::find(const Label& tld) const {
  auto it = delegations_.find(tld);
  return it == delegations_.end() ? nullptr : &it->second;
}

void RootZone::insert(TldDelegation d) {
  if (delegations_.count(d.tld())) {
    throw Error(ErrorKind::DuplicateTld, d.tld().str() + " already delegated in " + root_id_);
  }
  Label key = d.tld();
  delegations_.emplace(std::move(key), std::move(d));
}

RootZone add_delegation(const RootZone& zone, TldDelegation d) {
  RootZone out = zone;
  out.insert(std::move(d));
  return out;
}

std::set<Label> tld_set(const RootZone& zone) {
  std::set<Label> out;
  for (const auto& [label, d] : zone.delegations()) out.insert(label);
  return out;
}

RegistryZone::RegistryZone(RegistryId registry_id, Label tld)
    : registry_id_(std::move(registry_id)), tld_(std::move(tld)) {
  if (!is_valid_registry_id(registry_id_)) {
    throw Error(ErrorKind::InvalidParams, "bad registry id '" + registry_id_ + "'");
  }
}

const Registration* RegistryZone::find(const Label& second_level) const {
  auto it = registrations_.find(second_level);
  return it == registrations_.end() ? nullptr : &it->second;
}

void RegistryZone::insert(Label second_level, Registration r) {
  if (registrations_.count(second_level)) {
    throw Error(ErrorKind::DuplicateRegistration,
                second_level.str() + "." + tld_.str() + ". in registry " + registry_id_);
  }
  registrations_.emplace(std::move(second_level), std::move(r));
}

std::size_t RegistryZone::distinct_registrants() const {
  std::set<std::string> ids;
  for (const auto& [label, r] : registrations_) {
    // Anonymous holders are keyed by a string that cannot collide with an id.
    ids.insert(r.registrant.empty() ? " " + label.str() : r.registrant);
  }
  return ids.size();
}

void Universe::add_root(RootZone zone) {
  const RootId id = zone.root_id();
  if (roots_.count(id)) throw Error(ErrorKind::InconsistentUniverse, "duplicate root " + id);
  for (const auto& [tld, d] : zone.delegations()) {
    RootId origin = id;
    for (const RootId& earlier : order_) {
      const TldDelegation* prior = roots_.at(earlier).find(tld);
      if (prior && prior->same_assignment(d)) {
        origin = this->origin(tld, earlier).value_or(earlier);
        break;
      }
    }
    origins_[{tld, id}] = origin;
  }
  order_.push_back(id);
  roots_.emplace(id, std::move(zone));
}

void Universe::replace_root(RootZone zone, const std::map<Label, RootId>& origins) {
  auto it = roots_.find(zone.root_id());
  if (it == roots_.end()) throw Error(ErrorKind::UnknownRoot, zone.root_id());
  const RootId id = zone.root_id();
  std::map<Label, RootId> kept;
  for (const auto& [tld, d] : it->second.delegations()) {
    auto node = origins_.extract({tld, id});
    if (!node.empty()) kept.emplace(tld, std::move(node.mapped()));
  }
  for (const auto& [tld, d] : zone.delegations()) {
    const TldDelegation* previous = it->second.find(tld);
    if (auto given = origins.find(tld); given != origins.end()) {
      origins_[{tld, id}] = given->second;
    } else if (previous && previous->same_assignment(d) && kept.count(tld)) {
      origins_[{tld, id}] = kept.at(tld);
    } else {
      origins_[{tld, id}] = id;
    }
  }
  it->second = std::move(zone);
}

void Universe::add_registry(const RegistryId& id) {
  if (!is_valid_registry_id(id)) throw Error(ErrorKind::InvalidParams, "bad registry id '" + id + "'");
  registries_[id];
}

void Universe::add_registry_zone(RegistryZone zone) {
  auto& zones = registries_[zone.registry_id()];
  for (const RegistryZone& z : zones) {
    if (z.tld() == zone.tld()) {
      throw Error(ErrorKind::DuplicateRegistration,
                  "registry " + zone.registry_id() + " already has a zone for " + zone.tld().str());
    }
  }
  zones.push_back(std::move(zone));
}

const RootZone& Universe::root(const RootId& id) const {
  auto it = roots_.find(id);
  if (it == roots_.end()) throw Error(ErrorKind::UnknownRoot, id);
  return it->second;
}

const RegistryZone* Universe::find_registry_zone(const RegistryId& id, const Label& tld) const {
  auto it = registries_.find(id);
  if (it == registries_.end()) return nullptr;
  for (const RegistryZone& z : it->second) {
    if (z.tld() == tld) return &z;
  }
  return nullptr;
}

std::optional<RootId> Universe::origin(const Label& tld, const RootId& root) const {
  auto it = origins_.find({tld, root});
  if (it == origins_.end()) return std::nullopt;
  return it->second;
}

void Universe::set_origin(const Label& tld, const RootId& root, RootId origin) {
  origins_[{tld, root}] = std::move(origin);
}

std::vector<std::string> Universe::problems() const {
  std::vector<std::string> out;
  for (const RootId& id : order_) {
    for (const auto& [tld, d] : roots_.at(id).delegations()) {
      const std::string where = id + "/" + tld.str();
      if (!registries_.count(d.registry_id())) {
        out.push_back(where + ": unknown registry " + d.registry_id());
      }
      auto origin = this->origin(tld, id);
      if (!origin) {
        out.push_back(where + ": no assignment origin");
      } else if (!roots_.count(*origin)) {
        out.push_back(where + ": origin " + *origin + " is not a root");
      } else {
        const TldDelegation* at_origin = roots_.at(*origin).find(tld);
        if (!at_origin || !at_origin->same_assignment(d)) {
          out.push_back(where + ": origin " + *origin + " does not hold this assignment");
        }
      }
    }
  }
  for (const auto& [key, origin] : origins_) {
    auto root = roots_.find(key.second);
    if (root == roots_.end() || !root->second.contains(key.first)) {
      out.push_back(key.second + "/" + key.first.str() + ": origin recorded for absent delegation");
    }
  }
  for (const auto& [rid, zones] : registries_) {
    for (const RegistryZone& z : zones) {
      bool delegated = false;
      for (const auto& [id, root] : roots_) {
        const TldDelegation* d = root.find(z.tld());
        if (d && d->registry_id() == rid) delegated = true;
      }
      if (!delegated) {
        out.push_back("registry " + rid + " zone " + z.tld().str() + " is not delegated by any root");
      }
    }
  }
  return out;
}

void Universe::validate() const {
  auto issues = problems();
  if (!issues.empty()) throw Error(ErrorKind::InconsistentUniverse, issues.front());
}

}  // namespace altroot
