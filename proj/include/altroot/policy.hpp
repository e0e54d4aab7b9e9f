#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "altroot/dynamics.hpp"
#include "altroot/names.hpp"
#include "altroot/resolution.hpp"
#include "altroot/zone.hpp"

namespace altroot {

// Both zones end up holding the union of delegations.
// Throws CollisionBlocked when the zones conflict on any TLD.
std::pair<RootZone, RootZone> mutual_recognition(const RootZone& a, const RootZone& b);

struct Skipped {
  Label tld;
  RootId claimed_by;
};

// Adds the delegation unless `other` already delegates the string.
// Throws DuplicateTld when `root` itself already has it.
std::variant<RootZone, Skipped> conflict_avoiding_add(const RootZone& root, TldDelegation d, const RootZone& other);

struct OrphanEntry {
  DomainName name;
  RootId assigned_by;
  Address intended;
  ResolutionOutcome observed;
};

struct OrphanReport {
  RootId root;
  Label tld;
  std::vector<OrphanEntry> orphans;

  std::size_t orphan_count() const { return orphans.size(); }
};

// One line per orphaned name: "<fqdn> intended <addr> observed <outcome>".
std::string render_orphan_report(const OrphanReport& report);

// Adds the delegation regardless of other roots, and reports every name some
// other root assigned under that string which users of `root` can no longer
// resolve as intended. The delegation's registry should already be in `u`.
// Throws DuplicateTld.
std::pair<RootZone, OrphanReport> conflicting_add(const RootZone& root, TldDelegation d, const Universe& u);

enum class RejectReason { TooFewNames, TooFewDisparateUsers };

const char* to_string(RejectReason r);

struct Rejected {
  RejectReason reason;
  std::size_t names = 0;
  std::size_t registrants = 0;
};

// The root that operates `tld` elsewhere and would be copied on admission:
// prefers a root that assigned the string itself, then universe order.
// Throws NotOperatedAnywhere.
RootId incumbent_operator(const RootId& root, const Label& tld, const Universe& u);

// Copies the incumbent operator's delegation when its registry zone has at
// least `min_names` registrations from at least `min_disparate` distinct
// registrants. Names are checked first. Throws NotOperatedAnywhere, DuplicateTld.
std::variant<RootZone, Rejected> threshold_admission(const RootZone& root, const Label& tld, const Universe& u,
                                                     std::size_t min_names, std::size_t min_disparate);

struct MutualRecognition {
  RootId a;
  RootId b;
};
struct ConflictAvoidingAdd {
  RootId root;
  TldDelegation delegation;
  RootId claimed_by_other_root;
};
struct ConflictingAdd {
  RootId root;
  TldDelegation delegation;
};
struct ThresholdAdmission {
  RootId root;
  Label tld;
  std::size_t min_names = 0;
  std::size_t min_disparate_users = 0;
};
// Moves round(fraction * eligible) agents not already on to_root.
struct BulkReassign {
  double fraction = 0.0;
  RootId to_root;
};

using InterventionAction =
    std::variant<MutualRecognition, ConflictAvoidingAdd, ConflictingAdd, ThresholdAdmission, BulkReassign>;

struct Intervention {
  std::int64_t at_step = 0;
  InterventionAction action;
  // Registry zone that enters the universe together with the new delegation.
  std::optional<RegistryZone> registry_zone;
};

const char* action_name(const InterventionAction& action);

struct InterventionOutcome {
  std::string description;
  bool universe_changed = false;
  bool population_changed = false;
  std::optional<OrphanReport> orphans;
};

// Applies one intervention in place. The universe is left untouched when the
// action is skipped or rejected. Throws on invalid actions.
InterventionOutcome apply_intervention(const Intervention& iv, Universe& u, Population& pop, std::uint64_t seed);

}  // namespace altroot
