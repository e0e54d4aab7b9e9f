#include "altroot/policy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "altroot/competition.hpp"
#include "altroot/error.hpp"
#include "altroot/rng.hpp"

namespace altroot {

std::pair<RootZone, RootZone> mutual_recognition(const RootZone& a, const RootZone& b) {
  if (auto conflicts = collisions(a, b); !conflicts.empty()) {
    throw Error(ErrorKind::CollisionBlocked,
                a.root_id() + " and " + b.root_id() + " conflict on " + conflicts.begin()->str());
  }
  RootZone out_a = a;
  RootZone out_b = b;
  for (const auto& [tld, d] : b.delegations()) {
    if (!out_a.contains(tld)) out_a.insert(d);
  }
  for (const auto& [tld, d] : a.delegations()) {
    if (!out_b.contains(tld)) out_b.insert(d);
  }
  return {std::move(out_a), std::move(out_b)};
}

std::variant<RootZone, Skipped> conflict_avoiding_add(const RootZone& root, TldDelegation d, const RootZone& other) {
  if (root.contains(d.tld())) {
    throw Error(ErrorKind::DuplicateTld, d.tld().str() + " already delegated in " + root.root_id());
  }
  if (other.contains(d.tld())) return Skipped{d.tld(), other.root_id()};
  return add_delegation(root, std::move(d));
}

std::string render_orphan_report(const OrphanReport& report) {
  std::ostringstream out;
  for (const OrphanEntry& e : report.orphans) {
    out << e.name.to_string() << " intended " << e.intended.to_string() << " observed " << to_string(e.observed)
        << '\n';
  }
  return out.str();
}

std::pair<RootZone, OrphanReport> conflicting_add(const RootZone& root, TldDelegation d, const Universe& u) {
  const Label tld = d.tld();
  RootZone updated = add_delegation(root, d);

  Universe after = u;
  if (after.has_root(root.root_id())) {
    after.replace_root(updated);
  } else {
    after.add_root(updated);
  }

  OrphanReport report{root.root_id(), tld, {}};
  const ResolverConfig resolver{"orphan-check", root.root_id()};
  std::set<std::pair<RegistryId, Label>> seen;
  for (const RootId& other_id : u.root_order()) {
    if (other_id == root.root_id()) continue;
    const TldDelegation* theirs = u.root(other_id).find(tld);
    if (!theirs || theirs->same_assignment(d)) continue;
    const RegistryZone* zone = u.find_registry_zone(theirs->registry_id(), tld);
    if (!zone) continue;
    for (const auto& [second, r] : zone->registrations()) {
      if (!seen.insert({theirs->registry_id(), second}).second) continue;
      const DomainName name = second_level_name(second, tld);
      ResolutionOutcome observed = resolve(name, resolver, after);
      if (!resolved_to(observed, r.address)) {
        report.orphans.push_back({name, other_id, r.address, std::move(observed)});
      }
    }
  }
  std::sort(report.orphans.begin(), report.orphans.end(), [](const OrphanEntry& x, const OrphanEntry& y) {
    return std::tie(x.name, x.assigned_by) < std::tie(y.name, y.assigned_by);
  });
  return {std::move(updated), std::move(report)};
}

const char* to_string(RejectReason r) {
  return r == RejectReason::TooFewNames ? "too-few-names" : "too-few-disparate-users";
}

RootId incumbent_operator(const RootId& root, const Label& tld, const Universe& u) {
  std::optional<RootId> fallback;
  for (const RootId& id : u.root_order()) {
    if (id == root || !u.root(id).contains(tld)) continue;
    if (u.origin(tld, id) == id) return id;
    if (!fallback) fallback = id;
  }
  if (!fallback) throw Error(ErrorKind::NotOperatedAnywhere, tld.str() + " is not operated by any other root");
  return *fallback;
}

std::variant<RootZone, Rejected> threshold_admission(const RootZone& root, const Label& tld, const Universe& u,
                                                     std::size_t min_names, std::size_t min_disparate) {
  if (root.contains(tld)) {
    throw Error(ErrorKind::DuplicateTld, tld.str() + " already delegated in " + root.root_id());
  }
  const RootId source = incumbent_operator(root.root_id(), tld, u);
  const TldDelegation& d = *u.root(source).find(tld);
  const RegistryZone* zone = u.find_registry_zone(d.registry_id(), tld);
  const std::size_t names = zone ? zone->size() : 0;
  const std::size_t registrants = zone ? zone->distinct_registrants() : 0;
  if (names < min_names) return Rejected{RejectReason::TooFewNames, names, registrants};
  if (registrants < min_disparate) return Rejected{RejectReason::TooFewDisparateUsers, names, registrants};
  return add_delegation(root, d);
}

const char* action_name(const InterventionAction& action) {
  struct Visitor {
    const char* operator()(const MutualRecognition&) const { return "mutual_recognition"; }
    const char* operator()(const ConflictAvoidingAdd&) const { return "conflict_avoiding_add"; }
    const char* operator()(const ConflictingAdd&) const { return "conflicting_add"; }
    const char* operator()(const ThresholdAdmission&) const { return "threshold_admission"; }
    const char* operator()(const BulkReassign&) const { return "bulk_reassign"; }
  };
  return std::visit(Visitor{}, action);
}

namespace {

std::string prefix(const Intervention& iv) {
  return "step " + std::to_string(iv.at_step) + ": " + action_name(iv.action);
}

void reassign(const BulkReassign& a, Population& pop, std::uint64_t seed, std::int64_t at_step) {
  if (!(a.fraction >= 0.0 && a.fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidParams, "bulk_reassign fraction must lie in [0, 1]");
  }
  const CounterRng rng(seed);
  std::vector<std::pair<std::uint64_t, std::size_t>> eligible;
  for (std::size_t i = 0; i < pop.agents.size(); ++i) {
    if (pop.agents[i].current_root != a.to_root) {
      eligible.emplace_back(rng.bits(RngStream::BulkReassign, static_cast<std::uint64_t>(at_step), i), i);
    }
  }
  std::sort(eligible.begin(), eligible.end());
  const auto moved = static_cast<std::size_t>(std::llround(a.fraction * static_cast<double>(eligible.size())));
  for (std::size_t k = 0; k < moved; ++k) pop.agents[eligible[k].second].current_root = a.to_root;
}

}  // namespace

InterventionOutcome apply_intervention(const Intervention& iv, Universe& u, Population& pop, std::uint64_t seed) {
  if (iv.at_step < 0) throw Error(ErrorKind::InvalidParams, "intervention step must be non-negative");
  InterventionOutcome out;
  out.description = prefix(iv);

  Universe scratch = u;
  if (iv.registry_zone) scratch.add_registry_zone(*iv.registry_zone);

  auto commit = [&] {
    scratch.validate();
    u = std::move(scratch);
    out.universe_changed = true;
  };

  if (const auto* a = std::get_if<MutualRecognition>(&iv.action)) {
    const RootZone& za = scratch.root(a->a);
    const RootZone& zb = scratch.root(a->b);
    auto [na, nb] = mutual_recognition(za, zb);
    std::map<Label, RootId> origins_a, origins_b;
    for (const auto& [tld, d] : nb.delegations()) {
      if (!zb.contains(tld)) origins_b[tld] = scratch.origin(tld, a->a).value_or(a->a);
    }
    for (const auto& [tld, d] : na.delegations()) {
      if (!za.contains(tld)) origins_a[tld] = scratch.origin(tld, a->b).value_or(a->b);
    }
    const std::size_t added = (na.size() - za.size()) + (nb.size() - zb.size());
    scratch.replace_root(std::move(na), origins_a);
    scratch.replace_root(std::move(nb), origins_b);
    commit();
    out.description += " " + a->a + " <-> " + a->b + ": " + std::to_string(added) + " delegations copied";
  } else if (const auto* a = std::get_if<ConflictAvoidingAdd>(&iv.action)) {
    auto result = conflict_avoiding_add(scratch.root(a->root), a->delegation, scratch.root(a->claimed_by_other_root));
    out.description += " " + a->root + " " + a->delegation.tld().str();
    if (auto* skipped = std::get_if<Skipped>(&result)) {
      out.description += ": skipped, claimed by " + skipped->claimed_by;
    } else {
      scratch.replace_root(std::get<RootZone>(std::move(result)));
      commit();
      out.description += ": added -> " + a->delegation.registry_id();
    }
  } else if (const auto* a = std::get_if<ConflictingAdd>(&iv.action)) {
    auto [zone, report] = conflicting_add(scratch.root(a->root), a->delegation, scratch);
    scratch.replace_root(std::move(zone));
    commit();
    out.description += " " + a->root + " " + a->delegation.tld().str() + " -> " + a->delegation.registry_id() +
                       ": " + std::to_string(report.orphan_count()) + " orphans";
    out.orphans = std::move(report);
  } else if (const auto* a = std::get_if<ThresholdAdmission>(&iv.action)) {
    const RootId source = incumbent_operator(a->root, a->tld, scratch);
    auto result = threshold_admission(scratch.root(a->root), a->tld, scratch, a->min_names, a->min_disparate_users);
    out.description += " " + a->root + " " + a->tld.str();
    if (auto* rejected = std::get_if<Rejected>(&result)) {
      out.description += ": rejected (" + std::string(to_string(rejected->reason)) + ", " +
                         std::to_string(rejected->names) + " names, " + std::to_string(rejected->registrants) +
                         " registrants)";
    } else {
      const RootId origin = scratch.origin(a->tld, source).value_or(source);
      scratch.replace_root(std::get<RootZone>(std::move(result)), {{a->tld, origin}});
      commit();
      out.description += ": admitted from " + source;
    }
  } else if (const auto* a = std::get_if<BulkReassign>(&iv.action)) {
    u.root(a->to_root);
    const std::size_t before = pop.count_on(a->to_root);
    reassign(*a, pop, seed, iv.at_step);
    out.population_changed = true;
    out.description += " -> " + a->to_root + ": " + std::to_string(pop.count_on(a->to_root) - before) +
                       " agents moved";
  }
  return out;
}

}  // namespace altroot
