#include "altroot/competition.hpp"

#include <algorithm>
#include <sstream>

#include "altroot/error.hpp"
#include "altroot/resolution.hpp"

namespace altroot {

std::string to_string(const CompetitionType& type) {
  if (std::holds_alternative<Type1Coordinated>(type)) return "Type1Coordinated";
  if (const auto* t2 = std::get_if<Type2Superset>(&type)) {
    return "Type2Superset(" + t2->superset_root.value_or("none") + ")";
  }
  std::string out = "Type3Conflicting {";
  bool first = true;
  for (const Label& l : std::get<Type3Conflicting>(type).collisions) {
    if (!first) out += ", ";
    out += l.str();
    first = false;
  }
  return out + "}";
}

std::set<Label> collisions(const RootZone& a, const RootZone& b) {
  std::set<Label> out;
  for (const auto& [tld, d] : a.delegations()) {
    const TldDelegation* other = b.find(tld);
    if (other && !other->same_assignment(d)) out.insert(tld);
  }
  return out;
}

CompetitionType classify(const RootZone& a, const RootZone& b) {
  if (auto conflicts = collisions(a, b); !conflicts.empty()) {
    return Type3Conflicting{std::move(conflicts)};
  }
  // No conflicts, so shared delegations agree and set relations decide.
  const auto sa = tld_set(a);
  const auto sb = tld_set(b);
  if (sa == sb) return Type1Coordinated{};
  if (std::includes(sa.begin(), sa.end(), sb.begin(), sb.end())) return Type2Superset{a.root_id()};
  if (std::includes(sb.begin(), sb.end(), sa.begin(), sa.end())) return Type2Superset{b.root_id()};
  return Type2Superset{std::nullopt};
}

const char* to_string(Compatibility c) {
  return c == Compatibility::Compatible ? "Compatible" : "Incompatible";
}

const MatrixCell& CompatibilityMatrix::cell(const RootId& origin, const RootId& query) const {
  for (const MatrixCell& c : cells) {
    if (c.origin == origin && c.query == query) return c;
  }
  throw Error(ErrorKind::UnknownRoot, origin + " x " + query + " is not a cell of this matrix");
}

std::vector<DomainName> names_assigned_by(const RootId& origin, const Universe& u) {
  std::vector<DomainName> out;
  for (const auto& [tld, d] : u.root(origin).delegations()) {
    auto recorded = u.origin(tld, origin);
    if (!recorded) {
      throw Error(ErrorKind::InconsistentUniverse, origin + "/" + tld.str() + " has no assignment origin");
    }
    if (*recorded != origin) continue;
    const RegistryZone* zone = u.find_registry_zone(d.registry_id(), tld);
    if (!zone) continue;
    for (const auto& [second, r] : zone->registrations()) out.push_back(second_level_name(second, tld));
  }
  std::sort(out.begin(), out.end(), [](const DomainName& x, const DomainName& y) {
    return x.to_string() < y.to_string();
  });
  return out;
}

namespace {

MatrixCell evaluate_cell(const RootId& origin, const std::vector<DomainName>& names, const RootId& query,
                         const Universe& u) {
  MatrixCell cell{origin, query, Compatibility::Compatible, names.empty(), {}};
  const ResolverConfig resolver{"matrix", query};
  for (const DomainName& name : names) {
    const Address expected = intended_address(name, origin, u);
    const ResolutionOutcome got = resolve(name, resolver, u);
    if (resolved_to(got, expected)) {
      ++cell.evidence.resolved_intended;
    } else if (std::holds_alternative<Resolved>(got)) {
      ++cell.evidence.divergent;
    } else if (std::holds_alternative<NameError>(got)) {
      ++cell.evidence.name_error;
    } else {
      ++cell.evidence.broken_delegation;
    }
  }
  if (cell.evidence.resolved_intended != names.size()) cell.value = Compatibility::Incompatible;
  return cell;
}

}  // namespace

CompatibilityMatrix compatibility_matrix(const RootId& a, const RootId& b, const Universe& u) {
  u.root(a);
  u.root(b);
  const auto names_a = names_assigned_by(a, u);
  const auto names_b = names_assigned_by(b, u);
  return CompatibilityMatrix{a,
                             b,
                             {evaluate_cell(a, names_a, a, u), evaluate_cell(a, names_a, b, u),
                              evaluate_cell(b, names_b, a, u), evaluate_cell(b, names_b, b, u)}};
}

std::string render_matrix(const CompatibilityMatrix& m, bool with_evidence) {
  const std::string corner = "origin \\ query";
  const std::string col_a = "users of " + m.first;
  const std::string col_b = "users of " + m.second;
  const std::size_t w0 = std::max({corner.size(), m.first.size(), m.second.size()}) + 2;
  const std::size_t w1 = std::max(col_a.size(), std::string("Incompatible").size()) + 2;

  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };

  std::ostringstream out;
  out << pad(corner, w0) << pad(col_a, w1) << col_b << '\n';
  for (int row = 0; row < 2; ++row) {
    const MatrixCell& left = m.cells[row * 2];
    const MatrixCell& right = m.cells[row * 2 + 1];
    out << pad(left.origin, w0) << pad(to_string(left.value), w1) << to_string(right.value) << '\n';
  }
  if (with_evidence) {
    out << "evidence (resolved-intended/name-error/divergent/broken-delegation):\n";
    for (const MatrixCell& c : m.cells) {
      out << "  " << c.origin << " -> " << c.query << ": " << c.evidence.resolved_intended << '/'
          << c.evidence.name_error << '/' << c.evidence.divergent << '/' << c.evidence.broken_delegation;
      if (c.vacuous) out << " (vacuous)";
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace altroot
