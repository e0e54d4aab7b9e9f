#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "altroot/names.hpp"
#include "altroot/zone.hpp"

namespace altroot {

struct Type1Coordinated {
  bool operator==(const Type1Coordinated&) const = default;
};

// superset_root is empty when neither TLD set contains the other.
struct Type2Superset {
  std::optional<RootId> superset_root;
  bool operator==(const Type2Superset&) const = default;
};

struct Type3Conflicting {
  std::set<Label> collisions;
  bool operator==(const Type3Conflicting&) const = default;
};

using CompetitionType = std::variant<Type1Coordinated, Type2Superset, Type3Conflicting>;

// "Type1Coordinated", "Type2Superset(root-C)", "Type2Superset(none)",
// "Type3Conflicting {biz, hola}".
std::string to_string(const CompetitionType& type);

/// TLDs both roots delegate, but to a different registry or server set.
std::set<Label> collisions(const RootZone& a, const RootZone& b);

CompetitionType classify(const RootZone& a, const RootZone& b);

enum class Compatibility { Compatible, Incompatible };

const char* to_string(Compatibility c);

struct CellEvidence {
  std::size_t resolved_intended = 0;
  std::size_t name_error = 0;
  std::size_t divergent = 0;
  std::size_t broken_delegation = 0;

  std::size_t total() const { return resolved_intended + name_error + divergent + broken_delegation; }
  bool operator==(const CellEvidence&) const = default;
};

struct MatrixCell {
  RootId origin;
  RootId query;
  Compatibility value = Compatibility::Compatible;
  // True when the origin assigned no names, so the cell holds trivially.
  bool vacuous = false;
  CellEvidence evidence;

  bool operator==(const MatrixCell&) const = default;
};

/// Rows are the origin of assignment, columns the root users query, both in
/// (first, second) order.
struct CompatibilityMatrix {
  RootId first;
  RootId second;
  std::array<MatrixCell, 4> cells;

  const MatrixCell& cell(const RootId& origin, const RootId& query) const;
  bool operator==(const CompatibilityMatrix&) const = default;
};

/// Every registered name under a TLD whose assignment originates at `origin`
/// (as recorded for origin's own delegations), in sorted order.
std::vector<DomainName> names_assigned_by(const RootId& origin, const Universe& u);

CompatibilityMatrix compatibility_matrix(const RootId& a, const RootId& b, const Universe& u);

std::string render_matrix(const CompatibilityMatrix& m, bool with_evidence = true);

}  // namespace altroot
