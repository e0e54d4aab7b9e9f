#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "altroot/names.hpp"
#include "altroot/zone.hpp"

namespace altroot {

/// A resolver operator choosing which root its resolvers trust.
struct OperatorAgent {
  std::string agent_id;
  RootId current_root;
  // Missing roots are valued at zero.
  std::map<RootId, double> intrinsic_weights;

  double intrinsic(const RootId& root) const;
};

// utility = alpha * intrinsic + beta * reach - switch_cost (when switching).
struct UtilityParams {
  double alpha = 0.0;
  double beta = 1.0;
  double switch_cost = 0.0;
  double reconsider_prob = 0.1;

  // Throws InvalidParams.
  void validate() const;
};

struct Population {
  std::vector<OperatorAgent> agents;
  std::int64_t step_index = 0;

  // Throws InvalidParams on duplicate ids, UnknownRoot on a bad current root.
  void validate(const Universe& u) const;
  std::size_t count_on(const RootId& root) const;
};

/// The name an agent is known by while it sits on `current_root`: entry
/// (agent_index mod n) of the names that root assigned. Empty when the root
/// assigned none; such agents count as reachable from everywhere.
std::optional<DomainName> representative_name(std::size_t agent_index, const RootId& current_root,
                                              const Universe& u);

/// Fraction of the other agents whose representative name a resolver on
/// `candidate` resolves to its intended address. 1 when there are no others.
double reach(const OperatorAgent& agent, const RootId& candidate, const Population& pop, const Universe& u);

double utility(const OperatorAgent& agent, const RootId& candidate, const Population& pop, const Universe& u,
               const UtilityParams& p);

/// Precomputed reachability: for agent j sitting on root r, whether a
/// resolver on root c resolves j's representative name as intended.
/// Valid until the universe changes.
class ReachTable {
 public:
  ReachTable(std::size_t agent_count, const Universe& u);

  const std::vector<RootId>& roots() const noexcept { return roots_; }
  std::size_t root_index(const RootId& id) const;
  bool reachable(std::size_t agent, std::size_t current, std::size_t candidate) const {
    return bits_[(agent * roots_.size() + current) * roots_.size() + candidate] != 0;
  }

 private:
  std::vector<RootId> roots_;
  std::vector<unsigned char> bits_;
};

/// One revision round. Each agent reconsiders with probability
/// reconsider_prob, evaluated against the population as it stood at the
/// start of the step, and adopts the utility-maximizing root. Ties keep the
/// current root, then prefer the smallest root id.
Population step(const Population& pop, const Universe& u, const UtilityParams& p, std::uint64_t seed);
Population step(const Population& pop, const ReachTable& table, const UtilityParams& p, std::uint64_t seed);

/// Per-step agent counts per root. Shares are counts over agent_count.
struct TimeSeries {
  std::vector<RootId> roots;
  std::size_t agent_count = 0;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t rows() const { return counts.size(); }
  double share(std::size_t row, std::size_t root) const;
  double share(std::size_t row, const RootId& root) const;
  // Header "step,<root>,...", shares printed with six decimals.
  std::string to_csv() const;

  bool operator==(const TimeSeries&) const = default;
};

struct RunResult {
  TimeSeries series;
  Population final_population;
  Universe final_universe;
};

// Called after the row for `completed_step` is recorded and before the next
// step runs. Returns true when it modified the universe.
using StepHook = std::function<bool(std::int64_t completed_step, Universe& u, Population& pop)>;

/// Runs `horizon` steps. The series has horizon + 1 rows, row 0 being pop0.
RunResult run(Universe u, Population pop0, const UtilityParams& p, std::int64_t horizon, std::uint64_t seed,
              const StepHook& hook = {});

/// Intrinsic weights are drawn uniformly on [low, high] per agent.
struct WeightRange {
  double low = 0.0;
  double high = 0.0;
};

struct PopulationSpec {
  std::size_t agent_count = 0;
  std::vector<std::pair<RootId, double>> shares;
  std::map<RootId, WeightRange> intrinsic;
};

/// Largest-remainder apportionment of `total` by `shares`; ties favour the
/// earlier entry.
std::vector<std::size_t> apportion(std::size_t total, std::span<const double> shares);

// Agents are laid out in share order: the first n0 on shares[0], and so on.
Population make_population(const PopulationSpec& spec, const Universe& u, std::uint64_t seed);

}  // namespace altroot
