#include "altroot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "altroot/competition.hpp"
#include "altroot/error.hpp"
#include "altroot/resolution.hpp"
#include "altroot/rng.hpp"

namespace altroot {

double OperatorAgent::intrinsic(const RootId& root) const {
  auto it = intrinsic_weights.find(root);
  return it == intrinsic_weights.end() ? 0.0 : it->second;
}

void UtilityParams::validate() const {
  auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
  if (bad(alpha)) throw Error(ErrorKind::InvalidParams, "alpha must be a non-negative number");
  if (bad(beta)) throw Error(ErrorKind::InvalidParams, "beta must be a non-negative number");
  if (bad(switch_cost)) throw Error(ErrorKind::InvalidParams, "switch_cost must be a non-negative number");
  if (bad(reconsider_prob) || reconsider_prob > 1.0) {
    throw Error(ErrorKind::InvalidParams, "reconsider_prob must lie in [0, 1]");
  }
}

void Population::validate(const Universe& u) const {
  if (step_index < 0) throw Error(ErrorKind::InvalidParams, "negative step index");
  std::set<std::string> ids;
  for (const OperatorAgent& a : agents) {
    if (!ids.insert(a.agent_id).second) throw Error(ErrorKind::InvalidParams, "duplicate agent id " + a.agent_id);
    if (!u.has_root(a.current_root)) throw Error(ErrorKind::UnknownRoot, a.agent_id + " sits on " + a.current_root);
    for (const auto& [root, w] : a.intrinsic_weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw Error(ErrorKind::InvalidParams, a.agent_id + ": negative intrinsic weight for " + root);
      }
    }
  }
}

std::size_t Population::count_on(const RootId& root) const {
  return static_cast<std::size_t>(
      std::count_if(agents.begin(), agents.end(), [&](const OperatorAgent& a) { return a.current_root == root; }));
}

namespace {

std::optional<DomainName> pick(std::size_t agent_index, const std::vector<DomainName>& names) {
  if (names.empty()) return std::nullopt;
  return names[agent_index % names.size()];
}

bool reachable_from(const std::optional<DomainName>& name, const RootId& origin, const RootId& candidate,
                    const Universe& u) {
  if (!name) return true;
  return resolved_to(resolve(*name, ResolverConfig{"reach", candidate}, u), intended_address(*name, origin, u));
}

double combine(double intrinsic, std::size_t reachable, std::size_t others, bool switching,
               const UtilityParams& p) {
  const double r = others == 0 ? 1.0 : static_cast<double>(reachable) / static_cast<double>(others);
  return p.alpha * intrinsic + p.beta * r - (switching ? p.switch_cost : 0.0);
}

}  // namespace

std::optional<DomainName> representative_name(std::size_t agent_index, const RootId& current_root,
                                              const Universe& u) {
  return pick(agent_index, names_assigned_by(current_root, u));
}

namespace {

std::pair<std::size_t, std::size_t> reach_counts(const OperatorAgent& agent, const RootId& candidate,
                                                 const Population& pop, const Universe& u) {
  u.root(candidate);
  std::map<RootId, std::vector<DomainName>> classes;
  std::size_t reachable = 0;
  std::size_t others = 0;
  for (std::size_t j = 0; j < pop.agents.size(); ++j) {
    const OperatorAgent& other = pop.agents[j];
    if (other.agent_id == agent.agent_id) continue;
    ++others;
    auto it = classes.find(other.current_root);
    if (it == classes.end()) it = classes.emplace(other.current_root, names_assigned_by(other.current_root, u)).first;
    if (reachable_from(pick(j, it->second), other.current_root, candidate, u)) ++reachable;
  }
  return {reachable, others};
}

}  // namespace

double reach(const OperatorAgent& agent, const RootId& candidate, const Population& pop, const Universe& u) {
  auto [reachable, others] = reach_counts(agent, candidate, pop, u);
  return others == 0 ? 1.0 : static_cast<double>(reachable) / static_cast<double>(others);
}

double utility(const OperatorAgent& agent, const RootId& candidate, const Population& pop, const Universe& u,
               const UtilityParams& p) {
  auto [reachable, others] = reach_counts(agent, candidate, pop, u);
  return combine(agent.intrinsic(candidate), reachable, others, candidate != agent.current_root, p);
}

ReachTable::ReachTable(std::size_t agent_count, const Universe& u) {
  for (const auto& [id, zone] : u.roots()) roots_.push_back(id);
  const std::size_t r = roots_.size();
  std::vector<std::vector<DomainName>> classes;
  for (const RootId& id : roots_) classes.push_back(names_assigned_by(id, u));

  // Reachability depends on the agent only through its representative name,
  // so evaluate each distinct (root, name slot) once.
  std::vector<std::vector<std::vector<unsigned char>>> by_slot(r);
  for (std::size_t cur = 0; cur < r; ++cur) {
    const std::size_t slots = std::max<std::size_t>(classes[cur].size(), 1);
    by_slot[cur].assign(slots, std::vector<unsigned char>(r, 1));
    for (std::size_t s = 0; s < slots && !classes[cur].empty(); ++s) {
      for (std::size_t cand = 0; cand < r; ++cand) {
        by_slot[cur][s][cand] = reachable_from(classes[cur][s], roots_[cur], roots_[cand], u) ? 1 : 0;
      }
    }
  }
  bits_.resize(agent_count * r * r);
  for (std::size_t j = 0; j < agent_count; ++j) {
    for (std::size_t cur = 0; cur < r; ++cur) {
      const auto& row = by_slot[cur][j % by_slot[cur].size()];
      std::copy(row.begin(), row.end(), bits_.begin() + static_cast<std::ptrdiff_t>((j * r + cur) * r));
    }
  }
}

std::size_t ReachTable::root_index(const RootId& id) const {
  auto it = std::lower_bound(roots_.begin(), roots_.end(), id);
  if (it == roots_.end() || *it != id) throw Error(ErrorKind::UnknownRoot, id);
  return static_cast<std::size_t>(it - roots_.begin());
}

Population step(const Population& pop, const Universe& u, const UtilityParams& p, std::uint64_t seed) {
  return step(pop, ReachTable(pop.agents.size(), u), p, seed);
}

Population step(const Population& pop, const ReachTable& table, const UtilityParams& p, std::uint64_t seed) {
  p.validate();
  const std::size_t n = pop.agents.size();
  const std::size_t r = table.roots().size();
  const CounterRng rng(seed);

  std::vector<std::size_t> current(n);
  std::vector<std::size_t> totals(r, 0);
  for (std::size_t j = 0; j < n; ++j) {
    current[j] = table.root_index(pop.agents[j].current_root);
    for (std::size_t c = 0; c < r; ++c) totals[c] += table.reachable(j, current[j], c) ? 1 : 0;
  }

  Population next = pop;
  next.step_index = pop.step_index + 1;
  const auto step_key = static_cast<std::uint64_t>(pop.step_index);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rng.uniform(RngStream::Reconsider, step_key, i) < p.reconsider_prob)) continue;
    const OperatorAgent& agent = pop.agents[i];
    const std::size_t others = n - 1;
    auto score = [&](std::size_t c) {
      const std::size_t reachable = totals[c] - (table.reachable(i, current[i], c) ? 1 : 0);
      return combine(agent.intrinsic(table.roots()[c]), reachable, others, c != current[i], p);
    };
    std::size_t best = current[i];
    double best_utility = score(best);
    for (std::size_t c = 0; c < r; ++c) {
      const double candidate = score(c);
      if (candidate > best_utility) {
        best = c;
        best_utility = candidate;
      }
    }
    next.agents[i].current_root = table.roots()[best];
  }
  return next;
}

double TimeSeries::share(std::size_t row, std::size_t root) const {
  return static_cast<double>(counts.at(row).at(root)) / static_cast<double>(agent_count);
}

double TimeSeries::share(std::size_t row, const RootId& root) const {
  auto it = std::find(roots.begin(), roots.end(), root);
  if (it == roots.end()) throw Error(ErrorKind::UnknownRoot, root);
  return share(row, static_cast<std::size_t>(it - roots.begin()));
}

std::string TimeSeries::to_csv() const {
  std::ostringstream out;
  out << "step";
  for (const RootId& id : roots) out << ',' << id;
  out << '\n';
  char buf[32];
  for (std::size_t row = 0; row < counts.size(); ++row) {
    out << row;
    for (std::size_t c = 0; c < roots.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.6f", agent_count ? share(row, c) : 0.0);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::size_t> tally(const Population& pop, const std::vector<RootId>& roots) {
  std::vector<std::size_t> out(roots.size(), 0);
  for (const OperatorAgent& a : pop.agents) {
    auto it = std::lower_bound(roots.begin(), roots.end(), a.current_root);
    ++out[static_cast<std::size_t>(it - roots.begin())];
  }
  return out;
}

}  // namespace

RunResult run(Universe u, Population pop0, const UtilityParams& p, std::int64_t horizon, std::uint64_t seed,
              const StepHook& hook) {
  if (horizon < 0) throw Error(ErrorKind::InvalidParams, "horizon must be non-negative");
  p.validate();
  pop0.validate(u);

  RunResult result{TimeSeries{}, std::move(pop0), std::move(u)};
  Population& pop = result.final_population;
  Universe& world = result.final_universe;
  TimeSeries& series = result.series;
  for (const auto& [id, zone] : world.roots()) series.roots.push_back(id);
  series.agent_count = pop.agents.size();
  series.counts.push_back(tally(pop, series.roots));

  auto table = std::make_optional<ReachTable>(pop.agents.size(), world);
  for (std::int64_t k = 0; k < horizon; ++k) {
    if (hook && hook(pop.step_index, world, pop)) {
      world.validate();
      pop.validate(world);
      table.emplace(pop.agents.size(), world);
    }
    pop = step(pop, *table, p, seed);
    series.counts.push_back(tally(pop, series.roots));
  }
  return result;
}

std::vector<std::size_t> apportion(std::size_t total, std::span<const double> shares) {
  std::vector<std::size_t> out(shares.size(), 0);
  if (shares.empty()) return out;
  const double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double exact = static_cast<double>(total) * shares[i] / sum;
    out[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    assigned += out[i];
    remainders.emplace_back(exact - static_cast<double>(out[i]), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first + 1e-12; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[remainders[k % remainders.size()].second];
  return out;
}

Population make_population(const PopulationSpec& spec, const Universe& u, std::uint64_t seed) {
  std::vector<double> weights;
  double sum = 0.0;
  for (const auto& [root, share] : spec.shares) {
    if (!u.has_root(root)) throw Error(ErrorKind::UnknownRoot, root);
    if (!std::isfinite(share) || share < 0.0) throw Error(ErrorKind::InvalidParams, "bad share for " + root);
    weights.push_back(share);
    sum += share;
  }
  if (spec.shares.empty() || std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidParams, "initial shares must sum to 1");
  }
  for (const auto& [root, range] : spec.intrinsic) {
    if (!u.has_root(root)) throw Error(ErrorKind::UnknownRoot, root);
    if (!(range.low >= 0.0) || !(range.high >= range.low) || !std::isfinite(range.high)) {
      throw Error(ErrorKind::InvalidParams, "bad intrinsic range for " + root);
    }
  }

  const auto counts = apportion(spec.agent_count, weights);
  const CounterRng rng(seed);
  const int width = static_cast<int>(std::to_string(spec.agent_count ? spec.agent_count - 1 : 0).size());

  Population pop;
  std::size_t index = 0;
  for (std::size_t s = 0; s < spec.shares.size(); ++s) {
    for (std::size_t k = 0; k < counts[s]; ++k, ++index) {
      OperatorAgent agent;
      char id[32];
      std::snprintf(id, sizeof id, "agent-%0*zu", width, index);
      agent.agent_id = id;
      agent.current_root = spec.shares[s].first;
      std::uint64_t root_key = 0;
      for (const auto& [root, range] : spec.intrinsic) {
        const double x = rng.uniform(RngStream::Intrinsic, 0, index, root_key++);
        agent.intrinsic_weights[root] = range.low + (range.high - range.low) * x;
      }
      pop.agents.push_back(std::move(agent));
    }
  }
  return pop;
}

}  // namespace altroot
