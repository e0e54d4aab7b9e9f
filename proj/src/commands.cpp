#include "altroot/commands.hpp"

#include <future>
#include <ostream>
#include <vector>

#include "altroot/competition.hpp"
#include "altroot/error.hpp"
#include "altroot/scenario.hpp"
#include "altroot/zone_io.hpp"

namespace altroot {

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

RootZone load_zone(const std::filesystem::path& p) {
  try {
    return parse_root_zone(read_text_file(p), p.stem().string());
  } catch (const Error& e) {
    throw Error(e.kind(), p.string() + ": " + e.what());
  }
}

std::filesystem::path seed_path(const std::filesystem::path& csv, std::uint64_t seed) {
  std::filesystem::path out = csv;
  out.replace_filename(csv.stem().string() + ".seed" + std::to_string(seed) + csv.extension().string());
  return out;
}

}  // namespace

int cmd_classify(const std::filesystem::path& zone_a, const std::filesystem::path& zone_b, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const RootZone a = load_zone(zone_a);
    const RootZone b = load_zone(zone_b);
    const CompetitionType type = classify(a, b);
    out << to_string(type) << '\n';
    const auto conflicts = collisions(a, b);
    out << "collisions:";
    if (conflicts.empty()) out << " none";
    for (const Label& l : conflicts) out << ' ' << l.str();
    out << '\n';
    return kExitOk;
  });
}

int cmd_matrix(const std::filesystem::path& universe_dir, std::ostream& out, std::ostream& err,
               const std::optional<std::string>& pair) {
  return guarded(err, [&] {
    const Universe u = load_universe_dir(universe_dir);
    RootId a, b;
    if (pair) {
      auto ids = split_list(*pair);
      if (ids.size() != 2) throw Error(ErrorKind::ConfigError, "--pair expects two root ids 'a,b'");
      a = ids[0];
      b = ids[1];
    } else {
      if (u.root_order().size() < 2) throw Error(ErrorKind::InconsistentUniverse, "need at least two roots");
      a = u.root_order()[0];
      b = u.root_order()[1];
    }
    out << to_string(classify(u.root(a), u.root(b))) << '\n';
    out << render_matrix(compatibility_matrix(a, b, u));
    return kExitOk;
  });
}

int cmd_simulate(const std::filesystem::path& scenario, const std::filesystem::path& csv, std::size_t seeds,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (seeds == 0) throw Error(ErrorKind::ConfigError, "--seeds must be at least 1");
    const Scenario sc = load_scenario(scenario);
    const Universe universe = load_universe(sc.universe);

    std::vector<std::future<SimulationReport>> jobs;
    for (std::size_t k = 0; k < seeds; ++k) {
      jobs.push_back(std::async(std::launch::async, [&sc, &universe, seed = sc.seed + k] {
        return simulate(sc, universe, seed);
      }));
    }
    // Collect everything before writing so a failing seed leaves no partial output.
    std::vector<SimulationReport> reports;
    for (auto& job : jobs) reports.push_back(job.get());

    for (std::size_t k = 0; k < seeds; ++k) {
      const std::uint64_t seed = sc.seed + k;
      const auto path = seeds == 1 ? csv : seed_path(csv, seed);
      write_text_file(path, reports[k].result.series.to_csv());
      out << reports[k].summary;
      out << "csv: " << path.string() << '\n';
    }
    return kExitOk;
  });
}

}  // namespace altroot
