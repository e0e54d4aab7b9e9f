#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "altroot/competition.hpp"
#include "altroot/dynamics.hpp"
#include "altroot/policy.hpp"
#include "altroot/zone.hpp"

namespace altroot {

// Line-oriented configuration: "[section]" headers, "key = value" entries,
// '#' or ';' comments. Sections may repeat; keys may not repeat within one.
struct ConfigSection {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(std::string_view key) const;
};

struct ConfigFile {
  std::vector<ConfigSection> sections;

  std::vector<const ConfigSection*> all(std::string_view name) const;
  const ConfigSection* first(std::string_view name) const;
};

// Throws Error(ConfigError) naming the line.
ConfigFile parse_config(std::string_view text);

std::vector<std::string> split_list(std::string_view value);

/// Roots load in listed order, which fixes assignment origins.
struct UniverseSources {
  std::vector<std::filesystem::path> roots;
  std::vector<std::filesystem::path> registries;
};

Universe load_universe(const UniverseSources& sources);
// Reads <dir>/universe.ini.
Universe load_universe_dir(const std::filesystem::path& dir);

struct Scenario {
  std::string name;
  UniverseSources universe;
  PopulationSpec population;
  UtilityParams params;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<Intervention> interventions;
};

// Paths inside the file are relative to the file's directory.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                        const std::string& default_name = "scenario");

struct SimulationReport {
  RunResult result;
  std::vector<std::string> events;
  std::vector<std::string> classifications;
  std::size_t orphan_total = 0;
  std::optional<RootId> tipped_to;
  std::string summary;
};

// share >= this counts as a single-root outcome
inline constexpr double kTippingShare = 0.99;

SimulationReport simulate(const Scenario& scenario, std::uint64_t seed);
SimulationReport simulate(const Scenario& scenario, const Universe& universe, std::uint64_t seed);

}  // namespace altroot
