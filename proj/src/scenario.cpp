#include "altroot/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "altroot/error.hpp"
#include "altroot/zone_io.hpp"

namespace altroot {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void config_error(const ConfigSection& section, std::string_view key, const std::string& what) {
  throw Error(ErrorKind::ConfigError,
              "[" + section.name + "] " + std::string(key) + " (line " + std::to_string(section.line) + "): " + what);
}

class SectionReader {
 public:
  explicit SectionReader(const ConfigSection& s) : section_(s) {}

  const std::string* optional(std::string_view key) {
    used_.insert(std::string(key));
    return section_.find(key);
  }

  const std::string& required(std::string_view key) {
    const std::string* v = optional(key);
    if (!v) config_error(section_, key, "missing");
    return *v;
  }

  double number(std::string_view key, const std::string& text) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) config_error(section_, key, "not a number: " + text);
    return v;
  }

  double number(std::string_view key) { return number(key, required(key)); }

  std::uint64_t integer(std::string_view key) {
    const std::string& text = required(key);
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      config_error(section_, key, "not a non-negative integer: " + text);
    }
    return v;
  }

  Label label(std::string_view key) {
    try {
      return Label::parse(required(key));
    } catch (const Error& e) {
      config_error(section_, key, e.what());
    }
  }

  template <typename Fn>
  auto guarded(std::string_view key, Fn&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      config_error(section_, key, e.what());
    }
  }

  // Claims every key with this prefix, returning (suffix, value) pairs.
  std::vector<std::pair<std::string, std::string>> prefixed(std::string_view prefix) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : section_.entries) {
      if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0) {
        used_.insert(k);
        out.emplace_back(k.substr(prefix.size()), v);
      }
    }
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : section_.entries) {
      if (!used_.count(k)) config_error(section_, k, "unknown key");
    }
  }

  const ConfigSection& section() const { return section_; }

 private:
  const ConfigSection& section_;
  std::set<std::string> used_;
};

std::vector<std::filesystem::path> paths(const std::string* value, const std::filesystem::path& base) {
  std::vector<std::filesystem::path> out;
  if (!value) return out;
  for (const std::string& item : split_list(*value)) out.push_back(base / item);
  return out;
}

UniverseSources read_universe_section(const ConfigSection& section, const std::filesystem::path& base) {
  SectionReader r(section);
  UniverseSources sources;
  if (const std::string* dir = r.optional("dir")) {
    const std::filesystem::path root = base / *dir;
    ConfigFile inner = parse_config(read_text_file(root / "universe.ini"));
    const ConfigSection* s = inner.first("universe");
    if (!s) throw Error(ErrorKind::ConfigError, (root / "universe.ini").string() + ": no [universe] section");
    sources = read_universe_section(*s, root);
  }
  auto roots = paths(r.optional("roots"), base);
  auto registries = paths(r.optional("registries"), base);
  for (const auto& dir : paths(r.optional("registry_dirs"), base)) {
    std::vector<std::filesystem::path> found;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".reg") found.push_back(entry.path());
    }
    if (ec) config_error(section, "registry_dirs", dir.string() + ": " + ec.message());
    std::sort(found.begin(), found.end());
    registries.insert(registries.end(), found.begin(), found.end());
  }
  sources.roots.insert(sources.roots.end(), roots.begin(), roots.end());
  sources.registries.insert(sources.registries.end(), registries.begin(), registries.end());
  r.finish();
  if (sources.roots.empty()) config_error(section, "roots", "no root zones listed");
  return sources;
}

std::vector<Address> read_servers(SectionReader& r) {
  std::vector<Address> servers;
  for (const std::string& s : split_list(r.required("servers"))) {
    servers.push_back(r.guarded("servers", [&] { return Address::parse(s); }));
  }
  return servers;
}

Intervention read_intervention(const ConfigSection& section, const std::filesystem::path& base) {
  SectionReader r(section);
  Intervention iv;
  iv.at_step = static_cast<std::int64_t>(r.integer("at_step"));
  const std::string action = r.required("action");

  auto delegation = [&](const Label& tld) {
    const std::string registry = r.required("registry");
    auto servers = read_servers(r);
    return r.guarded("registry", [&] { return TldDelegation(tld, registry, servers); });
  };

  if (action == "mutual_recognition") {
    iv.action = MutualRecognition{r.required("a"), r.required("b")};
  } else if (action == "conflict_avoiding_add") {
    const Label tld = r.label("tld");
    iv.action = ConflictAvoidingAdd{r.required("root"), delegation(tld), r.required("other")};
  } else if (action == "conflicting_add") {
    const Label tld = r.label("tld");
    iv.action = ConflictingAdd{r.required("root"), delegation(tld)};
  } else if (action == "threshold_admission") {
    iv.action = ThresholdAdmission{r.required("root"), r.label("tld"), r.integer("min_names"),
                                   r.integer("min_disparate_users")};
  } else if (action == "bulk_reassign") {
    const double fraction = r.number("fraction");
    if (!(fraction >= 0.0 && fraction <= 1.0)) config_error(section, "fraction", "must lie in [0, 1]");
    iv.action = BulkReassign{fraction, r.required("to_root")};
  } else {
    config_error(section, "action", "unknown action '" + action + "'");
  }
  if (const std::string* zone = r.optional("registry_zone")) {
    iv.registry_zone =
        r.guarded("registry_zone", [&] { return parse_registry_zone(read_text_file(base / *zone)); });
  }
  r.finish();
  return iv;
}

WeightRange read_range(SectionReader& r, const std::string& key, const std::string& text) {
  std::string_view v = trim(text);
  constexpr std::string_view kUniform = "uniform(";
  if (v.rfind(kUniform, 0) == 0 && v.back() == ')') {
    auto parts = split_list(v.substr(kUniform.size(), v.size() - kUniform.size() - 1));
    if (parts.size() != 2) config_error(r.section(), key, "expected uniform(low, high)");
    WeightRange range{r.number(key, parts[0]), r.number(key, parts[1])};
    if (!(range.low >= 0.0 && range.high >= range.low)) config_error(r.section(), key, "need 0 <= low <= high");
    return range;
  }
  const double x = r.number(key, std::string(v));
  if (!(x >= 0.0)) config_error(r.section(), key, "must be non-negative");
  return {x, x};
}

}  // namespace

const std::string* ConfigSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<const ConfigSection*> ConfigFile::all(std::string_view name) const {
  std::vector<const ConfigSection*> out;
  for (const ConfigSection& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

const ConfigSection* ConfigFile::first(std::string_view name) const {
  auto v = all(name);
  return v.empty() ? nullptr : v.front();
}

ConfigFile parse_config(std::string_view text) {
  ConfigFile file;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (std::size_t c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorKind::ConfigError, where + "unterminated section header");
      std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) throw Error(ErrorKind::ConfigError, where + "empty section name");
      file.sections.push_back({std::move(name), line_no, {}});
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::ConfigError, where + "expected 'key = value'");
    if (file.sections.empty()) throw Error(ErrorKind::ConfigError, where + "entry outside any section");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorKind::ConfigError, where + "empty key");
    ConfigSection& s = file.sections.back();
    if (s.find(key)) throw Error(ErrorKind::ConfigError, where + "[" + s.name + "] " + key + " given twice");
    s.entries.emplace_back(std::move(key), std::move(value));
  }
  return file;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::string_view item = trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Universe load_universe(const UniverseSources& sources) {
  Universe u;
  auto with_file = [](const std::filesystem::path& p, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.kind(), p.string() + ": " + e.what());
    }
  };
  for (const auto& p : sources.roots) {
    with_file(p, [&] {
      u.add_root(parse_root_zone(read_text_file(p), p.stem().string()));
      return 0;
    });
  }
  for (const auto& p : sources.registries) {
    with_file(p, [&] {
      u.add_registry_zone(parse_registry_zone(read_text_file(p)));
      return 0;
    });
  }
  u.validate();
  return u;
}

Universe load_universe_dir(const std::filesystem::path& dir) {
  const auto ini = dir / "universe.ini";
  ConfigFile file = parse_config(read_text_file(ini));
  const ConfigSection* s = file.first("universe");
  if (!s) throw Error(ErrorKind::ConfigError, ini.string() + ": no [universe] section");
  return load_universe(read_universe_section(*s, dir));
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.parent_path(), path.stem().string());
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                        const std::string& default_name) {
  ConfigFile file = parse_config(text);
  Scenario sc;
  sc.name = default_name;

  static const std::set<std::string> known = {"scenario", "universe", "population", "params", "run",
                                              "intervention"};
  for (const ConfigSection& s : file.sections) {
    if (!known.count(s.name)) throw Error(ErrorKind::ConfigError, "[" + s.name + "]: unknown section");
    if (s.name != "intervention" && file.all(s.name).size() > 1) {
      throw Error(ErrorKind::ConfigError, "[" + s.name + "]: section given twice");
    }
  }
  auto need = [&](const char* name) -> const ConfigSection& {
    const ConfigSection* s = file.first(name);
    if (!s) throw Error(ErrorKind::ConfigError, std::string("[") + name + "]: missing section");
    return *s;
  };

  if (const ConfigSection* s = file.first("scenario")) {
    SectionReader r(*s);
    if (const std::string* name = r.optional("name")) sc.name = *name;
    r.finish();
  }

  sc.universe = read_universe_section(need("universe"), base_dir);

  {
    SectionReader r(need("population"));
    sc.population.agent_count = r.integer("agents");
    double total = 0.0;
    for (const auto& [root, value] : r.prefixed("share.")) {
      const double share = r.number("share." + root, value);
      if (!(share >= 0.0 && share <= 1.0)) config_error(r.section(), "share." + root, "must lie in [0, 1]");
      sc.population.shares.emplace_back(root, share);
      total += share;
    }
    if (sc.population.shares.empty()) config_error(r.section(), "share.<root>", "no initial shares");
    if (std::abs(total - 1.0) > 1e-9) config_error(r.section(), "share.<root>", "shares must sum to 1");
    for (const auto& [root, value] : r.prefixed("intrinsic.")) {
      sc.population.intrinsic[root] = read_range(r, "intrinsic." + root, value);
    }
    r.finish();
  }

  {
    SectionReader r(need("params"));
    sc.params.alpha = r.number("alpha");
    sc.params.beta = r.number("beta");
    sc.params.switch_cost = r.number("switch_cost");
    sc.params.reconsider_prob = r.number("reconsider_prob");
    r.guarded("params", [&] {
      sc.params.validate();
      return 0;
    });
    r.finish();
  }

  {
    SectionReader r(need("run"));
    sc.horizon = static_cast<std::int64_t>(r.integer("horizon"));
    sc.seed = r.integer("seed");
    r.finish();
  }

  for (const ConfigSection* s : file.all("intervention")) sc.interventions.push_back(read_intervention(*s, base_dir));
  return sc;
}

SimulationReport simulate(const Scenario& scenario, std::uint64_t seed) {
  return simulate(scenario, load_universe(scenario.universe), seed);
}

SimulationReport simulate(const Scenario& sc, const Universe& universe, std::uint64_t seed) {
  SimulationReport report;
  for (const auto& [root, share] : sc.population.shares) {
    if (!universe.has_root(root)) throw Error(ErrorKind::ConfigError, "[population] share." + root + ": unknown root");
  }
  Population pop0 = make_population(sc.population, universe, seed);

  const auto& order = universe.root_order();
  const bool pairwise = order.size() >= 2;
  auto classification = [&](const Universe& u) {
    return pairwise ? to_string(classify(u.root(order[0]), u.root(order[1]))) : std::string("n/a (single root)");
  };
  report.classifications.push_back(classification(universe));

  std::ostringstream events;
  StepHook hook = [&](std::int64_t completed, Universe& u, Population& pop) {
    bool changed = false;
    for (const Intervention& iv : sc.interventions) {
      if (iv.at_step != completed) continue;
      InterventionOutcome outcome = apply_intervention(iv, u, pop, seed);
      changed = changed || outcome.universe_changed;
      report.events.push_back(outcome.description);
      events << outcome.description << '\n';
      if (outcome.orphans) {
        report.orphan_total += outcome.orphans->orphan_count();
        std::istringstream lines(render_orphan_report(*outcome.orphans));
        for (std::string line; std::getline(lines, line);) events << "  orphan " << line << '\n';
      }
      report.classifications.push_back(classification(u));
      events << "  classification: " << report.classifications.back() << '\n';
    }
    return changed;
  };

  report.result = run(universe, std::move(pop0), sc.params, sc.horizon, seed, hook);

  const TimeSeries& series = report.result.series;
  const std::size_t last = series.rows() - 1;
  std::ostringstream out;
  out << "scenario: " << sc.name << " (seed " << seed << ", " << series.agent_count << " agents, horizon "
      << sc.horizon << ")\n";
  out << "initial classification: " << report.classifications.front() << '\n';
  out << events.str();
  for (const Intervention& iv : sc.interventions) {
    if (iv.at_step >= sc.horizon) {
      out << "step " << iv.at_step << ": " << action_name(iv.action) << " not reached (horizon " << sc.horizon
          << ")\n";
    }
  }
  char buf[32];
  out << "final shares:";
  for (std::size_t c = 0; c < series.roots.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.6f", series.agent_count ? series.share(last, c) : 0.0);
    out << ' ' << series.roots[c] << '=' << buf;
    if (series.agent_count && series.share(last, c) >= kTippingShare) report.tipped_to = series.roots[c];
  }
  out << '\n';
  out << "final classification: " << classification(report.result.final_universe) << '\n';
  out << "tipped: " << (report.tipped_to ? "yes (" + *report.tipped_to + ")" : std::string("no")) << '\n';
  out << "orphans: " << report.orphan_total << '\n';
  report.summary = out.str();
  return report;
}

}  // namespace altroot
