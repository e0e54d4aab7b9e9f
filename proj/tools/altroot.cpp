#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "altroot/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulator of competing DNS roots"};
  app.require_subcommand(1);

  std::string zone_a, zone_b;
  auto* classify = app.add_subcommand("classify", "Classify the competition between two root zone files");
  classify->add_option("a", zone_a, "First root zone file")->required();
  classify->add_option("b", zone_b, "Second root zone file")->required();

  std::string universe_dir;
  std::optional<std::string> pair;
  auto* matrix = app.add_subcommand("matrix", "Print the compatibility matrix of a universe directory");
  matrix->add_option("dir", universe_dir, "Directory holding universe.ini")->required();
  matrix->add_option("--pair", pair, "Root ids to compare, as 'a,b'");

  std::string scenario, csv;
  std::size_t seeds = 1;
  auto* simulate = app.add_subcommand("simulate", "Run an adoption scenario and write its share series");
  simulate->add_option("scenario", scenario, "Scenario file")->required();
  simulate->add_option("-o,--output", csv, "CSV output path")->required();
  simulate->add_option("--seeds", seeds, "Number of consecutive seeds to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : altroot::kExitInput;
  }

  if (*classify) return altroot::cmd_classify(zone_a, zone_b, std::cout, std::cerr);
  if (*matrix) return altroot::cmd_matrix(universe_dir, std::cout, std::cerr, pair);
  return altroot::cmd_simulate(scenario, csv, seeds, std::cout, std::cerr);
}
