#include <random>

#include "altroot/competition.hpp"
#include "altroot/error.hpp"
#include "altroot/policy.hpp"
#include "doctest.h"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace altroot;
using namespace altroot::testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an altroot::Error");
  return ErrorKind::ConfigError;
}

std::set<std::string> orphan_names(const OrphanReport& r) {
  std::set<std::string> out;
  for (const auto& e : r.orphans) out.insert(e.name.to_string());
  return out;
}

// root-C holds .biz via gallegos with n registrations; root-I does not.
Universe biz_universe(int n) {
  Universe u;
  const auto com = deleg("com", "verisign.test", {"192.0.2.10"});
  u.add_root(zone("root-I", {com}));
  u.add_root(zone("root-C", {com, deleg("biz", "gallegos.test", {"198.51.100.7"})}));
  u.add_registry_zone(registry("verisign.test", "com", {{"example", "203.0.113.1"}}));
  RegistryZone biz("gallegos.test", L("biz"));
  for (int i = 0; i < n; ++i) biz.insert(Label::parse("name" + std::to_string(i)), {Address(0xCB007100u + i), {}});
  u.add_registry_zone(biz);
  RegistryZone neu("neulevel.test", L("biz"));
  neu.insert(L("unrelated"), {A("192.0.2.200"), {}});
  u.add_registry_zone(neu);
  return u;
}

}  // namespace

TEST_CASE("mutual_recognition") {
  const RootZone i = zone("root-I", {deleg("com", "verisign.test", {"192.0.2.10"})});
  const RootZone c = zone("root-C", {deleg("com", "verisign.test", {"192.0.2.10"}),
                                     deleg("new", "newnet.test", {"198.51.100.1"})});
  auto [ni, nc] = mutual_recognition(i, c);
  CHECK(tld_set(ni) == std::set<Label>{L("com"), L("new")});
  CHECK(tld_set(nc) == std::set<Label>{L("com"), L("new")});
  CHECK(classify(ni, nc) == CompetitionType{Type1Coordinated{}});

  auto [ii, cc] = mutual_recognition(ni, nc);
  CHECK(ii == ni);
  CHECK(cc == nc);

  auto [same_a, same_b] = mutual_recognition(i, i);
  CHECK(same_a == i);
  CHECK(classify(same_a, same_b) == CompetitionType{Type1Coordinated{}});

  const RootZone conflicting = zone("root-C", {deleg("com", "verisign.test", {"192.0.2.10"}),
                                               deleg("biz", "gallegos.test", {"198.51.100.7"})});
  const RootZone neustar = zone("root-I", {deleg("biz", "neulevel.test", {"192.0.2.1"})});
  CHECK(kind_of([&] { mutual_recognition(neustar, conflicting); }) == ErrorKind::CollisionBlocked);
}

TEST_CASE("conflict_avoiding_add") {
  const RootZone c = zone("root-C", {deleg("web", "iod.test", {"198.51.100.9"})});
  const RootZone i = zone("root-I", {deleg("com", "verisign.test", {"192.0.2.10"})});

  auto web = conflict_avoiding_add(i, deleg("web", "afilias.test", {"192.0.2.50"}), c);
  REQUIRE(std::holds_alternative<Skipped>(web));
  CHECK(std::get<Skipped>(web).claimed_by == "root-C");

  auto info = conflict_avoiding_add(i, deleg("info", "afilias.test", {"192.0.2.50"}), c);
  REQUIRE(std::holds_alternative<RootZone>(info));
  CHECK(std::get<RootZone>(info).contains(L("info")));

  auto any = conflict_avoiding_add(i, deleg("web", "afilias.test", {"192.0.2.50"}), RootZone("empty"));
  CHECK(std::holds_alternative<RootZone>(any));

  CHECK(kind_of([&] { conflict_avoiding_add(i, deleg("com", "other.test", {"192.0.2.1"}), c); }) ==
        ErrorKind::DuplicateTld);

  SUBCASE("never introduces a collision") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      auto [a, b] = random_root_pair(rng);
      const auto before = collisions(a, b);
      for (const std::string& t : tld_pool()) {
        if (a.contains(Label::parse(t))) continue;
        auto r = conflict_avoiding_add(a, random_delegation(rng, t), b);
        if (auto* z = std::get_if<RootZone>(&r)) CHECK(collisions(*z, b) == before);
      }
    }
  }
}

TEST_CASE("conflicting_add") {
  SUBCASE("25 orphaned biz registrations") {
    Universe u = biz_universe(25);
    auto [zone_i, report] = conflicting_add(u.root("root-I"), deleg("biz", "neulevel.test", {"192.0.2.1"}), u);
    CHECK(report.orphan_count() == 25);
    CHECK(std::holds_alternative<Type3Conflicting>(classify(zone_i, u.root("root-C"))));
    for (const auto& e : report.orphans) {
      CHECK(e.assigned_by == "root-C");
      CHECK(std::holds_alternative<NameError>(e.observed));
    }
    const std::string text = render_orphan_report(report);
    CHECK(text.find("name0.biz. intended 203.0.113.0 observed NameError\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 25);
  }
  SUBCASE("no registrations still collides") {
    Universe u = biz_universe(0);
    auto [zone_i, report] = conflicting_add(u.root("root-I"), deleg("biz", "neulevel.test", {"192.0.2.1"}), u);
    CHECK(report.orphan_count() == 0);
    CHECK(classify(zone_i, u.root("root-C")) == CompetitionType{Type3Conflicting{{L("biz")}}});
  }
  SUBCASE("a registration that happens to agree is not orphaned") {
    Universe u = biz_universe(3);
    Universe v;
    v.add_root(u.root("root-I"));
    v.add_root(u.root("root-C"));
    v.add_registry_zone(*u.find_registry_zone("verisign.test", L("com")));
    v.add_registry_zone(*u.find_registry_zone("gallegos.test", L("biz")));
    RegistryZone neu("neulevel.test", L("biz"));
    neu.insert(L("name1"), {Address(0xCB007101u), {}});  // same as gallegos' name1
    neu.insert(L("name2"), {A("192.0.2.99"), {}});
    v.add_registry_zone(neu);
    auto [z, report] = conflicting_add(v.root("root-I"), deleg("biz", "neulevel.test", {"192.0.2.1"}), v);
    CHECK(orphan_names(report) == std::set<std::string>{"name0.biz.", "name2.biz."});
  }
  SUBCASE("duplicate") {
    Universe u = biz_universe(1);
    CHECK(kind_of([&] { conflicting_add(u.root("root-C"), deleg("biz", "neulevel.test", {"192.0.2.1"}), u); }) ==
          ErrorKind::DuplicateTld);
  }
}

TEST_CASE("orphan report equals the brute-force divergence sweep") {
  std::mt19937_64 rng(4242);
  int nonempty = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Universe u = random_universe(rng);
    const RootZone& c = u.root("root-C");
    const RootZone& i = u.root("root-I");
    for (const auto& [tld, d] : c.delegations()) {
      if (i.contains(tld)) continue;
      TldDelegation added = conflicting_with(rng, d);
      u.add_registry(added.registry_id());
      auto [zone_i, report] = conflicting_add(i, added, u);
      const auto want = oracle::divergence_set(u, "root-I", added);
      CHECK(orphan_names(report) == want);
      CHECK(std::holds_alternative<Type3Conflicting>(classify(zone_i, c)));
      nonempty += want.empty() ? 0 : 1;
      break;
    }
  }
  CHECK(nonempty > 20);
}

TEST_CASE("threshold_admission") {
  auto universe_with = [](int names, int registrants) {
    Universe u;
    u.add_root(zone("root-I", {deleg("com", "verisign.test", {"192.0.2.10"})}));
    u.add_root(zone("root-C", {deleg("com", "verisign.test", {"192.0.2.10"}),
                               deleg("kids", "kids.test", {"198.51.100.3"})}));
    RegistryZone kids("kids.test", L("kids"));
    for (int k = 0; k < names; ++k) {
      kids.insert(Label::parse("n" + std::to_string(k)), {Address(0xCB007100u + k), "r" + std::to_string(k % registrants)});
    }
    u.add_registry_zone(kids);
    u.add_registry_zone(registry("verisign.test", "com", {}));
    return u;
  };

  SUBCASE("1000 names from 800 registrants clear (500, 100)") {
    Universe u = universe_with(1000, 800);
    auto r = threshold_admission(u.root("root-I"), L("kids"), u, 500, 100);
    REQUIRE(std::holds_alternative<RootZone>(r));
    CHECK(*std::get<RootZone>(r).find(L("kids")) == *u.root("root-C").find(L("kids")));
  }
  SUBCASE("a single registrant fails the disparate-users test") {
    Universe u = universe_with(1000, 1);
    auto r = threshold_admission(u.root("root-I"), L("kids"), u, 500, 100);
    REQUIRE(std::holds_alternative<Rejected>(r));
    CHECK(std::get<Rejected>(r).reason == RejectReason::TooFewDisparateUsers);
  }
  SUBCASE("a small community of 90 names misses min_names 100") {
    Universe u = universe_with(90, 90);
    auto r = threshold_admission(u.root("root-I"), L("kids"), u, 100, 10);
    REQUIRE(std::holds_alternative<Rejected>(r));
    CHECK(std::get<Rejected>(r).reason == RejectReason::TooFewNames);
    CHECK(std::get<Rejected>(r).names == 90);
  }
  SUBCASE("errors") {
    Universe u = universe_with(10, 10);
    CHECK(kind_of([&] { threshold_admission(u.root("root-I"), L("hola"), u, 0, 0); }) ==
          ErrorKind::NotOperatedAnywhere);
    CHECK(kind_of([&] { threshold_admission(u.root("root-C"), L("kids"), u, 0, 0); }) == ErrorKind::DuplicateTld);
  }
  SUBCASE("monotone in both thresholds") {
    Universe u = universe_with(60, 25);
    for (std::size_t m = 0; m <= 70; m += 5) {
      for (std::size_t d = 0; d <= 30; d += 3) {
        const bool admitted = std::holds_alternative<RootZone>(threshold_admission(u.root("root-I"), L("kids"), u, m, d));
        CHECK(admitted == (m <= 60 && d <= 25));
        if (admitted) {
          for (std::size_t m2 = 0; m2 <= m; m2 += 7) {
            for (std::size_t d2 = 0; d2 <= d; d2 += 4) {
              CHECK(std::holds_alternative<RootZone>(threshold_admission(u.root("root-I"), L("kids"), u, m2, d2)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("apply_intervention keeps the universe consistent") {
  Population pop;
  for (int k = 0; k < 10; ++k) pop.agents.push_back({"a" + std::to_string(k), "root-I", {}});

  SUBCASE("conflicting add records its own origin and the orphans") {
    Universe u = biz_universe(4);
    Intervention iv{5, ConflictingAdd{"root-I", deleg("biz", "neulevel.test", {"192.0.2.1"})}, std::nullopt};
    auto out = apply_intervention(iv, u, pop, 1);
    CHECK(out.universe_changed);
    REQUIRE(out.orphans);
    CHECK(out.orphans->orphan_count() == 4);
    CHECK(u.origin(L("biz"), "root-I") == std::optional<RootId>("root-I"));
    CHECK(u.problems().empty());
    CHECK(out.description == "step 5: conflicting_add root-I biz -> neulevel.test: 4 orphans");
  }
  SUBCASE("mutual recognition copies origins") {
    Universe u = type2_universe();
    auto out = apply_intervention({0, MutualRecognition{"root-I", "root-C"}, std::nullopt}, u, pop, 1);
    CHECK(out.universe_changed);
    CHECK(u.origin(L("new"), "root-I") == std::optional<RootId>("root-C"));
    CHECK(classify(u.root("root-I"), u.root("root-C")) == CompetitionType{Type1Coordinated{}});
    CHECK(u.problems().empty());
  }
  SUBCASE("skipped add leaves the universe and brings no registry zone") {
    Universe u = type2_universe();
    const Universe before = u;
    Intervention iv{0,
                    ConflictAvoidingAdd{"root-I", deleg("new", "afilias.test", {"192.0.2.50"}), "root-C"},
                    registry("afilias.test", "new", {{"x", "192.0.2.77"}})};
    auto out = apply_intervention(iv, u, pop, 1);
    CHECK_FALSE(out.universe_changed);
    CHECK(u.registries().size() == before.registries().size());
    CHECK(out.description.find("skipped, claimed by root-C") != std::string::npos);
    CHECK_FALSE(u.root("root-I").contains(L("new")));
  }
  SUBCASE("threshold admission inherits the incumbent's origin") {
    Universe u = type2_universe();
    auto out = apply_intervention({3, ThresholdAdmission{"root-I", L("new"), 2, 1}, std::nullopt}, u, pop, 1);
    CHECK(out.universe_changed);
    CHECK(u.origin(L("new"), "root-I") == std::optional<RootId>("root-C"));
    Universe v = type2_universe();
    auto rejected = apply_intervention({3, ThresholdAdmission{"root-I", L("new"), 3, 1}, std::nullopt}, v, pop, 1);
    CHECK_FALSE(rejected.universe_changed);
    CHECK(rejected.description.find("rejected (too-few-names") != std::string::npos);
  }
  SUBCASE("bulk reassignment moves a rounded fraction deterministically") {
    Universe u = type2_universe();
    Population p1 = pop, p2 = pop;
    apply_intervention({2, BulkReassign{0.35, "root-C"}, std::nullopt}, u, p1, 9);
    apply_intervention({2, BulkReassign{0.35, "root-C"}, std::nullopt}, u, p2, 9);
    CHECK(p1.count_on("root-C") == 4);
    for (std::size_t k = 0; k < p1.agents.size(); ++k) CHECK(p1.agents[k].current_root == p2.agents[k].current_root);
    CHECK_THROWS_AS(apply_intervention({2, BulkReassign{1.5, "root-C"}, std::nullopt}, u, p1, 9), Error);
  }
}
