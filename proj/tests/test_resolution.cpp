#include <random>
#include <set>

#include "altroot/error.hpp"
#include "altroot/resolution.hpp"
#include "doctest.h"
#include "support/builders.hpp"
#include "support/generators.hpp"

using namespace altroot;
using namespace altroot::testing;

TEST_CASE(".new names only resolve for users of the root that added it") {
  const Universe u = type2_universe();
  const ResolverConfig on_i{"isp-1", "root-I"};
  const ResolverConfig on_c{"isp-2", "root-C"};
  CHECK(resolve(N("shop.new."), on_i, u) == ResolutionOutcome{NameError{}});
  CHECK(resolve(N("shop.new."), on_c, u) == ResolutionOutcome{Resolved{A("203.0.113.50")}});
  CHECK(intended_address(N("shop.new."), "root-C", u) == A("203.0.113.50"));
  // names under shared TLDs resolve the same way from both roots
  CHECK(resolve(N("example.com."), on_i, u) == resolve(N("example.com."), on_c, u));
}

TEST_CASE("missing registrations and missing TLDs are name errors") {
  const Universe u = type2_universe();
  const ResolverConfig on_c{"r", "root-C"};
  CHECK(resolve(N("nosuch.new."), on_c, u) == ResolutionOutcome{NameError{}});
  CHECK(resolve(N("shop.hola."), on_c, u) == ResolutionOutcome{NameError{}});
  CHECK(resolve(N("new."), on_c, u) == ResolutionOutcome{NameError{}});
}

TEST_CASE("deeper names resolve by their top two labels") {
  const Universe u = type2_universe();
  CHECK(resolve(N("www.mail.shop.new."), {"r", "root-C"}, u) == ResolutionOutcome{Resolved{A("203.0.113.50")}});
}

TEST_CASE("broken delegation is distinct from a name error") {
  Universe u;
  u.add_root(zone("root-C", {deleg("hola", "newnet.test", {"198.51.100.1"})}));
  u.add_registry("newnet.test");
  CHECK(u.problems().empty());
  CHECK(resolve(N("casa.hola."), {"r", "root-C"}, u) == ResolutionOutcome{BrokenDelegation{"newnet.test"}});
  CHECK_THROWS_AS(intended_address(N("casa.hola."), "root-C", u), Error);
}

TEST_CASE("unknown trusted root is a configuration error") {
  const Universe u = type2_universe();
  try {
    resolve(N("shop.new."), {"r", "root-X"}, u);
    FAIL("expected UnknownRoot");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownRoot);
  }
}

TEST_CASE("colliding .biz yields different intended addresses per origin") {
  const Universe u = type3_universe();
  const Address via_i = intended_address(N("example.biz."), "root-I", u);
  const Address via_c = intended_address(N("example.biz."), "root-C", u);
  CHECK(via_i != via_c);
  CHECK_THROWS_AS(intended_address(N("tools.biz."), "root-I", u), Error);
  try {
    intended_address(N("shop.new."), "root-I", type2_universe());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAssigned);
  }
}

TEST_CASE("self-consistency, closure and determinism over random universes") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Universe u = random_universe(rng);
    std::set<std::uint32_t> stored;
    for (const auto& [id, zones] : u.registries()) {
      for (const auto& z : zones) {
        for (const auto& [sl, r] : z.registrations()) stored.insert(r.address.value());
      }
    }
    for (const auto& [root_id, root] : u.roots()) {
      const ResolverConfig cfg{"r", root_id};
      for (const auto& [tld, d] : root.delegations()) {
        const RegistryZone* z = u.find_registry_zone(d.registry_id(), tld);
        if (!z) {
          CHECK(std::holds_alternative<BrokenDelegation>(resolve(N(("x." + tld.str() + ".").c_str()), cfg, u)));
          continue;
        }
        for (const auto& [sl, r] : z->registrations()) {
          const DomainName name = second_level_name(sl, tld);
          const ResolutionOutcome got = resolve(name, cfg, u);
          CHECK(got == ResolutionOutcome{Resolved{intended_address(name, root_id, u)}});
          CHECK(got == resolve(name, cfg, u));
        }
      }
      // Any name, registered or not: a Resolved address must exist somewhere.
      for (const std::string& t : tld_pool()) {
        for (const char* sl : {"example", "shop", "zzz"}) {
          const auto got = resolve(DomainName::parse(std::string(sl) + "." + t + "."), cfg, u);
          if (const auto* r = std::get_if<Resolved>(&got)) CHECK(stored.count(r->address.value()) == 1);
        }
      }
    }
  }
}
