#include "altroot/zone_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "altroot/error.hpp"

namespace altroot {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

DomainName parse_fqdn(std::string_view token, std::size_t line, const char* what) {
  if (token.empty() || token.back() != '.') {
    throw ZoneError(ErrorKind::SyntaxError, line,
                    std::string(what) + " '" + std::string(token) + "' must end with '.'");
  }
  try {
    return DomainName::parse(token);
  } catch (const Error& e) {
    throw ZoneError(ErrorKind::SyntaxError, line, e.what());
  }
}

const std::string kRegistrantTag = "registrant=";

}  // namespace

ZoneDocument parse_zone_document(std::string_view text) {
  ZoneDocument doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    for (char c : raw) {
      if (static_cast<unsigned char>(c) > 0x7e || (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\r')) {
        throw ZoneError(ErrorKind::SyntaxError, line_no, "non-ASCII or control character");
      }
    }

    std::string_view body = raw;
    std::string_view comment;
    if (std::size_t semi = raw.find(';'); semi != std::string_view::npos) {
      body = raw.substr(0, semi);
      comment = trim(raw.substr(semi + 1));
    }
    auto tokens = split_ws(body);

    if (tokens.empty()) {
      if (doc.entries.empty() && !comment.empty()) {
        auto words = split_ws(comment);
        if (words.size() == 2 && words[0] == "zone" && doc.origin_id.empty()) {
          doc.origin_id = std::string(words[1]);
        } else if (words.size() == 2 && words[0] == "origin" && !doc.origin_tld) {
          DomainName origin = parse_fqdn(words[1], line_no, "origin");
          if (origin.depth() != 1) {
            throw ZoneError(ErrorKind::SyntaxError, line_no, "origin must be a single label");
          }
          doc.origin_tld = *origin.tld();
        }
      }
      continue;
    }
    if (tokens.size() != 3) {
      throw ZoneError(ErrorKind::SyntaxError, line_no, "expected '<owner> <TYPE> <rdata>'");
    }

    ZoneEntry entry;
    entry.line = line_no;
    entry.owner = parse_fqdn(tokens[0], line_no, "owner");
    entry.comment = std::string(comment);
    if (tokens[1] == "NS") {
      entry.type = RecordType::NS;
      entry.rdata = parse_fqdn(tokens[2], line_no, "server");
    } else if (tokens[1] == "A") {
      entry.type = RecordType::A;
      try {
        entry.rdata = Address::parse(tokens[2]);
      } catch (const Error& e) {
        throw ZoneError(ErrorKind::SyntaxError, line_no, e.what());
      }
    } else {
      throw ZoneError(ErrorKind::SyntaxError, line_no,
                      "unsupported record type '" + std::string(tokens[1]) + "'");
    }
    doc.entries.push_back(std::move(entry));
  }
  return doc;
}

std::string render_zone_document(const ZoneDocument& doc) {
  std::ostringstream out;
  out << "; zone " << doc.origin_id << '\n';
  if (doc.origin_tld) out << "; origin " << doc.origin_tld->str() << ".\n";
  for (const ZoneEntry& e : doc.entries) {
    out << e.owner.to_string() << ' ' << (e.type == RecordType::NS ? "NS" : "A") << ' ';
    if (e.type == RecordType::NS) {
      out << std::get<DomainName>(e.rdata).to_string();
    } else {
      out << std::get<Address>(e.rdata).to_string();
    }
    if (!e.comment.empty()) out << " ; " << e.comment;
    out << '\n';
  }
  return out.str();
}

DomainName server_host_name(const RegistryId& registry, Address server) {
  const std::uint32_t v = server.value();
  std::string host = "ns-" + std::to_string(v >> 24) + "-" + std::to_string((v >> 16) & 0xff) + "-" +
                     std::to_string((v >> 8) & 0xff) + "-" + std::to_string(v & 0xff);
  return DomainName::parse(host + "." + registry + ".");
}

RootZone parse_root_zone(std::string_view text, const RootId& fallback_id) {
  ZoneDocument doc = parse_zone_document(text);
  const RootId id = doc.origin_id.empty() ? fallback_id : doc.origin_id;
  if (!is_valid_root_id(id)) throw ZoneError(ErrorKind::SyntaxError, 1, "bad zone id '" + id + "'");

  struct Group {
    std::vector<std::pair<DomainName, std::size_t>> hosts;
    std::size_t line = 0;
  };
  std::map<Label, Group> groups;
  std::vector<Label> group_order;
  std::map<DomainName, std::set<Address>> glue;
  std::optional<Label> last_ns_owner;

  for (const ZoneEntry& e : doc.entries) {
    if (e.type == RecordType::NS) {
      if (e.owner.depth() != 1) {
        throw ZoneError(ErrorKind::SyntaxError, e.line, "NS owner must be a top-level name");
      }
      const Label tld = *e.owner.tld();
      auto it = groups.find(tld);
      if (it != groups.end() && last_ns_owner != tld) {
        throw ZoneError(ErrorKind::DuplicateTld, e.line, tld.str() + " delegated twice");
      }
      if (it == groups.end()) {
        it = groups.emplace(tld, Group{{}, e.line}).first;
        group_order.push_back(tld);
      }
      const DomainName& host = std::get<DomainName>(e.rdata);
      if (host.depth() < 2) {
        throw ZoneError(ErrorKind::SyntaxError, e.line, "server name needs a registry parent domain");
      }
      it->second.hosts.emplace_back(host, e.line);
      last_ns_owner = tld;
    } else {
      glue[e.owner].insert(std::get<Address>(e.rdata));
    }
  }

  RootZone zone(id);
  for (const Label& tld : group_order) {
    const Group& g = groups.at(tld);
    RegistryId registry;
    std::vector<Address> servers;
    for (const auto& [host, line] : g.hosts) {
      const RegistryId parent = host.parent().to_relative_string();
      if (registry.empty()) {
        registry = parent;
      } else if (parent != registry) {
        throw ZoneError(ErrorKind::SyntaxError, line,
                        tld.str() + ": servers span registries " + registry + " and " + parent);
      }
      auto addrs = glue.find(host);
      if (addrs == glue.end()) {
        throw ZoneError(ErrorKind::MissingGlue, line, "no A record for " + host.to_string());
      }
      servers.insert(servers.end(), addrs->second.begin(), addrs->second.end());
    }
    zone.insert(TldDelegation(tld, registry, std::move(servers)));
  }
  return zone;
}

std::string serialize_root_zone(const RootZone& zone) {
  ZoneDocument doc;
  doc.origin_id = zone.root_id();
  for (const auto& [tld, d] : zone.delegations()) {
    DomainName owner({tld});
    for (Address server : d.servers()) {
      doc.entries.push_back({0, owner, RecordType::NS, server_host_name(d.registry_id(), server), {}});
    }
    for (Address server : d.servers()) {
      doc.entries.push_back({0, server_host_name(d.registry_id(), server), RecordType::A, server, {}});
    }
  }
  return render_zone_document(doc);
}

RegistryZone parse_registry_zone(std::string_view text, const RegistryDefaults& defaults) {
  ZoneDocument doc = parse_zone_document(text);
  const RegistryId id = doc.origin_id.empty() ? defaults.registry_id : doc.origin_id;
  if (!is_valid_registry_id(id)) {
    throw ZoneError(ErrorKind::SyntaxError, 1, "bad registry id '" + id + "'");
  }
  std::optional<Label> tld = doc.origin_tld ? doc.origin_tld : defaults.tld;
  if (!tld) {
    if (doc.entries.empty() || !doc.entries.front().owner.tld()) {
      throw ZoneError(ErrorKind::SyntaxError, 1, "registry zone has no origin");
    }
    tld = doc.entries.front().owner.tld();
  }

  RegistryZone zone(id, *tld);
  for (const ZoneEntry& e : doc.entries) {
    if (e.type != RecordType::A) {
      throw ZoneError(ErrorKind::SyntaxError, e.line, "registry zones hold A records only");
    }
    if (e.owner.depth() != 2 || e.owner.tld() != tld) {
      throw ZoneError(ErrorKind::SyntaxError, e.line,
                      e.owner.to_string() + " is not a second-level name under " + tld->str() + ".");
    }
    Registration r{std::get<Address>(e.rdata), {}};
    if (e.comment.rfind(kRegistrantTag, 0) == 0) {
      r.registrant = e.comment.substr(kRegistrantTag.size());
      if (r.registrant.empty() || split_ws(r.registrant).size() != 1) {
        throw ZoneError(ErrorKind::SyntaxError, e.line, "bad registrant id");
      }
    }
    const Label second = *e.owner.second_level();
    if (zone.find(second)) {
      throw ZoneError(ErrorKind::DuplicateRegistration, e.line, e.owner.to_string() + " registered twice");
    }
    zone.insert(second, std::move(r));
  }
  return zone;
}

std::string serialize_registry_zone(const RegistryZone& zone) {
  ZoneDocument doc;
  doc.origin_id = zone.registry_id();
  doc.origin_tld = zone.tld();
  for (const auto& [label, r] : zone.registrations()) {
    std::string comment = r.registrant.empty() ? "" : kRegistrantTag + r.registrant;
    doc.entries.push_back({0, second_level_name(label, zone.tld()), RecordType::A, r.address, comment});
  }
  return render_zone_document(doc);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::ConfigError, "write failed for " + path.string());
}

}  // namespace altroot
