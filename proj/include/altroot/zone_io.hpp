#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "altroot/names.hpp"
#include "altroot/zone.hpp"

namespace altroot {

// Zone text grammar, one record per line:
//
//   <owner-fqdn.> <WS> NS <WS> <server-fqdn.>
//   <owner-fqdn.> <WS> A  <WS> <dotted-quad>
//
// ';' starts a comment. Before the first record, "; zone <id>" names the
// root or registry and "; origin <tld>." names a registry zone's TLD. On a
// registry A line, a trailing "; registrant=<id>" attaches a registrant.

enum class RecordType { NS, A };

struct ZoneEntry {
  std::size_t line = 0;
  DomainName owner;
  RecordType type = RecordType::A;
  std::variant<DomainName, Address> rdata;
  std::string comment;
};

struct ZoneDocument {
  std::string origin_id;
  std::optional<Label> origin_tld;
  std::vector<ZoneEntry> entries;
};

// Lexical stage shared by both zone kinds. Throws ZoneError(SyntaxError).
ZoneDocument parse_zone_document(std::string_view text);
std::string render_zone_document(const ZoneDocument& doc);

// `fallback_id` names the root when the text has no "; zone" header.
RootZone parse_root_zone(std::string_view text, const RootId& fallback_id = "root");
std::string serialize_root_zone(const RootZone& zone);

struct RegistryDefaults {
  RegistryId registry_id;
  std::optional<Label> tld;
};

RegistryZone parse_registry_zone(std::string_view text, const RegistryDefaults& defaults = {});
std::string serialize_registry_zone(const RegistryZone& zone);

// Host name the serializer gives a server: ns-a-b-c-d.<registry>.
DomainName server_host_name(const RegistryId& registry, Address server);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace altroot
