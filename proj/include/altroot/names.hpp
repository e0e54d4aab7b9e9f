#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace altroot {

/// One node name of the hierarchy: 1-63 LDH characters, stored lowercase.
class Label {
 public:
  static Label parse(std::string_view text);
  static bool is_valid(std::string_view text);

  const std::string& str() const noexcept { return text_; }

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;

 private:
  explicit Label(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

/// A dotted name. Labels are held least-significant first, so the TLD is
/// the last element; the root is the empty sequence.
class DomainName {
 public:
  static constexpr std::size_t kMaxTextLength = 253;

  DomainName() = default;
  explicit DomainName(std::vector<Label> labels);

  // Parses "shop.new." or "shop.new"; "." is the root.
  static DomainName parse(std::string_view text);

  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t depth() const noexcept { return labels_.size(); }
  bool is_root() const noexcept { return labels_.empty(); }

  std::optional<Label> tld() const;
  std::optional<Label> second_level() const;

  // Name without its least-significant label. Root stays root.
  DomainName parent() const;

  // Canonical text, always with a trailing dot.
  std::string to_string() const;
  // Same text without the trailing dot; the root renders as "".
  std::string to_relative_string() const;

  auto operator<=>(const DomainName&) const = default;
  bool operator==(const DomainName&) const = default;

 private:
  std::vector<Label> labels_;
};

inline DomainName make_domain_name(std::string_view text) { return DomainName::parse(text); }

/// Builds `second.tld.` from its two labels.
DomainName second_level_name(const Label& second, const Label& tld);

/// Synthetic 32-bit host address rendered as a dotted quad.
class Address {
 public:
  constexpr Address() = default;
  constexpr explicit Address(std::uint32_t value) : value_(value) {}

  static Address parse(std::string_view text);

  constexpr std::uint32_t value() const noexcept { return value_; }
  std::string to_string() const;

  auto operator<=>(const Address&) const = default;
  bool operator==(const Address&) const = default;

 private:
  std::uint32_t value_ = 0;
};

}  // namespace altroot
