#include "altroot/names.hpp"

#include <charconv>

#include "altroot/error.hpp"

namespace altroot {

namespace {

bool is_ldh(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

bool Label::is_valid(std::string_view text) {
  if (text.empty() || text.size() > 63) return false;
  if (text.front() == '-' || text.back() == '-') return false;
  for (char c : text) {
    if (!is_ldh(c)) return false;
  }
  return true;
}

Label Label::parse(std::string_view text) {
  if (!is_valid(text)) {
    throw Error(ErrorKind::InvalidLabel, "'" + std::string(text) + "'");
  }
  std::string out(text);
  for (char& c : out) c = lower(c);
  return Label(std::move(out));
}

DomainName::DomainName(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (to_relative_string().size() > kMaxTextLength) {
    throw Error(ErrorKind::InvalidLabel, "name longer than 253 characters");
  }
}

DomainName DomainName::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::EmptyName, "empty domain name");
  if (text == ".") return DomainName{};
  if (text.back() == '.') text.remove_suffix(1);

  std::vector<Label> most_significant_last;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(start, dot == std::string_view::npos ? dot : dot - start);
    most_significant_last.push_back(Label::parse(part));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  // Text order is most-specific first, which is the storage order too.
  return DomainName(std::move(most_significant_last));
}

std::optional<Label> DomainName::tld() const {
  if (labels_.empty()) return std::nullopt;
  return labels_.back();
}

std::optional<Label> DomainName::second_level() const {
  if (labels_.size() < 2) return std::nullopt;
  return labels_[labels_.size() - 2];
}

DomainName DomainName::parent() const {
  if (labels_.empty()) return {};
  return DomainName(std::vector<Label>(labels_.begin() + 1, labels_.end()));
}

std::string DomainName::to_relative_string() const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += '.';
    out += labels_[i].str();
  }
  return out;
}

std::string DomainName::to_string() const {
  if (labels_.empty()) return ".";
  return to_relative_string() + ".";
}

DomainName second_level_name(const Label& second, const Label& tld) {
  return DomainName({second, tld});
}

Address Address::parse(std::string_view text) {
  std::uint32_t value = 0;
  std::size_t pos = 0;
  for (int octet = 0; octet < 4; ++octet) {
    if (octet) {
      if (pos >= text.size() || text[pos] != '.') {
        throw Error(ErrorKind::InvalidAddress, "'" + std::string(text) + "'");
      }
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    std::string_view digits = text.substr(pos, end - pos);
    unsigned part = 256;
    if (!digits.empty() && digits.size() <= 3 && !(digits.size() > 1 && digits[0] == '0')) {
      std::from_chars(digits.data(), digits.data() + digits.size(), part);
    }
    if (part > 255) throw Error(ErrorKind::InvalidAddress, "'" + std::string(text) + "'");
    value = (value << 8) | part;
    pos = end;
  }
  if (pos != text.size()) throw Error(ErrorKind::InvalidAddress, "'" + std::string(text) + "'");
  return Address(value);
}

std::string Address::to_string() const {
  return std::to_string(value_ >> 24) + "." + std::to_string((value_ >> 16) & 0xff) + "." +
         std::to_string((value_ >> 8) & 0xff) + "." + std::to_string(value_ & 0xff);
}

}  // namespace altroot
