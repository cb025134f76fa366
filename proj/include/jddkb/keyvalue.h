#ifndef JDDKB_KEYVALUE_H_
#define JDDKB_KEYVALUE_H_

// Plain structured-text configuration:
//
//   # comment
//   version = 1
//   [section]
//   key = value, value
//
// The first non-comment line must be the version header. Keys may repeat;
// entries keep file order.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jddkb {

struct KeyValueEntry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;
};

class KeyValueDocument {
 public:
  static KeyValueDocument Parse(std::string_view text, std::string source);
  static KeyValueDocument Load(const std::filesystem::path& path);

  int version() const { return version_; }
  const std::string& source() const { return source_; }
  const std::vector<KeyValueEntry>& entries() const { return entries_; }

  bool has_section(std::string_view section) const;
  std::vector<KeyValueEntry> section(std::string_view section) const;
  // Last occurrence wins.
  std::optional<std::string> get(std::string_view section,
                                 std::string_view key) const;

 private:
  int version_ = 0;
  std::string source_;
  std::vector<KeyValueEntry> entries_;
  std::vector<std::string> sections_;
};

// Splits on ASCII commas and trims each item; empty items are dropped.
std::vector<std::string> split_values(std::string_view value);

}  // namespace jddkb

#endif  // JDDKB_KEYVALUE_H_
