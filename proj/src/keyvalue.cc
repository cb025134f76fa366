#include "jddkb/keyvalue.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jddkb/errors.h"
#include "jddkb/utf8.h"

namespace jddkb {

KeyValueDocument KeyValueDocument::Parse(std::string_view text,
                                         std::string source) {
  KeyValueDocument doc;
  doc.source_ = std::move(source);
  std::string section;
  bool saw_version = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = utf8::trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    const std::string where = doc.source_ + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section");
      if (!saw_version) throw ConfigError(where + ": missing version header");
      section = std::string(utf8::trim(line.substr(1, line.size() - 2)));
      if (std::find(doc.sections_.begin(), doc.sections_.end(), section) ==
          doc.sections_.end()) {
        doc.sections_.push_back(section);
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    std::string key(utf8::trim(line.substr(0, eq)));
    std::string value(utf8::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!saw_version) {
      int v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (key != "version" || ec != std::errc() ||
          p != value.data() + value.size() || v <= 0) {
        throw ConfigError(where + ": first entry must be 'version = <n>'");
      }
      doc.version_ = v;
      saw_version = true;
      continue;
    }
    doc.entries_.push_back({section, std::move(key), std::move(value), line_no});
  }
  if (!saw_version) {
    throw ConfigError(doc.source_ + ": missing version header");
  }
  return doc;
}

KeyValueDocument KeyValueDocument::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.string());
}

bool KeyValueDocument::has_section(std::string_view section) const {
  return std::find(sections_.begin(), sections_.end(), section) !=
         sections_.end();
}

std::vector<KeyValueEntry> KeyValueDocument::section(
    std::string_view section) const {
  std::vector<KeyValueEntry> out;
  for (const auto& e : entries_) {
    if (e.section == section) out.push_back(e);
  }
  return out;
}

std::optional<std::string> KeyValueDocument::get(std::string_view section,
                                                 std::string_view key) const {
  std::optional<std::string> found;
  for (const auto& e : entries_) {
    if (e.section == section && e.key == key) found = e.value;
  }
  return found;
}

std::vector<std::string> split_values(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t end = value.find(',', start);
    if (end == std::string_view::npos) end = value.size();
    auto item = utf8::trim(value.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace jddkb
