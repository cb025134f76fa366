#ifndef JDDKB_ERRORS_H_
#define JDDKB_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace jddkb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing configuration (empty cue table, non-increasing edges, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed annotation or record text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Constituency tree and dependency graph disagree on the token sequence.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Snapshot truncated, corrupted or with an incompatible version.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Schema path that does not resolve; the message names the failing segment.
class PathError : public Error {
 public:
  using Error::Error;
};

// Invalid query: unknown axis, partition, inconsistent histograms.
class QueryError : public Error {
 public:
  using Error::Error;
};

enum class Severity { kDebug, kInfo, kWarning, kError };

struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string where;  // case id, "line 12", file name, ...
  std::string message;
};

// Collects per-record problems that do not abort processing.
class Diagnostics {
 public:
  void add(Severity severity, std::string where, std::string message) {
    items_.push_back({severity, std::move(where), std::move(message)});
  }
  void warn(std::string where, std::string message) {
    add(Severity::kWarning, std::move(where), std::move(message));
  }
  void info(std::string where, std::string message) {
    add(Severity::kInfo, std::move(where), std::move(message));
  }
  void append(const Diagnostics& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  const std::vector<Diagnostic>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::size_t count(Severity at_least) const {
    std::size_t n = 0;
    for (const auto& d : items_) n += d.severity >= at_least ? 1 : 0;
    return n;
  }

 private:
  std::vector<Diagnostic> items_;
};

const char* severity_name(Severity s);

}  // namespace jddkb

#endif  // JDDKB_ERRORS_H_
