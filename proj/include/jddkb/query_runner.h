#ifndef JDDKB_QUERY_RUNNER_H_
#define JDDKB_QUERY_RUNNER_H_

// Declarative query specification and its evaluation to result files.
//
//   version = 1
//   partition = 故意伤害罪
//   pipeline = q1 | q2a | q2b | marginals | cases | resolve
//   splitter = defense_argument | forgiveness          (q1)
//   keep = action, punishment                          (marginals)
//   fix = punishment=exemption                         (marginals, repeatable)
//   count = tuples | distinct_cases                    (marginals)
//   k, filter_fraction, punishment                     (q2b)
//   tolerance                                          (q2a)
//   action, damage, punishment                         (cases)
//   path = JDD.courtFacts.sentence.actions.殴打         (resolve)
//   format = csv | json
//
// Keys outside this list are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jddkb/config.h"
#include "jddkb/landscape_kb.h"
#include "jddkb/query.h"

namespace jddkb {

enum class Pipeline { kQuestion1, kQuestion2a, kQuestion2b, kMarginals, kCases, kResolve };

std::string_view to_string(Pipeline p);
std::optional<Pipeline> parse_pipeline(std::string_view s);

struct QuerySpec {
  std::string partition;
  Pipeline pipeline = Pipeline::kMarginals;
  Splitter splitter = Splitter::kDefenseArgument;
  std::vector<Axis> keep = {Axis::kPunishment};
  std::vector<std::pair<Axis, std::string>> fix;  // axis, coordinate label
  CountMode count = CountMode::kTuples;
  std::size_t k = 20;
  double filter_fraction = 0.05;
  double tolerance = kElbowTolerance;
  std::optional<std::string> action;
  std::optional<std::string> damage;
  std::optional<std::string> punishment;
  std::string path;
  ExportFormat format = ExportFormat::kCsv;

  // Engine-level defaults for k, filter_fraction and tolerance.
  static QuerySpec Defaults(const EngineConfig& config);

  // Applies one key. Throws QueryError naming the field on a bad key or
  // value.
  void set(std::string_view key, std::string_view value);

  // Top-level entries of a query document (no sections allowed).
  void apply(const KeyValueDocument& doc);

  // Canonical key-value text with every effective setting.
  std::string echo() const;
};

// Evaluates `spec` and writes its result files into `out_dir`, plus
// query.txt holding the echo. Returns the written paths in write order.
// Throws QueryError on unknown partitions or labels.
std::vector<std::filesystem::path> run_query(const KnowledgeBase& kb, const QuerySpec& spec,
                                             const EngineConfig& config,
                                             const std::filesystem::path& out_dir,
                                             Diagnostics& diagnostics);

}  // namespace jddkb

#endif  // JDDKB_QUERY_RUNNER_H_
