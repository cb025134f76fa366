// jddkb: ingest -> build -> query over judgment documents, plus a synthetic
// corpus generator.
//
// Exit codes: 0 success (warnings allowed), 1 usage, 2 data, 3 I/O.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jddkb/action_extractor.h"
#include "jddkb/config.h"
#include "jddkb/corpus.h"
#include "jddkb/landscape_kb.h"
#include "jddkb/pipeline.h"
#include "jddkb/query_runner.h"
#include "jddkb/record_io.h"
#include "jddkb/synth.h"

namespace {

using namespace jddkb;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct Globals {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string log_level = "warn";
};

class UsageError : public Error {
 public:
  using Error::Error;
};

Severity threshold(const std::string& level) {
  if (level == "error") return Severity::kError;
  if (level == "info") return Severity::kInfo;
  if (level == "debug") return Severity::kDebug;
  return Severity::kWarning;
}

void report(const Diagnostics& diags, const Globals& g) {
  const Severity min = threshold(g.log_level);
  for (const auto& d : diags.items()) {
    if (d.severity < min) continue;
    std::cerr << severity_name(d.severity) << ": " << d.where << ": " << d.message << "\n";
  }
}

struct LoadedConfig {
  EngineConfig engine;
  std::optional<KeyValueDocument> doc;
};

LoadedConfig load_config(const Globals& g) {
  LoadedConfig c;
  if (g.config.empty()) return c;
  if (!std::filesystem::exists(g.config)) throw IoError("config file not found: " + g.config);
  c.doc = KeyValueDocument::Load(g.config);
  c.engine = EngineConfig::FromDocument(*c.doc);
  return c;
}

std::string require_out(const Globals& g, const char* what) {
  if (g.out.empty()) throw UsageError(std::string("--out is required (") + what + ")");
  return g.out;
}

ParseStore load_parses(const std::filesystem::path& path, Diagnostics& diags) {
  if (!std::filesystem::exists(path)) throw IoError("parse path not found: " + path.string());
  if (std::filesystem::is_directory(path)) return ParseStore::LoadDirectory(path, diags);
  ParseStore store;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  store.add_conllu(in, path.string(), diags);
  auto trees = path;
  trees.replace_extension(".trees");
  if (std::filesystem::exists(trees)) {
    std::ifstream t(trees, std::ios::binary);
    if (!t) throw IoError("cannot read " + trees.string());
    store.add_trees(t, trees.string(), diags);
  }
  return store;
}

int cmd_ingest(const Globals& g, const std::string& corpus, const std::string& parses_path) {
  const auto out = require_out(g, "records file");
  const auto cfg = load_config(g);
  Diagnostics diags;
  if (!std::filesystem::exists(corpus)) throw IoError("corpus not found: " + corpus);
  const ParseStore parses = load_parses(parses_path, diags);
  const auto docs = load_corpus(corpus, diags);
  const auto records = extract_corpus(docs, parses, cfg.engine, diags, g.jobs);
  write_records(out, records);
  report(diags, g);
  std::cout << "documents " << docs.size() << "\nrecords " << records.size() << "\nwarnings "
            << diags.count(Severity::kWarning) << "\n";
  return kExitOk;
}

int cmd_build(const Globals& g, const std::string& records_path) {
  const auto out = require_out(g, "snapshot file");
  const auto cfg = load_config(g);
  Diagnostics diags;
  auto records = read_records(records_path, diags);
  if (records.empty()) diags.warn(records_path, "no records; building an empty knowledge base");
  if (cfg.engine.prune_hapax) {
    const auto pruned = prune_hapax_triggers(records);
    diags.info("build", "hapax pruning removed " + std::to_string(pruned.removed_records) +
                            " actions over " + std::to_string(pruned.removed_lemmas.size()) +
                            " triggers");
  }
  const auto kb = KnowledgeBase::Build(records, cfg.engine.scale, cfg.engine.damage_axis, diags, g.jobs);
  kb.save(out);
  report(diags, g);
  const auto& s = kb.stats();
  std::cout << "records " << s.records << "\nindexed " << s.indexed << "\nskipped_invalid "
            << s.skipped_invalid << "\nwithout_tuples " << s.without_tuples << "\ntuples "
            << s.tuples << "\npartitions " << kb.partitions().size() << "\n";
  for (const auto& [name, p] : kb.partitions()) {
    std::cout << "partition " << name << " actions=" << p.actions().size()
              << " damage=" << kb.damage_axis().size() << " punishment=" << kb.scale().size()
              << " tuples=" << p.total() << "\n";
  }
  return kExitOk;
}

int cmd_query(const Globals& g, const std::string& kb_path, const std::string& spec_path,
              const std::vector<std::string>& sets) {
  const auto out = require_out(g, "result directory");
  const auto cfg = load_config(g);
  QuerySpec spec = QuerySpec::Defaults(cfg.engine);
  if (!spec_path.empty()) {
    if (!std::filesystem::exists(spec_path)) throw IoError("query spec not found: " + spec_path);
    KeyValueDocument doc;
    try {
      doc = KeyValueDocument::Load(spec_path);
    } catch (const ConfigError& e) {
      throw QueryError(e.what());
    }
    spec.apply(doc);
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw QueryError("--set expects key=value, got '" + s + "'");
    spec.set(s.substr(0, eq), s.substr(eq + 1));
  }
  const auto kb = KnowledgeBase::Load(kb_path);
  Diagnostics diags;
  const auto files = run_query(kb, spec, cfg.engine, out, diags);
  report(diags, g);
  std::cout << spec.echo();
  for (const auto& f : files) std::cerr << "wrote " << f.string() << "\n";
  return kExitOk;
}

int cmd_synth(const Globals& g, std::optional<std::size_t> size) {
  const auto out = require_out(g, "output directory");
  const auto cfg = load_config(g);
  SynthOptions opts = cfg.doc ? SynthOptions::FromDocument(*cfg.doc) : SynthOptions{};
  opts.seed = g.seed;
  if (size) opts.size = *size;
  const auto corpus = generate_synthetic(opts);
  write_synthetic(corpus, out);
  std::cout << "documents " << corpus.truth.size() << "\nseed " << opts.seed << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Judgment document knowledge base: ingest, build, query, synth"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Engine configuration file");
  app.add_option("--out", g.out, "Output file or directory");
  app.add_option("--seed", g.seed, "Seed for the synthetic generator");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--log-level", g.log_level, "Diagnostics shown on stderr")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  std::string corpus, parses, records, kb, spec;
  std::vector<std::string> sets;
  std::optional<std::size_t> size;

  auto* ingest = app.add_subcommand("ingest", "Extract records from a corpus and its parses");
  ingest->add_option("corpus", corpus, "Corpus JSON lines")->required();
  ingest->add_option("parses", parses, "Parse directory or .conllu file")->required();

  auto* build = app.add_subcommand("build", "Build a knowledge base snapshot from records");
  build->add_option("records", records, "Records JSON lines")->required();

  auto* query = app.add_subcommand("query", "Run a query against a snapshot");
  query->add_option("kb", kb, "Snapshot file")->required();
  query->add_option("spec", spec, "Query specification file");
  query->add_option("--set", sets, "Override one query field (key=value)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  synth->add_option("--size", size, "Number of documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(g, corpus, parses);
    if (*build) return cmd_build(g, records);
    if (*query) return cmd_query(g, kb, spec, sets);
    if (*synth) return cmd_synth(g, size);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const QueryError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
