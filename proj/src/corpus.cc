#include "jddkb/corpus.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "jddkb/douduan.h"
#include "jddkb/record_io.h"
#include "jddkb/utf8.h"
#include "json.hpp"

namespace jddkb {

using nlohmann::json;

RawDocument parse_corpus_line(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  RawDocument doc;
  if (!j.contains("case_id") || !j["case_id"].is_string()) {
    throw ParseError("missing string field 'case_id'");
  }
  doc.case_id = j["case_id"].get<std::string>();
  if (doc.case_id.empty()) throw ParseError("case_id is empty");
  if (j.contains("case_type")) {
    if (!j["case_type"].is_string()) throw ParseError("case_type must be a string");
    auto t = parse_case_type(j["case_type"].get<std::string>());
    if (!t) throw ParseError("unknown case_type");
    doc.case_type = *t;
  }
  if (j.contains("parties")) {
    if (!j["parties"].is_array()) throw ParseError("parties must be an array");
    for (const auto& p : j["parties"]) doc.parties.push_back(party_from_json(p));
  }
  if (j.contains("facts")) {
    const auto& f = j["facts"];
    if (f.is_string()) {
      doc.sentences = split_sentences(f.get<std::string>());
    } else if (f.is_array()) {
      for (const auto& s : f) {
        if (!s.is_string()) throw ParseError("facts must hold strings");
        doc.sentences.push_back(s.get<std::string>());
      }
    } else {
      throw ParseError("facts must be a string or an array");
    }
  }
  if (j.contains("decision")) {
    if (!j["decision"].is_string()) throw ParseError("decision must be a string");
    doc.decision_text = j["decision"].get<std::string>();
  }
  return doc;
}

CorpusReader::CorpusReader(const std::filesystem::path& path)
    : in_(path, std::ios::binary), source_(path.filename().string()) {
  if (!in_ || std::filesystem::is_directory(path)) {
    throw IoError("cannot read corpus " + path.string());
  }
}

std::optional<RawDocument> CorpusReader::next(Diagnostics& diagnostics) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty()) continue;
    const std::string where = source_ + ":" + std::to_string(line_no_);
    json header = json::parse(line, nullptr, false);
    if (header.is_object() && header.contains("schema_version")) {
      if (header["schema_version"] != kCorpusSchema) {
        diagnostics.warn(where, "unexpected schema version " +
                                    header["schema_version"].dump());
      }
      continue;
    }
    try {
      RawDocument doc = parse_corpus_line(line);
      doc.line = line_no_;
      auto [it, inserted] = seen_.emplace(doc.case_id, line_no_);
      if (!inserted) {
        diagnostics.warn(where, "duplicate case_id '" + doc.case_id +
                                    "' (first on line " +
                                    std::to_string(it->second) + ")");
        continue;
      }
      return doc;
    } catch (const ParseError& e) {
      diagnostics.warn(where, e.what());
    }
  }
  return std::nullopt;
}

std::vector<RawDocument> load_corpus(const std::filesystem::path& path,
                                     Diagnostics& diagnostics) {
  CorpusReader reader(path);
  std::vector<RawDocument> out;
  while (auto doc = reader.next(diagnostics)) out.push_back(std::move(*doc));
  return out;
}

namespace {

std::vector<TokenSpan> parse_span_comment(std::string_view s, std::size_t n) {
  std::vector<TokenSpan> out;
  std::istringstream in{std::string(s)};
  std::string item;
  while (in >> item) {
    auto dash = item.find('-');
    std::size_t a = 0;
    std::size_t b = 0;
    auto r1 = std::from_chars(item.data(), item.data() + (dash == std::string::npos ? item.size() : dash), a);
    if (r1.ec != std::errc()) throw ParseError("bad douduan span '" + item + "'");
    b = a;
    if (dash != std::string::npos) {
      auto r2 = std::from_chars(item.data() + dash + 1, item.data() + item.size(), b);
      if (r2.ec != std::errc()) throw ParseError("bad douduan span '" + item + "'");
    }
    if (a == 0 || b < a || b > n) throw ParseError("douduan span out of range '" + item + "'");
    out.push_back({a - 1, b});
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::size_t expect = k == 0 ? 0 : out[k - 1].end;
    if (out[k].begin != expect) throw ParseError("douduan spans must tile the sentence");
  }
  if (out.empty() || out.back().end != n) throw ParseError("douduan spans must tile the sentence");
  return out;
}

}  // namespace

ParseStore ParseStore::LoadDirectory(const std::filesystem::path& dir,
                                     Diagnostics& diagnostics) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("parse directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> conllu;
  std::vector<std::filesystem::path> trees;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == ".conllu") conllu.push_back(entry.path());
    if (entry.path().extension() == ".trees") trees.push_back(entry.path());
  }
  if (conllu.empty()) throw IoError("no .conllu file in " + dir.string());
  std::sort(conllu.begin(), conllu.end());
  std::sort(trees.begin(), trees.end());
  ParseStore store;
  for (const auto& p : conllu) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    store.add_conllu(in, p.filename().string(), diagnostics);
  }
  for (const auto& p : trees) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    store.add_trees(in, p.filename().string(), diagnostics);
  }
  return store;
}

void ParseStore::add_conllu(std::istream& in, const std::string& source,
                            Diagnostics& diagnostics) {
  auto result = read_conllu(in, source);
  diagnostics.append(result.diagnostics);
  for (auto& s : result.sentences) {
    const std::string where = source + ":" + std::to_string(s.line);
    auto doc = s.metadata.find("doc_id");
    if (doc == s.metadata.end()) doc = s.metadata.find("newdoc id");
    auto sent = s.metadata.find("sent_id");
    if (doc == s.metadata.end() || sent == s.metadata.end()) {
      diagnostics.warn(where, "sentence block without doc_id/sent_id");
      continue;
    }
    SentenceParse& slot = parses_[{doc->second, sent->second}];
    if (auto spans = s.metadata.find("douduan"); spans != s.metadata.end()) {
      try {
        slot.douduan_spans = parse_span_comment(spans->second, s.graph.size());
      } catch (const ParseError& e) {
        diagnostics.warn(where, e.what());
      }
    }
    slot.graph = std::move(s.graph);
  }
}

void ParseStore::add_trees(std::istream& in, const std::string& source,
                           Diagnostics& diagnostics) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty() || line.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      diagnostics.warn(where, "expected <doc_id> TAB <sent_id> TAB <tree>");
      continue;
    }
    try {
      auto tree = ConstituencyTree::Parse(std::string_view(line).substr(t2 + 1));
      parses_[{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)}].tree =
          std::move(tree);
    } catch (const ParseError& e) {
      diagnostics.warn(where, e.what());
    }
  }
}

void ParseStore::put(const std::string& doc_id, const std::string& sent_id,
                     SentenceParse parse) {
  parses_[{doc_id, sent_id}] = std::move(parse);
}

const SentenceParse* ParseStore::find(const std::string& doc_id,
                                      const std::string& sent_id) const {
  auto it = parses_.find({doc_id, sent_id});
  return it == parses_.end() ? nullptr : &it->second;
}

std::string parse_ref(const std::string& doc_id, std::size_t sentence_index) {
  return doc_id + "#" + std::to_string(sentence_index);
}

std::vector<TokenSpan> derive_douduan_spans(const DependencyGraph& graph) {
  std::string joined;
  std::vector<std::size_t> starts;  // byte offset of each token
  for (const auto& t : graph.tokens()) {
    starts.push_back(joined.size());
    joined += t.form;
  }
  std::vector<TokenSpan> out;
  std::size_t offset = 0;
  std::size_t tok = 0;
  for (const auto& clause : segment_douduan(joined)) {
    const std::size_t clause_end = offset + clause.size();
    const std::size_t begin = tok;
    while (tok < starts.size() && starts[tok] < clause_end) ++tok;
    if (tok > begin) out.push_back({begin, tok});
    offset = clause_end;
  }
  if (out.empty()) out.push_back({0, graph.size()});
  return out;
}

std::vector<TokenSpan> douduan_spans(const SentenceParse& parse) {
  if (!parse.douduan_spans.empty()) return parse.douduan_spans;
  if (!parse.graph) return {};
  return derive_douduan_spans(*parse.graph);
}

}  // namespace jddkb
