#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "jddkb/constituency_tree.h"
#include "jddkb/corpus.h"
#include "jddkb/dependency_graph.h"
#include "oracles.h"

using namespace jddkb;

namespace {

constexpr const char* kBlock =
    "# doc_id = d1\n"
    "# sent_id = 0\n"
    "1\t被告人\t被告人\tNOUN\tNN\t_\t3\tnsubj\t_\t_\n"
    "2\t当面\t当面\tADV\tAD\t_\t3\tadvmod\t_\t_\n"
    "3\t接收\t接收\tVERB\tVV\t_\t0\troot\t_\t_\n"
    "4\t红包\t红包\tNOUN\tNN\t_\t3\tobj\t_\t_\n"
    "\n";

}  // namespace

TEST_SUITE("parse") {
  TEST_CASE("conllu block") {
    std::istringstream in(kBlock);
    const auto r = read_conllu(in, "t.conllu");
    REQUIRE(r.sentences.size() == 1);
    CHECK(r.diagnostics.empty());
    const auto& g = r.sentences[0].graph;
    CHECK(r.sentences[0].metadata.at("doc_id") == "d1");
    CHECK(g.size() == 4);
    CHECK(g.root() == 2);
    CHECK_FALSE(g.head(2).has_value());
    CHECK(g.head(0) == 2);
    CHECK(g.dependents(2).size() == 3);
    CHECK(g.key(2) == "接收");
    CHECK(g.edges().size() == 3);
  }

  TEST_CASE("relation subtypes") {
    CHECK(base_relation("nsubj:pass") == "nsubj");
    CHECK(relation_subtype("nsubj:pass") == "pass");
    CHECK(relation_subtype("obj") == "");
  }

  TEST_CASE("multiword ranges and empty nodes are skipped") {
    std::istringstream in(
        "1-2\t甲乙\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\t甲\t_\tNOUN\tNN\t_\t2\tnsubj\t_\t_\n"
        "2\t走\t_\tVERB\tVV\t_\t0\troot\t_\t_\n"
        "2.1\t空\t_\t_\t_\t_\t_\t_\t_\t_\n\n");
    const auto r = read_conllu(in);
    REQUIRE(r.sentences.size() == 1);
    CHECK(r.sentences[0].graph.size() == 2);
    CHECK(r.sentences[0].graph.key(0) == "甲");  // lemma "_" falls back to form
  }

  TEST_CASE("bad blocks are reported and skipped") {
    std::istringstream in(
        "1\t甲\t_\tNOUN\tNN\t_\t5\tnsubj\t_\t_\n\n"           // head out of range
        "1\t甲\t_\tNOUN\tNN\t_\t1\tnsubj\t_\t_\n\n"           // self loop, no root
        "1\t甲\t_\tNOUN\tNN\n\n"                              // too few columns
        "1\t甲\t_\tNOUN\tNN\t_\t2\tnsubj\t_\t_\n"
        "2\t乙\t_\tVERB\tVV\t_\t1\tccomp\t_\t_\n\n"           // cycle
        + std::string(kBlock));
    const auto r = read_conllu(in, "bad.conllu");
    CHECK(r.sentences.size() == 1);
    CHECK(r.diagnostics.size() == 4);
  }

  TEST_CASE("phrase stops at the given relations") {
    std::istringstream in(kBlock);
    const auto g = read_conllu(in).sentences[0].graph;
    const std::string_view stop[] = {"advmod"};
    CHECK(g.phrase(2, stop) == "被告人接收红包");
    CHECK(g.subtree(2, {}).size() == 4);
  }

  TEST_CASE("constituency tree") {
    const auto t = ConstituencyTree::Parse("(ROOT (IP (NP (NN 甲)) (VP (VV 走) (NP (NN 路)))))");
    CHECK(t.leaf_count() == 3);
    CHECK(t.words() == std::vector<std::string>{"甲", "走", "路"});
    CHECK(t.tag(1) == "VV");
    CHECK(t.path_labels(1) == std::vector<std::string>{"ROOT", "IP", "VP", "VV"});
    CHECK(ConstituencyTree::Parse(t.to_string()).to_string() == t.to_string());
    CHECK_THROWS_AS(ConstituencyTree::Parse("(IP (NP (NN 甲))"), ParseError);
    CHECK_THROWS_AS(ConstituencyTree::Parse("(IP (NP (NN 甲))))"), ParseError);
    CHECK_THROWS_AS(ConstituencyTree::Parse(""), ParseError);
  }

  TEST_CASE("corpus line") {
    const auto d = parse_corpus_line(
        R"({"case_id":"c1","case_type":"criminal","parties":[{"role":"defendant","name":"甲"}],)"
        R"("facts":"公诉机关指控，甲盗窃。经审理查明，属实。","decision":"被告人甲犯盗窃罪。"})");
    CHECK(d.case_id == "c1");
    CHECK(d.sentences.size() == 2);
    CHECK(d.parties.size() == 1);
    CHECK_THROWS_AS(parse_corpus_line("{"), ParseError);
    CHECK_THROWS_AS(parse_corpus_line(R"({"facts":[]})"), ParseError);
    CHECK_THROWS_AS(parse_corpus_line(R"({"case_id":"x","case_type":"weird","facts":[]})"),
                    ParseError);
  }

  TEST_CASE("corpus reader skips bad and duplicate lines") {
    const auto dir = testing_support::scratch_dir("corpus_reader");
    {
      std::ofstream out(dir / "c.jsonl");
      out << R"({"schema_version":"jddkb-corpus/1"})" << "\n"
          << R"({"case_id":"a","facts":["x。"],"decision":""})" << "\n"
          << "not json\n"
          << R"({"case_id":"a","facts":["y。"],"decision":""})" << "\n"
          << R"({"case_id":"b","facts":["z。"],"decision":""})" << "\n";
    }
    Diagnostics diags;
    const auto docs = load_corpus(dir / "c.jsonl", diags);
    REQUIRE(docs.size() == 2);
    CHECK(docs[1].case_id == "b");
    CHECK(diags.size() == 2);
    CHECK_THROWS_AS(load_corpus(dir / "missing.jsonl", diags), IoError);
  }

  TEST_CASE("parse store keys by doc and sentence") {
    Diagnostics diags;
    ParseStore store;
    std::istringstream in(kBlock);
    store.add_conllu(in, "t", diags);
    std::istringstream trees(
        "d1\t0\t(ROOT (IP (NP (NN 被告人)) (VP (ADVP (AD 当面)) (VP (VV 接收) (NP (NN 红包))))))\n");
    store.add_trees(trees, "t", diags);
    const auto* p = store.find("d1", "0");
    REQUIRE(p);
    CHECK(p->graph.has_value());
    CHECK(p->tree.has_value());
    CHECK(store.find("d1", "1") == nullptr);
    CHECK(parse_ref("d1", 3) == "d1#3");
    CHECK_THROWS_AS(ParseStore::LoadDirectory("/nonexistent/dir", diags), IoError);
  }

  TEST_CASE("explicit douduan ranges override derived spans") {
    Diagnostics diags;
    ParseStore store;
    std::istringstream in(std::string("# doc_id = d\n# sent_id = 0\n# douduan = 1-2 3-4\n") +
                          (kBlock + std::string(kBlock).find("1\t")));
    store.add_conllu(in, "t", diags);
    const auto* p = store.find("d", "0");
    REQUIRE(p);
    CHECK(douduan_spans(*p) == std::vector<TokenSpan>{{0, 2}, {2, 4}});
    CHECK(derive_douduan_spans(*p->graph) == std::vector<TokenSpan>{{0, 4}});
  }
}
