#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "jddkb/action_extractor.h"
#include "jddkb/corpus.h"
#include "oracles.h"

using namespace jddkb;

namespace {

const testing_support::ActionFixture& fixture(const std::string& name) {
  static const auto all = testing_support::run_action_fixtures();
  for (const auto& f : all) {
    if (f.name == name) return f;
  }
  FAIL("missing fixture " << name);
  return all.front();
}

std::string show(const std::vector<ActionRecord>& as) {
  std::ostringstream s;
  for (const auto& a : as) {
    s << "[" << a.source.sentence << "." << a.source.douduan << " " << a.trigger << " subj=";
    for (const auto& x : a.subject) s << x << "|";
    s << (a.subject_inherited ? "(inh)" : "") << " obj=";
    for (const auto& x : a.object) s << x << "|";
    s << " mod=";
    for (const auto& x : a.modifier) s << x << "|";
    s << "]\n";
  }
  return s.str();
}

}  // namespace

TEST_SUITE("actions") {
  TEST_CASE("fixtures match hand-derived records") {
    for (const auto& f : testing_support::run_action_fixtures()) {
      CAPTURE(f.name);
      INFO("actual:\n" << show(f.actual) << "expected:\n" << show(f.expected));
      CHECK(f.actual == f.expected);
    }
  }

  TEST_CASE("fixture coverage") {
    std::size_t clauses = 0;
    for (const auto& f : testing_support::run_action_fixtures()) clauses += f.douduan;
    CHECK(clauses >= 20);
  }

  TEST_CASE("red pocket example") {
    const auto& f = fixture("red_pocket");
    REQUIRE(f.actual.size() == 1);
    CHECK(f.actual[0].trigger == "接收");
    CHECK(f.actual[0].object == std::vector<std::string>{"手机微信红包"});
    CHECK(f.actual[0].modifier == std::vector<std::string>{"当面"});
  }

  TEST_CASE("passive and disposal exceptions") {
    CHECK(fixture("passive_bei").actual.at(0).object == std::vector<std::string>{"张某"});
    CHECK(fixture("jiang_coordinated").actual.at(0).object ==
          std::vector<std::string>{"手机", "钱包"});
  }

  TEST_CASE("document window lets inheritance cross class boundaries") {
    ActionRules rules;
    rules.window = InheritanceWindow::kDocument;
    for (const auto& f : testing_support::run_action_fixtures(rules)) {
      if (f.name != "inheritance_window") continue;
      const auto& strict = fixture("inheritance_window");
      REQUIRE(f.actual.size() == strict.actual.size());
      bool differs = false;
      for (std::size_t i = 0; i < f.actual.size(); ++i) {
        if (f.actual[i].subject != strict.actual[i].subject) differs = true;
        if (strict.actual[i].subject.empty()) CHECK_FALSE(f.actual[i].subject.empty());
      }
      CHECK(differs);
    }
  }

  TEST_CASE("sentence window never inherits across sentences") {
    ActionRules rules;
    rules.window = InheritanceWindow::kSentence;
    for (const auto& f : testing_support::run_action_fixtures(rules)) {
      for (const auto& a : f.actual) {
        if (a.subject_inherited && !a.subject.empty()) {
          // The donor must sit in the same sentence.
          bool found = false;
          for (const auto& b : f.actual) {
            if (b.source.sentence == a.source.sentence && b.source < a.source &&
                b.subject == a.subject) {
              found = true;
            }
          }
          CAPTURE(f.name);
          CHECK(found);
        }
      }
    }
  }

  TEST_CASE("every trigger passes rule one or hangs off one") {
    for (const auto& f : testing_support::run_action_fixtures()) {
      for (const auto& a : f.actual) {
        CHECK_FALSE(a.trigger.empty());
        for (const auto& m : a.modifier) {
          CHECK(m != "遂");
          CHECK(m != "并");
        }
      }
    }
  }

  TEST_CASE("window names") {
    CHECK(parse_inheritance_window("same_class") == InheritanceWindow::kSameClass);
    CHECK(to_string(InheritanceWindow::kDocument) == "document");
    CHECK_FALSE(parse_inheritance_window("x").has_value());
  }

  TEST_CASE("misaligned tree is reported, not fatal") {
    Diagnostics diags;
    ParseStore store;
    std::istringstream in(
        "# doc_id = d\n# sent_id = 0\n"
        "1\t甲\t_\tNOUN\tNN\t_\t2\tnsubj\t_\t_\n"
        "2\t走\t_\tVERB\tVV\t_\t0\troot\t_\t_\n\n");
    store.add_conllu(in, "t", diags);
    std::istringstream trees("d\t0\t(ROOT (IP (NP (NN 乙)) (VP (VV 走))))\n");
    store.add_trees(trees, "t", diags);
    ClassifiedSentence s;
    s.text = "甲走";
    s.fact_class = FactClass::kCourtFacts;
    const SentenceParse* parses[] = {store.find("d", "0")};
    const ClassifiedSentence sentences[] = {s};
    Diagnostics out;
    CHECK(extract_document_actions(sentences, parses, {}, out, "d").empty());
    CHECK(out.size() == 1);
  }

  TEST_CASE("hapax pruning over a corpus") {
    std::vector<JddRecord> corpus(2);
    for (const char* t : {"殴打", "殴打", "窃取"}) corpus[0].actions.push_back({{}, t, {}, {}, {}, false});
    corpus[1].actions.push_back({{}, "窃取", {}, {}, {}, false});
    corpus[1].actions.push_back({{}, "推搡", {}, {}, {}, false});
    const auto report = prune_hapax_triggers(corpus);
    CHECK(report.removed_lemmas == std::vector<std::string>{"推搡"});
    CHECK(report.removed_records == 1);
    CHECK(corpus[0].actions.size() == 3);
    CHECK(corpus[1].actions.size() == 1);
    // Idempotent once no hapax remains.
    CHECK(prune_hapax_triggers(corpus).removed_records == 0);
  }

  TEST_CASE("pruning property: survivors all appear at least twice") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
      std::vector<ActionRecord> as;
      const int n = static_cast<int>(rng() % 40);
      for (int i = 0; i < n; ++i) {
        ActionRecord a;
        a.trigger = "v" + std::to_string(rng() % 15);
        as.push_back(a);
      }
      auto pruned = as;
      prune_hapax_triggers(pruned);
      std::map<std::string, int> before, after;
      for (const auto& a : as) ++before[a.trigger];
      for (const auto& a : pruned) ++after[a.trigger];
      for (const auto& [t, c] : before) {
        CHECK(after[t] == (c >= 2 ? c : 0));
      }
    }
  }
}
