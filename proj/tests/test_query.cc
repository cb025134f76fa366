#include <cmath>
#include <random>

#include "doctest.h"
#include "jddkb/query.h"
#include "oracles.h"
#include "toy.h"

using namespace jddkb;
using toy::exempt;
using toy::injury;
using toy::months;

namespace {

const std::string kB = "故意伤害罪";

// c1: 殴打 x2, 推搡 with minor_second, 12 months
// c2: 殴打 with no damage, exemption, defense argument
// c3: 推搡 with slight and <=1000, 7 months
// c4: 殴打, 捅刺 with slight, exemption
std::vector<JddRecord> sample() {
  return {
      toy::record("c1", kB, {"殴打", "殴打", "推搡"}, {injury(InjuryLevel::kMinorSecond)}, months(12)),
      toy::record("c2", kB, {"殴打"}, {}, exempt(), true),
      toy::record("c3", kB, {"推搡"}, {injury(InjuryLevel::kSlight), toy::money(800)}, months(7)),
      toy::record("c4", kB, {"殴打", "捅刺"}, {injury(InjuryLevel::kSlight)}, exempt()),
  };
}

double value(const Histogram& h, const std::vector<std::string>& labels) {
  const auto* e = h.find(labels);
  return e ? e->value : -1;
}

}  // namespace

TEST_SUITE("query") {
  TEST_CASE("axis names") {
    CHECK(parse_axis("damage") == Axis::kDamage);
    CHECK_THROWS_AS(parse_axis("colour"), QueryError);
  }

  TEST_CASE("one-axis marginals, dense") {
    const auto kb = toy::build(sample());
    const auto h = get_marginals(kb, {kB, {Axis::kPunishment}, {}, CountMode::kTuples});
    CHECK(h.entries.size() == 83);
    CHECK(value(h, {"exemption"}) == 3);
    CHECK(value(h, {"m012"}) == 3);
    CHECK(value(h, {"m009"}) == 2);
    CHECK(value(h, {"life"}) == 0);
    CHECK(h.total() == 8);
    const auto d = get_marginals(kb, {kB, {Axis::kPunishment}, {}, CountMode::kDistinctCases});
    CHECK(value(d, {"exemption"}) == 2);
    CHECK(value(d, {"m012"}) == 1);
  }

  TEST_CASE("two axes with a fixed punishment") {
    const auto kb = toy::build(sample());
    const auto h = get_marginals(
        kb, {kB, {Axis::kAction, Axis::kDamage}, {{Axis::kPunishment, 0}}, CountMode::kTuples});
    CHECK(h.entries.size() == 3 * 12);
    CHECK(value(h, {"殴打", "none"}) == 1);
    CHECK(value(h, {"殴打", "injury:slight"}) == 1);
    CHECK(value(h, {"捅刺", "injury:slight"}) == 1);
    CHECK(h.total() == 3);
  }

  TEST_CASE("malformed marginal queries") {
    const auto kb = toy::build(sample());
    CHECK_THROWS_AS(get_marginals(kb, {"无此罪", {Axis::kAction}, {}}), QueryError);
    CHECK_THROWS_AS(get_marginals(kb, {kB, {}, {}}), QueryError);
    CHECK_THROWS_AS(get_marginals(kb, {kB, {Axis::kAction, Axis::kAction}, {}}), QueryError);
    CHECK_THROWS_AS(get_marginals(kb, {kB, {Axis::kAction}, {{Axis::kAction, 0}}}), QueryError);
    CHECK_THROWS_AS(get_marginals(kb, {kB, {Axis::kAction}, {{Axis::kDamage, 99}}}), QueryError);
  }

  TEST_CASE("conservation: each axis sums to the partition total") {
    const auto kb = toy::build(sample());
    for (auto a : {Axis::kAction, Axis::kDamage, Axis::kPunishment}) {
      CHECK(get_marginals(kb, {kB, {a}, {}}).total() == kb.partition(kB)->total());
    }
  }

  TEST_CASE("sort and select") {
    Histogram h{{Axis::kPunishment}, {{{"b"}, {1}, 2}, {{"a"}, {0}, 2}, {{"c"}, {2}, 5}}};
    const auto s = sort_descending(h);
    CHECK(s.entries[0].labels[0] == "c");
    CHECK(s.entries[1].labels[0] == "a");
    CHECK(s.entries[2].labels[0] == "b");
    CHECK(get_axis_values(s, [](double v) { return v < 3; }).size() == 2);
  }

  TEST_CASE("elbow analytic fixtures") {
    auto r = find_elbow({10, 9, 1, 0.9, 0.8});
    CHECK(r.found);
    CHECK(r.index == 2);
    CHECK(r.cutoff == 1);
    CHECK(find_elbow({100, 10, 5, 2, 1}).index == 1);
    CHECK(find_elbow({9, 1, 1, 1, 1}).index == 1);
    r = find_elbow({10, 8, 6, 5, 4, 3, 2, 1});
    CHECK(r.index == 2);
    CHECK(r.cutoff == 6);
    CHECK(find_elbow({2, 1, 1, 0}).index == 1);
    CHECK_FALSE(find_elbow({5, 5, 5, 5}).found);
    CHECK_FALSE(find_elbow({4, 3, 2, 1, 0}).found);
    CHECK_THROWS_AS(find_elbow({1, 2, 3}), QueryError);
    CHECK_THROWS_AS(find_elbow({3, 1}), QueryError);
  }

  TEST_CASE("elbow agrees with the oracle on random descending series") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 2000; ++i) {
      std::vector<double> v(3 + rng() % 30);
      for (auto& x : v) x = static_cast<double>(rng() % 50);
      std::sort(v.rbegin(), v.rend());
      const auto got = find_elbow(v);
      const auto want = oracle::elbow(v);
      CAPTURE(i);
      REQUIRE(got.found == want.has_value());
      if (want) {
        CHECK(got.index == *want);
        CHECK(got.cutoff == v[*want]);
      }
    }
  }

  TEST_CASE("elbow is scale invariant") {
    const std::vector<double> v = {40, 22, 9, 4, 3, 1};
    for (double k : {0.001, 3.0, 1e6}) {
      std::vector<double> w;
      for (double x : v) w.push_back(x * k);
      CHECK(find_elbow(w).index == find_elbow(v).index);
    }
  }

  TEST_CASE("importance scores") {
    Histogram whole{{Axis::kAction},
                    {{{"a"}, {0}, 100}, {{"b"}, {1}, 10}, {{"c"}, {2}, 4}, {{"d"}, {3}, 8}}};
    Histogram subset{{Axis::kAction},
                     {{{"a"}, {0}, 50}, {{"b"}, {1}, 5}, {{"c"}, {2}, 2}, {{"d"}, {3}, 0}}};
    // floor(0.25 * 4) = 1: "a" is dropped.
    const auto s = importance_scores(subset, whole, 0.25);
    REQUIRE(s.size() == 3);
    CHECK(s[0].action == "b");  // 0.5 with the larger partition frequency
    CHECK(s[1].action == "c");
    CHECK(s[2].action == "d");
    CHECK(s[2].score == 0);
    CHECK(importance_scores(subset, whole, 0.0).size() == 4);
    CHECK_THROWS_AS(importance_scores(subset, whole, 1.5), QueryError);
    Histogram stray{{Axis::kAction}, {{{"z"}, {0}, 1}}};
    CHECK_THROWS_AS(importance_scores(stray, whole, 0.0), QueryError);
  }

  TEST_CASE("forgiveness detection") {
    ForgivenessRules rules;
    JddRecord r;
    r.actions.push_back({{}, "取得", {"被害人谅解"}, {"已"}, {}, false});
    CHECK(shows_forgiveness(r, rules));
    r.actions[0].modifier = {"未"};
    CHECK_FALSE(shows_forgiveness(r, rules));
    r.actions[0] = {{}, "谅解", {}, {}, {}, false};
    CHECK(shows_forgiveness(r, rules));
    r.actions[0] = {{}, "取得", {"赔偿"}, {}, {}, false};
    CHECK_FALSE(shows_forgiveness(r, rules));
  }

  TEST_CASE("question one on a toy partition") {
    const auto kb = toy::build(sample());
    Diagnostics d;
    const auto q = question1_pipeline(kb, kB, Splitter::kDefenseArgument, {}, d);
    CHECK(q.c1 == std::vector<std::string>{"c2"});
    CHECK(q.c2 == std::vector<std::string>{"c1", "c3", "c4"});
    REQUIRE(q.pooled.size() == 2);
    CHECK(q.pooled[0].group == "C1");
    CHECK(q.pooled[0].pairs == 1);
    CHECK(q.pooled[1].pairs == 3);
    // C2 at slight damage: (c3, m009) and (c4, exemption).
    bool seen = false;
    for (const auto& g : q.per_damage) {
      if (g.group == "C2" && g.damage == "injury:slight") {
        seen = true;
        CHECK(g.pairs == 2);
        REQUIRE(g.density.size() == 2);
        CHECK(g.density[0] == std::pair<std::string, double>{"exemption", 0.5});
        CHECK(g.density[1] == std::pair<std::string, double>{"m009", 0.5});
      }
    }
    CHECK(seen);
    for (const auto& g : q.per_damage) {
      double sum = 0;
      for (const auto& [label, share] : g.density) sum += share;
      CHECK(std::abs(sum - 1) < 1e-12);
    }
  }

  TEST_CASE("question one with an empty group") {
    const auto kb = toy::build({sample()[0]});
    Diagnostics d;
    const auto q = question1_pipeline(kb, kB, Splitter::kDefenseArgument, {}, d);
    CHECK(q.c1.empty());
    CHECK(q.pooled.size() == 1);
    CHECK(d.size() == 1);
  }

  TEST_CASE("question two a: too few levels") {
    const auto kb = toy::build({sample()[0], sample()[2]});
    const auto q = question2a_pipeline(kb, kB);
    CHECK_FALSE(q.rare_tail);
    CHECK(q.note == "fewer than three punishment levels; no rare tail");
    REQUIRE(q.off_unit.size() == 1);
    CHECK(q.off_unit[0].months == 7);
    CHECK(q.off_unit[0].case_ids == std::vector<std::string>{"c3"});
  }

  TEST_CASE("question two a: rare tail with contexts") {
    std::vector<JddRecord> rs;
    int n = 0;
    auto add = [&](int count, const PunishmentVector& p, const std::string& verb) {
      for (int i = 0; i < count; ++i) {
        rs.push_back(toy::record("r" + std::to_string(n++), kB, {verb},
                                 {injury(InjuryLevel::kMinorSecond)}, p));
      }
    };
    add(20, months(12), "殴打");
    add(18, months(6), "殴打");
    add(2, months(36), "捅刺");
    add(1, exempt(), "推搡");
    const auto kb = toy::build(rs);
    const auto q = question2a_pipeline(kb, kB);
    REQUIRE(q.rare_tail);
    CHECK(q.elbow.index == 2);
    CHECK(q.elbow.cutoff == 2);
    REQUIRE(q.rare.size() == 2);
    CHECK(q.rare[0].punishment == "m036");
    CHECK(q.rare[0].contexts ==
          std::vector<CellContext>{{"捅刺", "injury:minor_second", 2}});
    CHECK(q.rare[1].punishment == "exemption");
  }

  TEST_CASE("question two a: three levels on the toy sample") {
    // Distinct cases: exemption 2, m009 1, m012 1; the knee is the first 1.
    const auto q = question2a_pipeline(toy::build(sample()), kB);
    REQUIRE(q.rare_tail);
    CHECK(q.elbow.index == 1);
    CHECK(q.rare.size() == 2);
  }

  TEST_CASE("question two b") {
    const auto kb = toy::build(sample());
    const auto q = question2b_pipeline(kb, kB, 20, 0.0);
    CHECK(q.fixed_punishment == "exemption");
    REQUIRE(q.top.size() == 3);
    CHECK(q.top[0].action == "捅刺");
    CHECK(q.top[0].score == 1);
    CHECK(q.top[1].action == "殴打");
    CHECK(q.top[1].score == doctest::Approx(0.5));
    CHECK(q.top[2].action == "推搡");
    CHECK(q.top[2].score == 0);
    CHECK(q.heatmap.entries.size() == 3 * 12);
    CHECK(q.heatmap.total() == 3);
    CHECK(question2b_pipeline(kb, kB, 1, 0.0).top.size() == 1);
  }

  TEST_CASE("heatmap export") {
    const auto dir = testing_support::scratch_dir("heatmap");
    Histogram h{{Axis::kAction, Axis::kDamage},
                {{{"a", "none"}, {0, 0}, 1}, {{"a", "x,y"}, {0, 1}, 0.5}, {{"b", "none"}, {1, 0}, 0}}};
    export_heatmap(h, dir / "h.csv");
    CHECK(testing_support::read_file(dir / "h.csv") ==
          "action/damage,none,\"x,y\"\na,1,0.5\nb,0,0\n");
    export_heatmap(Histogram{{Axis::kAction, Axis::kDamage}, {}}, dir / "e.csv");
    CHECK(testing_support::read_file(dir / "e.csv") == "action/damage\n");
    export_heatmap(h, dir / "h.json", ExportFormat::kJson);
    const auto j = nlohmann::json::parse(testing_support::read_file(dir / "h.json"));
    CHECK(j.at("axes").size() == 2);
    CHECK_THROWS_AS(export_heatmap(Histogram{{Axis::kAction}, {}}, dir / "x.csv"), QueryError);
    CHECK_THROWS_AS(export_heatmap(h, "/nonexistent/dir/h.csv"), IoError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(3) == "3");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3) == "0.3333333333333333");
  }
}
