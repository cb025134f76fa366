#include <random>

#include "doctest.h"
#include "jddkb/model.h"
#include "jddkb/record_io.h"
#include "jddkb/scale.h"
#include "oracles.h"

using namespace jddkb;

namespace {

PunishmentVector random_vector(std::mt19937_64& rng) {
  auto flip = [&](int in) { return static_cast<int>(rng() % 100) < in; };
  auto months = [&](int in) { return flip(in) ? static_cast<std::int64_t>(1 + rng() % 240) : 0; };
  PunishmentVector v;
  v.exemption = flip(20);
  v.public_surveillance_months = months(10);
  v.detention_months = months(15);
  v.fixed_term_months = months(40);
  v.probation_months = months(15);
  v.fine_yuan = flip(30) ? static_cast<std::int64_t>(rng() % 100000) : 0;
  v.political_rights_deprivation_months = months(10);
  v.confiscation.imposed = flip(5);
  v.confiscation.amount_yuan = flip(5) ? static_cast<std::int64_t>(rng() % 10000) : 0;
  v.life_imprisonment = flip(15);
  v.death = flip(10);
  v.death_with_probation = flip(10);
  v.political_rights_deprivation_for_life = flip(10);
  return v;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("enum names round trip") {
    for (auto c : {FactClass::kCaseBackground, FactClass::kCourtFacts, FactClass::kUnclassified}) {
      CHECK(parse_fact_class(to_string(c)) == c);
      CHECK(parse_schema_element(schema_element(c)) == c);
    }
    for (auto l : kInjuryLevels) CHECK(parse_injury_level(to_string(l)) == l);
    CHECK(parse_punishment_component("fixed_term_months") == PunishmentComponent::kFixedTerm);
    CHECK_FALSE(parse_case_type("x").has_value());
  }

  TEST_CASE("damage values") {
    CHECK(DamageValue::Monetary(5).kind() == DamageKind::kMonetary);
    CHECK_THROWS_AS(DamageValue::Monetary(-1), std::invalid_argument);
    CHECK(DamageValue::Injury(InjuryLevel::kDeath).injury_level() == InjuryLevel::kDeath);
    CHECK_FALSE(DamageValue::Injury(InjuryLevel::kDeath).amount_yuan().has_value());
  }

  TEST_CASE("fixed term with life is rejected") {
    PunishmentVector v;
    v.fixed_term_months = 36;
    v.life_imprisonment = true;
    const auto r = validate_punishment(v);
    CHECK_FALSE(r.ok());
    CHECK(r.violations == std::vector<std::string>{"fixed-term×life"});
  }

  TEST_CASE("exemption stands alone") {
    PunishmentVector v;
    v.exemption = true;
    CHECK(validate_punishment(v).ok());
    v.fine_yuan = 100;
    CHECK(validate_punishment(v).violations == std::vector<std::string>{"exemption-exclusivity"});
  }

  TEST_CASE("random vectors agree with the constraint oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
      const auto v = random_vector(rng);
      CHECK(validate_punishment(v).violations == oracle::default_violations(v));
    }
  }

  TEST_CASE("custom rules parse") {
    const auto c = ConstraintTable::ParseRule("x", "exclusive fine_yuan | detention_months");
    CHECK(c.kind == IntegrityConstraint::Kind::kMutuallyExclusive);
    PunishmentVector v;
    v.fine_yuan = 1;
    CHECK_FALSE(c.violated_by(v));
    v.detention_months = 1;
    CHECK(c.violated_by(v));
    CHECK_THROWS_AS(ConstraintTable::ParseRule("y", "exclusive fine_yuan"), ConfigError);
    CHECK_THROWS_AS(ConstraintTable::ParseRule("y", "sole nonsense"), ConfigError);
    CHECK_THROWS_AS(ConstraintTable::ParseRule("y", "maybe death"), ConfigError);
  }

  TEST_CASE("record json round trip") {
    JddRecord r;
    r.case_id = "c1";
    r.crime_type = "盗窃罪";
    r.parties.push_back({PartyRole::kDefendant, "甲", {{"age", 30}}});
    ClassifiedSentence s;
    s.text = "甲盗窃手机。";
    s.douduan = {s.text};
    s.fact_class = FactClass::kCourtFacts;
    s.dependency_ref = "c1#0";
    r.fact_sentences.push_back(s);
    r.decision_text = "被告人甲犯盗窃罪，免于刑事处罚。";
    r.actions.push_back({{"甲"}, "盗窃", {"手机"}, {"当场"}, {0, 0}, false});
    r.damages = {DamageValue::Monetary(25920), DamageValue::Injury(InjuryLevel::kMinorFirst)};
    r.charges.push_back({"盗窃罪", "盗窃罪", ChargeStage::kConvicted, true});
    PunishmentVector v;
    v.exemption = true;
    r.punishments.push_back({"盗窃罪", v, false});
    r.flags = {"note"};
    CHECK(record_from_json(nlohmann::json::parse(serialize_record(r))) == r);
    CHECK_THROWS_AS(record_from_json(nlohmann::json::object()), ParseError);
  }

  TEST_CASE("records file round trip and bad header") {
    const auto dir = testing_support::scratch_dir("records_io");
    std::vector<JddRecord> rs(2);
    rs[0].case_id = "a";
    rs[1].case_id = "b";
    write_records(dir / "r.jsonl", rs);
    Diagnostics d;
    CHECK(read_records(dir / "r.jsonl", d) == rs);
    {
      std::ofstream out(dir / "bad.jsonl");
      out << R"({"schema_version":"other/9"})" << "\n";
    }
    CHECK_THROWS_AS(read_records(dir / "bad.jsonl", d), ParseError);
    CHECK_THROWS_AS(read_records(dir / "none.jsonl", d), IoError);
  }
}

TEST_SUITE("scale") {
  TEST_CASE("default scale has eighty levels") {
    const PunishmentScale s;
    CHECK(s.level_count() == 80);
    CHECK(s.size() == 83);
    CHECK(s.label(0) == "exemption");
    CHECK(s.label(1) == "m003");
    CHECK(s.label(76) == "m228");
    CHECK(s.label(77) == "life");
    CHECK(s.label(79) == "death");
    for (int i = 0; i < s.size(); ++i) {
      CHECK(s.index_of(s.label(i)) == i);
      CHECK(s.label(i) == oracle::punishment_label(i));
    }
  }

  TEST_CASE("bucket matches the oracle on random vectors") {
    std::mt19937_64 rng(5);
    const PunishmentScale s;
    for (int i = 0; i < 5000; ++i) {
      const auto v = random_vector(rng);
      CHECK(s.bucket(v) == oracle::punishment_bucket(v));
    }
  }

  TEST_CASE("months are monotone and clamp") {
    const PunishmentScale s;
    int prev = s.step_bucket(0);
    CHECK(prev == 0);
    for (int m = 1; m <= 240; ++m) {
      const int b = s.step_bucket(m);
      CHECK(b >= prev);
      CHECK(b == std::min(76, (m + 2) / 3));
      prev = b;
    }
  }

  TEST_CASE("max combine and custom unit") {
    PunishmentScale s(10, 6, MonthsCombine::kMax);
    PunishmentVector v;
    v.detention_months = 5;
    v.fixed_term_months = 13;
    CHECK(s.liberty_months(v) == 13);
    CHECK(s.bucket(v) == 3);
    CHECK(s.level_count() == 14);
    CHECK_THROWS_AS(PunishmentScale(0, 3), ConfigError);
    CHECK_THROWS_AS(PunishmentScale(3, 0), ConfigError);
  }

  TEST_CASE("fine buckets") {
    const PunishmentScale s;
    CHECK(s.fine_bucket(0) == 0);
    CHECK(s.fine_bucket(1000) == 1);
    CHECK(s.fine_bucket(1001) == 2);
    CHECK(s.fine_bucket(1000000) == s.fine_bucket_count() - 1);
  }

  TEST_CASE("damage axis") {
    const DamageAxis a;
    CHECK(a.size() == 12);
    for (int i = 0; i < a.size(); ++i) {
      CHECK(a.label(i) == oracle::damage_label(i));
      CHECK(a.index_of(a.label(i)) == i);
    }
    for (std::int64_t y : {0, 1, 1000, 1001, 5000, 20000, 20001, 100000, 100001, 9999999}) {
      CHECK(a.coordinate(DamageValue::Monetary(y)) ==
            oracle::damage_coordinate(DamageValue::Monetary(y)));
    }
    for (auto l : kInjuryLevels) {
      CHECK(a.coordinate(DamageValue::Injury(l)) ==
            oracle::damage_coordinate(DamageValue::Injury(l)));
    }
    CHECK_THROWS_AS(DamageAxis({5, 5}), ConfigError);
    CHECK_THROWS_AS(DamageAxis({0}), ConfigError);
  }
}
