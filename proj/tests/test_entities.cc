#include "doctest.h"
#include "jddkb/douduan.h"
#include "jddkb/entity_extractor.h"
#include "jddkb/model.h"
#include "oracles.h"

using namespace jddkb;

namespace {

PunishmentVector punish(std::string_view clause) {
  Diagnostics d;
  return extract_punishment(clause, PunishmentKeywordTable::Defaults(), d);
}

JddRecord with_sentences(std::vector<std::pair<FactClass, std::string>> ss) {
  JddRecord r;
  for (auto& [c, t] : ss) {
    ClassifiedSentence s;
    s.text = t;
    s.douduan = segment_douduan(t);
    s.fact_class = c;
    r.fact_sentences.push_back(s);
  }
  return r;
}

}  // namespace

TEST_SUITE("entities") {
  TEST_CASE("exemption keyword") {
    const auto v = punish("免于刑事处罚");
    CHECK(v.exemption);
    PunishmentVector only;
    only.exemption = true;
    CHECK(v == only);
    CHECK(punish("免予刑事处罚").exemption);
  }

  TEST_CASE("punishment components") {
    auto v = punish("判处有期徒刑三年六个月，缓刑四年，并处罚金人民币五千元");
    CHECK(v.fixed_term_months == 42);
    CHECK(v.probation_months == 48);
    CHECK(v.fine_yuan == 5000);
    v = punish("判处拘役四个月，并处罚金人民币2000元");
    CHECK(v.detention_months == 4);
    CHECK(v.fine_yuan == 2000);
    v = punish("判处无期徒刑，剥夺政治权利终身，并处没收个人全部财产");
    CHECK(v.life_imprisonment);
    CHECK(v.political_rights_deprivation_for_life);
    CHECK(v.political_rights_deprivation_months == 0);
    CHECK(v.confiscation.imposed);
    v = punish("判处死刑，缓期二年执行，剥夺政治权利终身");
    CHECK(v.death_with_probation);
    CHECK_FALSE(v.death);
    v = punish("判处死刑，剥夺政治权利终身");
    CHECK(v.death);
    v = punish("判处管制一年");
    CHECK(v.public_surveillance_months == 12);
    v = punish("判处有期徒刑十年，剥夺政治权利二年，并处没收个人财产人民币十万元");
    CHECK(v.political_rights_deprivation_months == 24);
    CHECK(v.confiscation.amount_yuan == 100000);
  }

  TEST_CASE("injury levels take the most severe, longest match") {
    CHECK(extract_injury_level("经鉴定，被害人损伤程度为轻伤二级")->injury_level() ==
          InjuryLevel::kMinorSecond);
    CHECK(extract_injury_level("一人轻微伤，一人重伤一级")->injury_level() ==
          InjuryLevel::kSeriousFirst);
    CHECK(extract_injury_level("被害人经抢救无效死亡")->injury_level() == InjuryLevel::kDeath);
    CHECK_FALSE(extract_injury_level("无伤情").has_value());
  }

  TEST_CASE("record damages use the first class that has any") {
    auto r = with_sentences({{FactClass::kProsecutorArgument, "指控盗窃财物价值3000元，致人轻伤二级"},
                             {FactClass::kCourtFacts, "查明盗窃财物价值2000元"}});
    Diagnostics d;
    const auto ds = extract_record_damages(r, EntityRules{}, d);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].amount_yuan() == 2000);
  }

  TEST_CASE("record damages keep one amount and each distinct injury") {
    auto r = with_sentences({{FactClass::kCourtFacts, "致一人轻伤二级"},
                             {FactClass::kCourtFacts, "致另一人轻伤二级，一人轻微伤"},
                             {FactClass::kCourtFacts, "损失共计人民币4000元"}});
    Diagnostics d;
    const auto ds = extract_record_damages(r, EntityRules{}, d);
    CHECK(ds.size() == 3);
  }

  TEST_CASE("crime name scanning") {
    const EntityRules rules;
    CHECK(find_crime_names("被告人甲犯盗窃罪、抢劫罪，判处", rules) ==
          std::vector<std::string>{"盗窃罪", "抢劫罪"});
    CHECK(find_crime_names("其行为已构成故意伤害罪", rules) ==
          std::vector<std::string>{"故意伤害罪"});
    CHECK(find_crime_names("犯走私、贩卖、运输、制造毒品罪", rules) ==
          std::vector<std::string>{"走私、贩卖、运输、制造毒品罪"});
    CHECK(find_crime_names("没有罪名", rules).empty());
  }

  TEST_CASE("charge normalization") {
    const auto t = CrimeTable::Defaults();
    auto c = normalize_charge("醉驾罪", ChargeStage::kCharged, t);
    CHECK(c.standard_name == "危险驾驶罪");
    CHECK(c.normalized);
    c = normalize_charge("盗窃", ChargeStage::kConvicted, t);
    CHECK(c.standard_name == "盗窃罪");
    c = normalize_charge("奇怪罪", ChargeStage::kCharged, t);
    CHECK_FALSE(c.normalized);
    CHECK(c.standard_name == "奇怪罪");
    CrimeTable bad;
    bad.add("甲罪", {"乙罪"});
    CHECK_THROWS_AS(bad.add("甲罪"), ConfigError);
    CHECK_THROWS_AS(bad.add("丙罪", {"乙罪"}), ConfigError);
  }

  TEST_CASE("charges come from the first prosecutor argument clause") {
    auto r = with_sentences({{FactClass::kProsecutorArgument, "公诉机关指控被告人犯盗窃罪"},
                             {FactClass::kProsecutorArgument, "另犯抢劫罪"}});
    Diagnostics d;
    const auto cs = extract_charges(r, EntityRules{}, d);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].standard_name == "盗窃罪");
    CHECK(cs[0].stage == ChargeStage::kCharged);
  }

  TEST_CASE("convictions per crime, combined sentence skipped") {
    const std::vector<CrimeCharge> charges = {
        {"盗窃罪", "盗窃罪", ChargeStage::kCharged, true}};
    Diagnostics d;
    const auto r = extract_convictions_and_punishments(
        "被告人甲犯盗窃罪，判处有期徒刑一年，并处罚金人民币二千元；犯故意伤害罪，"
        "判处有期徒刑二年；数罪并罚，决定执行有期徒刑二年十个月，并处罚金人民币二千元。",
        charges, EntityRules{}, d);
    REQUIRE(r.punishments.size() == 2);
    CHECK(r.convictions.size() == 2);
    CHECK(r.punishments[0].crime_name == "盗窃罪");
    CHECK(r.punishments[0].punishment.fixed_term_months == 12);
    CHECK(r.punishments[0].punishment.fine_yuan == 2000);
    CHECK_FALSE(r.punishments[0].unmatched);
    CHECK(r.punishments[1].crime_name == "故意伤害罪");
    CHECK(r.punishments[1].punishment.fixed_term_months == 24);
    CHECK(r.punishments[1].unmatched);
    CHECK(r.flags.empty());
  }

  TEST_CASE("contradictory punishment is flagged and dropped") {
    Diagnostics d;
    const auto r = extract_convictions_and_punishments(
        "被告人甲犯故意伤害罪，判处有期徒刑三年，无期徒刑。", {}, EntityRules{}, d);
    CHECK(r.punishments.empty());
    REQUIRE(r.flags.size() == 1);
    CHECK(r.flags[0].starts_with("punishment-invalid:故意伤害罪"));
    CHECK(r.flags[0].find("fixed-term×life") != std::string::npos);
  }

  TEST_CASE("exemption conviction") {
    Diagnostics d;
    const auto r = extract_convictions_and_punishments("被告人甲犯故意伤害罪，免于刑事处罚。", {},
                                                       EntityRules{}, d);
    REQUIRE(r.punishments.size() == 1);
    CHECK(oracle::punishment_bucket(r.punishments[0].punishment) == 0);
  }
}
