#include <filesystem>

#include "doctest.h"
#include "jddkb/config.h"
#include "jddkb/keyvalue.h"
#include "jddkb/synth.h"

using namespace jddkb;

namespace {

EngineConfig parse(const std::string& text) {
  return EngineConfig::FromDocument(KeyValueDocument::Parse(text, "t.conf"));
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("key-value documents") {
    const auto d = KeyValueDocument::Parse("version = 1\n# c\n[a]\nk = v, w\n\n[b]\nk=x\n", "s");
    CHECK(d.version() == 1);
    CHECK(d.get("a", "k") == "v, w");
    CHECK(d.get("b", "k") == "x");
    CHECK_FALSE(d.get("a", "z").has_value());
    CHECK(d.has_section("b"));
    CHECK(split_values("a, b ,,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK_THROWS_AS(KeyValueDocument::Parse("[a]\nk=v\n", "s"), ConfigError);
    CHECK_THROWS_AS(KeyValueDocument::Parse("version = x\n", "s"), ConfigError);
    CHECK_THROWS_AS(KeyValueDocument::Parse("version = 1\n[a\n", "s"), ConfigError);
    CHECK_THROWS_AS(KeyValueDocument::Parse("version = 1\nnovalue\n", "s"), ConfigError);
    CHECK_THROWS_AS(KeyValueDocument::Load("/nonexistent.conf"), IoError);
  }

  TEST_CASE("defaults") {
    const auto c = parse("version = 1\n");
    CHECK(c.scale.level_count() == 80);
    CHECK(c.damage_axis.size() == 12);
    CHECK(c.filter_fraction == 0.05);
    CHECK(c.top_k == 20);
    CHECK(c.prune_hapax);
    CHECK(c.actions.window == InheritanceWindow::kSameClass);
    CHECK(c.entities.constraints.constraints().size() == 5);
  }

  TEST_CASE("shipped default.conf equals the built-in defaults") {
    const auto c = EngineConfig::Load(std::filesystem::path(JDDKB_FIXTURES_DIR) / ".." / ".." /
                                      "config" / "default.conf");
    const auto d = EngineConfig::Defaults();
    CHECK(c.actions.window == d.actions.window);
    CHECK(c.actions.excluded_modifiers == d.actions.excluded_modifiers);
    CHECK(c.actions.path_labels == d.actions.path_labels);
    CHECK(c.entities.total_cues == d.entities.total_cues);
    CHECK(c.entities.damage_priority == d.entities.damage_priority);
    CHECK(c.entities.constraints.constraints().size() == 5);
    CHECK(c.entities.crimes.names() == d.entities.crimes.names());
    CHECK(c.cues.cues().size() == d.cues.cues().size());
    CHECK(c.scale.level_count() == d.scale.level_count());
    CHECK(c.scale.fine_edges() == d.scale.fine_edges());
    CHECK(c.damage_axis.money_edges() == d.damage_axis.money_edges());
    CHECK(c.filter_fraction == d.filter_fraction);
    CHECK(c.top_k == d.top_k);
    CHECK(c.elbow_tolerance == d.elbow_tolerance);
    CHECK(c.forgiveness.terms == d.forgiveness.terms);
    CHECK(c.forgiveness.negations == d.forgiveness.negations);
  }

  TEST_CASE("overrides") {
    const auto c = parse(
        "version = 1\n"
        "[actions]\nwindow = document\nprune_hapax = false\n"
        "[scale]\nsteps = 40\nunit_months = 6\ncombine = max\n"
        "[damage]\nmoney_edges = 500, 2000\n"
        "[query]\nfilter_fraction = 0.1\ntop_k = 5\n"
        "[crimes]\ncrime = 虚构罪, 假想罪\n"
        "[constraints]\nno-fine-with-detention = exclusive fine_yuan | detention_months\n"
        "[injury]\ndefaults = replace\nkeyword = 擦伤, slight\n");
    CHECK(c.actions.window == InheritanceWindow::kDocument);
    CHECK_FALSE(c.prune_hapax);
    CHECK(c.scale.level_count() == 44);
    CHECK(c.scale.combine() == MonthsCombine::kMax);
    CHECK(c.damage_axis.size() == 10);
    CHECK(c.filter_fraction == 0.1);
    CHECK(c.top_k == 5);
    CHECK(c.entities.crimes.normalize("假想罪") == "虚构罪");
    CHECK(c.entities.crimes.normalize("盗窃罪") == "盗窃罪");
    CHECK(c.entities.constraints.constraints().size() == 6);
    CHECK(c.entities.injury.keywords().size() == 1);
  }

  TEST_CASE("errors name the line and key") {
    CHECK(error_of("version = 2\n").find("version 2") != std::string::npos);
    CHECK(error_of("version = 1\n[nope]\nk = v\n").find("t.conf:3") != std::string::npos);
    CHECK(error_of("version = 1\nk = v\n").find("outside any section") != std::string::npos);
    const auto e = error_of("version = 1\n[scale]\nsteps = many\n");
    CHECK(e.find("t.conf:3") != std::string::npos);
    CHECK(e.find("steps") != std::string::npos);
    CHECK_FALSE(error_of("version = 1\n[actions]\nwindow = galaxy\n").empty());
    CHECK_FALSE(error_of("version = 1\n[damage]\nmoney_edges = 5, 3\n").empty());
    CHECK_FALSE(error_of("version = 1\n[query]\nfilter_fraction = 2\n").empty());
    CHECK_FALSE(error_of("version = 1\n[constraints]\nbad = sole nothing\n").empty());
    CHECK_FALSE(error_of("version = 1\n[cues]\ndefaults = replace\ncue = 指控, prosecutor_argument\n")
                    .empty());
  }

  TEST_CASE("synthetic options") {
    const auto d = KeyValueDocument::Parse(
        "version = 1\n[synth]\nsize = 7\ncrimes = 盗窃罪:1\ninvalid_rate = 0\n", "s");
    const auto o = SynthOptions::FromDocument(d);
    CHECK(o.size == 7);
    REQUIRE(o.crimes.size() == 1);
    CHECK(o.crimes[0].first == "盗窃罪");
    CHECK(o.invalid_rate == 0);
    CHECK_THROWS_AS(SynthOptions::FromDocument(
                        KeyValueDocument::Parse("version = 1\n[synth]\nsize = -1\n", "s")),
                    ConfigError);
    CHECK_THROWS_AS(SynthOptions::FromDocument(
                        KeyValueDocument::Parse("version = 1\n[synth]\ncrimes = 未知罪:1\n", "s")),
                    ConfigError);
  }
}
