#include <doctest.h>

#include "haar/error.hpp"
#include "haar/suite.hpp"

using namespace haar;

TEST_SUITE("suite") {
  TEST_CASE("config round trip and validation") {
    suite::Config c;
    c.apply({{"seed", 9}, {"thm2a_eps", {0.1}}});
    CHECK(c.seed == 9);
    CHECK(c.thm2a_eps.size() == 1);
    suite::Config d;
    d.apply(c.to_json());
    CHECK(d.to_json() == c.to_json());
    CHECK_THROWS_AS(c.apply({{"nope", 1}}), PreconditionError);
    CHECK_THROWS_AS(c.apply({{"shards", 0}}), PreconditionError);
    CHECK_THROWS_AS(c.apply(nlohmann::json::array()), PreconditionError);
  }

  TEST_CASE("reports are identical across runs and shard counts") {
    suite::Config c;
    c.lemma5_samples = 3000;
    c.seed = 5;
    const auto a = suite::sections_json({{"lemma5", suite::lemma5(c)}}, c).dump();
    const auto b = suite::sections_json({{"lemma5", suite::lemma5(c)}}, c).dump();
    CHECK(a == b);
    suite::Config s = c;
    s.shards = 3;
    auto ja = suite::sections_json({{"lemma5", suite::lemma5(c)}}, c);
    auto jb = suite::sections_json({{"lemma5", suite::lemma5(s)}}, s);
    for (std::size_t i = 0; i < ja["sections"][0]["reports"].size(); ++i) {
      auto ra = ja["sections"][0]["reports"][i], rb = jb["sections"][0]["reports"][i];
      CHECK(ra["lhs"] == rb["lhs"]);
      CHECK(ra["mc_stderr"] == rb["mc_stderr"]);
    }
  }

  TEST_CASE("exact suites are large enough") {
    const suite::Config c;
    const auto l = suite::lemma1(c);
    std::size_t lemma = 0;
    for (const auto& r : l) {
      CHECK(r.pass);
      if (r.check == "lemma1") ++lemma;
    }
    CHECK(lemma >= 300);
    for (const auto& r : suite::prop1(c)) CHECK(r.pass);
  }
}
