#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "wfs/generators.hpp"
#include "wfs/serialize.hpp"

using namespace wfs;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(WFS_FIXTURES) + "/" + name);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("scenario round trip preserves the digest", "[serialize]") {
  auto rng = make_stream(111);
  for (int rep = 0; rep < 10; ++rep) {
    const OpsKind kind = rep % 2 ? OpsKind::MixtureChannel : OpsKind::BlockUnitary;
    const Scenario s =
        random_scenario(2 + rep % 3, 1 + rep % 2, 2, Dynamics::NoM, kind, rng);
    const Scenario back = scenario_from_json(scenario_to_json(s));
    REQUIRE(scenario_digest(back) == scenario_digest(s));
  }
}

TEST_CASE("bipartite round trip preserves the digest", "[serialize]") {
  auto rng = make_stream(112);
  const BipartiteScenario bs = random_bipartite_scenario(Dynamics::AoM, rng);
  const json j = bipartite_to_json(bs);
  REQUIRE(is_bipartite_json(j));
  const BipartiteScenario back = bipartite_from_json(j);
  REQUIRE(bipartite_digest(back) == bipartite_digest(bs));
}

TEST_CASE("parse errors name the failed invariant", "[serialize]") {
  json j = scenario_to_json(violating_nom_realization(2, QVector::uniform(2)));

  json no_psi = j;
  no_psi.erase("psi");
  REQUIRE_THROWS_WITH(scenario_from_json(no_psi), ContainsSubstring("psi"));

  json bad_dyn = j;
  bad_dyn["dynamics"] = "collapse";
  REQUIRE_THROWS_WITH(scenario_from_json(bad_dyn), ContainsSubstring("AoM"));

  json bad_block = j;
  bad_block["ops"][1]["blocks"][0][0][0] = json::array({2.0, 0.0});
  REQUIRE_THROWS_WITH(scenario_from_json(bad_block), ContainsSubstring("unitarity"));

  json bad_m = j;
  bad_m["m"] = 5;
  REQUIRE_THROWS_WITH(scenario_from_json(bad_m), ContainsSubstring("ops"));

  json bad_complex = j;
  bad_complex["psi"][0] = json::array({1.0});
  REQUIRE_THROWS_WITH(scenario_from_json(bad_complex), ContainsSubstring("re, im"));

  json bad_norm = j;
  bad_norm["psi"][0] = json::array({0.9, 0.0});
  bad_norm["psi"][1] = json::array({0.9, 0.0});
  REQUIRE_THROWS_WITH(scenario_from_json(bad_norm), ContainsSubstring("normalization"));
}

TEST_CASE("witness report JSON carries the full contract", "[serialize]") {
  WitnessReport r;
  r.witness = "T";
  r.value = 1.0;
  r.bound = 0.5;
  r.violated = true;
  r.digest = "abc";
  r.seed = 7;
  const json j = report_to_json(r);
  for (const char* key : {"witness", "value", "bound", "violated", "digest", "seed", "tolerance"})
    REQUIRE(j.contains(key));
  REQUIRE(j["violated"].get<bool>());
  REQUIRE_THAT(j["tolerance"].get<double>(), WithinAbs(kEpsProb, 0.0));
}

TEST_CASE("joint table JSON has 32 labeled probabilities", "[serialize]") {
  const JointTable t = joint_table(nom_violating_strategy());
  const json j = table_to_json(t);
  REQUIRE(j.size() == 32);
  REQUIRE_THAT(j["p(0,0|0,0,0)"].get<double>(), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(j["p(0,1|1,1,0)"].get<double>(), WithinAbs(0.5, 1e-12));
  double total = 0.0;
  for (const auto& [key, value] : j.items()) total += value.get<double>();
  REQUIRE_THAT(total, WithinAbs(8.0, 1e-9));  // 8 normalized tables
}

TEST_CASE("shipped fixtures parse and evaluate to their contract values", "[serialize]") {
  const Scenario nom = scenario_from_json(load("nom_T.json"));
  REQUIRE_THAT(eval_T(nom, 1).value, WithinAbs(1.0, 1e-9));

  const Scenario aom = scenario_from_json(load("aom_T.json"));
  REQUIRE_THAT(eval_T(aom, 1).value, WithinAbs(0.5, 1e-9));

  REQUIRE_THROWS_WITH(scenario_from_json(load("bad.json")), ContainsSubstring("unitarity"));

  const Scenario tq = scenario_from_json(load("tq_nom.json"));
  QVector q;
  q.q = {0.7, 0.3};
  REQUIRE_THAT(eval_Tq(tq, 1, q).value, WithinAbs(1.0, 1e-9));

  const BipartiteScenario bp = bipartite_from_json(load("bipartite_nom.json"));
  const PSReport r = eval_P0_P1_PS(bp);
  REQUIRE_THAT(r.p0, WithinAbs(0.75, 1e-9));
  REQUIRE_THAT(r.p1, WithinAbs(kTsirelson, 1e-9));
  REQUIRE_THAT(r.ps, WithinAbs(kTsirelson, 1e-9));
}

TEST_CASE("ps report serialization", "[serialize]") {
  const json j = ps_report_to_json(eval_P0_P1_PS(nom_violating_strategy()));
  REQUIRE_THAT(j["P0"].get<double>(), WithinAbs(0.75, 1e-9));
  REQUIRE(j["PS_violated"].get<bool>());
  REQUIRE_THAT(j["PS_bound"].get<double>(), WithinAbs(0.75, 0.0));
}
