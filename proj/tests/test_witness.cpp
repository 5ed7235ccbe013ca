#include <catch2/catch_amalgamated.hpp>

#include "wfs/generators.hpp"
#include "wfs/witness.hpp"

using namespace wfs;
using Catch::Matchers::WithinAbs;

namespace {

/// The reference two-outcome construction: |+> state, computational records,
/// record rotation sending (1,1)/sqrt2 onto the first record.
Scenario reference_T_scenario(Dynamics dyn) {
  Scenario s;
  s.d = 2;
  s.n = 1;
  const double r = 1.0 / std::sqrt(2.0);
  s.psi = CVec{r, r};
  s.measurements = {FriendMeasurement::computational(2)};
  CMat u(2, 2);
  u(0, 0) = r;
  u(0, 1) = r;
  u(1, 0) = -r;
  u(1, 1) = r;
  s.ops = {SuperObserverOp::identity(), SuperObserverOp::block_unitary({u})};
  s.dynamics = dyn;
  return s;
}

}  // namespace

TEST_CASE("T reaches 1 under NoM and 1/2 under AoM", "[witness]") {
  const WitnessReport nom = eval_T(reference_T_scenario(Dynamics::NoM), 1);
  REQUIRE_THAT(nom.value, WithinAbs(1.0, 1e-9));
  REQUIRE(nom.violated);
  REQUIRE_THAT(nom.bound, WithinAbs(0.5, 0.0));

  const WitnessReport aom = eval_T(reference_T_scenario(Dynamics::AoM), 1);
  REQUIRE_THAT(aom.value, WithinAbs(0.5, 1e-9));
  REQUIRE_FALSE(aom.violated);
}

TEST_CASE("Tq saturating construction hits max q", "[witness]") {
  QVector q;
  q.q = {0.7, 0.3};
  const Scenario s = saturating_aom_realization(2, q);
  const WitnessReport r = eval_Tq(s, 1, q);
  REQUIRE_THAT(r.value, WithinAbs(0.7, 1e-9));
  REQUIRE_FALSE(r.violated);

  // uniform q matches the two-outcome witness value
  const QVector u = QVector::uniform(2);
  const Scenario su = saturating_aom_realization(2, u);
  REQUIRE_THAT(eval_Tq(su, 1, u).value, WithinAbs(0.5, 1e-9));

  // argmax away from 0 exercises the record swap
  QVector qs;
  qs.q = {0.3, 0.7};
  const Scenario ss = saturating_aom_realization(2, qs);
  REQUIRE_THAT(eval_Tq(ss, 1, qs).value, WithinAbs(0.7, 1e-9));
}

TEST_CASE("Tq violating construction reaches 1 under NoM", "[witness]") {
  QVector q1;
  q1.q = {0.9, 0.1};
  REQUIRE_THAT(eval_Tq(violating_nom_realization(2, q1), 1, q1).value, WithinAbs(1.0, 1e-9));

  const QVector q2 = QVector::uniform(3);
  REQUIRE_THAT(eval_Tq(violating_nom_realization(3, q2), 1, q2).value, WithinAbs(1.0, 1e-9));

  QVector q3;
  q3.q = {0.2, 0.5, 0.25, 0.05};
  const WitnessReport r = eval_Tq(violating_nom_realization(4, q3), 1, q3);
  REQUIRE_THAT(r.value, WithinAbs(1.0, 1e-9));
  REQUIRE(r.violated);
  REQUIRE_THAT(r.bound, WithinAbs(0.5, 0.0));
}

TEST_CASE("T equals Tq at uniform q", "[witness]") {
  auto rng = make_stream(71);
  const QVector u = QVector::uniform(2);
  for (int rep = 0; rep < 50; ++rep) {
    const Dynamics dyn = rep % 2 ? Dynamics::AoM : Dynamics::NoM;
    const Scenario s = random_scenario(2, 1, 2, dyn, OpsKind::BlockUnitary, rng);
    REQUIRE_THAT(eval_T(s, 1).value, WithinAbs(eval_Tq(s, 1, u).value, 1e-12));
  }
}

TEST_CASE("AoM bounds hold over random strategies", "[witness]") {
  auto rng = make_stream(72);
  for (int rep = 0; rep < 400; ++rep) {
    const Scenario s = random_scenario(2, 1, 2, Dynamics::AoM, OpsKind::BlockUnitary, rng);
    const WitnessReport r = eval_T(s, 1);
    REQUIRE(r.value <= 0.5 + kEpsProb);
    REQUIRE_FALSE(r.violated);
    REQUIRE(check_rank1_bound(s, 1));
  }
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const Scenario s = random_scenario(d, 1, 2, Dynamics::AoM, OpsKind::BlockUnitary, rng);
    std::exponential_distribution<double> expo(1.0);
    QVector q;
    q.q.resize(d);
    double tot = 0.0;
    for (double& v : q.q) tot += (v = expo(rng));
    for (double& v : q.q) v /= tot;
    REQUIRE(eval_Tq(s, 1, q).value <= q.max() + kEpsProb);
    REQUIRE(check_rank1_bound(s, 1));
  }
}

TEST_CASE("AoM bounds survive unital channels", "[witness]") {
  auto rng = make_stream(73);
  for (int rep = 0; rep < 60; ++rep) {
    const Scenario s = random_scenario(2, 1, 2, Dynamics::AoM, OpsKind::MixtureChannel, rng);
    REQUIRE(eval_T(s, 1).value <= 0.5 + kEpsProb);
    REQUIRE(check_rank1_bound(s, 1));
  }
  for (int rep = 0; rep < 10; ++rep) {
    const Scenario s = random_scenario(2, 1, 2, Dynamics::AoM, OpsKind::SinkhornChannel, rng);
    REQUIRE(eval_T(s, 1).value <= 0.5 + 1e-8);  // Sinkhorn unitality tolerance
    REQUIRE(check_rank1_bound(s, 1, 1e-8));
  }
}

TEST_CASE("dephased-initial-state variant stays below max q", "[witness]") {
  auto rng = make_stream(74);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = 2 + rep % 3;
    std::exponential_distribution<double> expo(1.0);
    QVector q;
    q.q.resize(d);
    double tot = 0.0;
    for (double& v : q.q) tot += (v = expo(rng));
    for (double& v : q.q) v /= tot;
    const WitnessReport r = eval_Tq_aom_mixed(q, random_unitary(d, rng));
    REQUIRE(r.value <= q.max() + kEpsProb);
  }
  // the swap block saturates it exactly
  QVector q;
  q.q = {0.25, 0.6, 0.15};
  const Scenario s = saturating_aom_realization(3, q);
  REQUIRE_THAT(eval_Tq_aom_mixed(q, s.ops[1].blocks[0]).value, WithinAbs(0.6, 1e-12));
}

TEST_CASE("natural_q is the identity-op sector", "[witness]") {
  auto rng = make_stream(75);
  const Scenario s = random_scenario(3, 1, 1, Dynamics::AoM, OpsKind::BlockUnitary, rng);
  const QVector q = natural_q(s);
  const std::vector<cplx> alpha = outcome_amplitudes(s, 0);
  for (std::size_t i = 0; i < 3; ++i)
    REQUIRE_THAT(q.q[i], WithinAbs(std::norm(alpha[i]), 1e-12));
}

TEST_CASE("QVector validation", "[witness]") {
  QVector bad;
  bad.q = {0.5, 0.6};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  QVector neg;
  neg.q = {-0.1, 1.1};
  REQUIRE_THROWS_AS(neg.validate(), std::invalid_argument);
  QVector ok;
  ok.q = {0.25, 0.75};
  REQUIRE_NOTHROW(ok.validate());
  REQUIRE(ok.argmax() == 1);
  REQUIRE_THAT(ok.max(), WithinAbs(0.75, 0.0));
}

TEST_CASE("digest is stable and input-sensitive", "[witness]") {
  const Scenario a = reference_T_scenario(Dynamics::NoM);
  const Scenario b = reference_T_scenario(Dynamics::NoM);
  REQUIRE(scenario_digest(a) == scenario_digest(b));
  Scenario c = reference_T_scenario(Dynamics::AoM);
  REQUIRE(scenario_digest(a) != scenario_digest(c));
  REQUIRE(scenario_digest(a).size() == 16);
}
