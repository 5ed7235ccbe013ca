#include <catch2/catch_amalgamated.hpp>

#include "wfs/bipartite.hpp"
#include "wfs/oracle.hpp"

using namespace wfs;
using Catch::Matchers::WithinAbs;

TEST_CASE("reference strategy: exact tables without the rotation", "[bipartite]") {
  const JointTable t = joint_table(nom_violating_strategy());

  // (x,y) = (0,0): records and Bob's z outcomes perfectly correlated
  REQUIRE_THAT(t.p(0, 0, 0, 0, 0), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(t.p(1, 1, 0, 0, 0), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(t.p(0, 1, 0, 0, 0), WithinAbs(0.0, 1e-12));

  // mixed-basis settings are uncorrelated: every cell 1/4
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      REQUIRE_THAT(t.p(a, b, 0, 1, 0), WithinAbs(0.25, 1e-12));
      REQUIRE_THAT(t.p(a, b, 1, 0, 0), WithinAbs(0.25, 1e-12));
    }

  // (1,1): Bob's flipped x labels make the table anticorrelated in labels,
  // which is exactly what the x*y = 1 selector wants
  REQUIRE_THAT(t.p(0, 1, 1, 1, 0), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(t.p(1, 0, 1, 1, 0), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(t.p(0, 0, 1, 1, 0), WithinAbs(0.0, 1e-12));

  // with the rotation every setting pair succeeds at the Tsirelson value
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      double win = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) win += t.p(a, b, x, y, 1);
      REQUIRE_THAT(win, WithinAbs(kTsirelson, 1e-12));
    }
}

TEST_CASE("reference strategy: P0, P1, PS", "[bipartite]") {
  const PSReport r = eval_P0_P1_PS(nom_violating_strategy());
  REQUIRE_THAT(r.p0, WithinAbs(0.75, 1e-9));
  REQUIRE_THAT(r.p1, WithinAbs(std::pow(std::cos(M_PI / 8.0), 2), 1e-9));
  REQUIRE_THAT(r.ps, WithinAbs(kTsirelson, 1e-9));
  REQUIRE(r.ps_violated);
  REQUIRE(r.p1_violated);  // P1 > max{P0, 3/2 - P0} = 3/4 here
  REQUIRE(check_no_signalling(joint_table(nom_violating_strategy())));
}

TEST_CASE("same ingredients under AoM respect the caps", "[bipartite]") {
  BipartiteScenario bs = nom_violating_strategy();
  bs.dynamics = Dynamics::AoM;
  const PSReport r = eval_P0_P1_PS(bs);
  REQUIRE(r.ps <= 0.75 + kEpsProb);
  REQUIRE(r.p1 <= r.p1_bound + kEpsProb);
  REQUIRE_FALSE(r.ps_violated);
  REQUIRE_THAT(r.p0, WithinAbs(0.75, 1e-9));  // w = 0 table is dynamics-independent here
}

TEST_CASE("no-signalling holds across random strategies", "[bipartite]") {
  auto rng = make_stream(81);
  for (int rep = 0; rep < 60; ++rep) {
    const Dynamics dyn = rep % 2 ? Dynamics::AoM : Dynamics::NoM;
    const BipartiteScenario bs = rep % 3 == 0
                                     ? random_bipartite_channel_scenario(dyn, 3, rng)
                                     : random_bipartite_scenario(dyn, rng);
    const JointTable t = joint_table(bs);
    REQUIRE(check_no_signalling(t));
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t w = 0; w < 2; ++w) {
          double tot = 0.0;
          for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) tot += t.p(a, b, x, y, w);
          REQUIRE_THAT(tot, WithinAbs(1.0, 1e-10));
        }
  }
}

TEST_CASE("arbitrary-rank Bob projectors are accepted", "[bipartite]") {
  BipartiteScenario bs = nom_violating_strategy();
  // trivial binary measurement {1, 0}
  bs.bob[1].proj[0] = CMat::identity(2);
  bs.bob[1].proj[1] = CMat::zero(2, 2);
  bs.validate();
  const JointTable t = joint_table(bs);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t w = 0; w < 2; ++w) REQUIRE_THAT(t.p(a, 1, x, 1, w), WithinAbs(0.0, 1e-12));

  // qutrit Bob with a rank-2 projector
  auto rng = make_stream(82);
  BipartiteScenario q3;
  q3.d_b = 3;
  q3.dynamics = Dynamics::NoM;
  q3.psi_ab = random_state(6, rng);
  q3.alice[0] = FriendMeasurement::from_unitary(random_unitary(2, rng));
  q3.alice[1] = FriendMeasurement::from_unitary(random_unitary(2, rng));
  for (std::size_t y = 0; y < 2; ++y) {
    const CMat u = random_unitary(3, rng);
    q3.bob[y].proj[0] = projector(u.column(0)) + projector(u.column(1));
    q3.bob[y].proj[1] = projector(u.column(2));
  }
  q3.ops = {SuperObserverOp::identity(),
            SuperObserverOp::block_unitary({random_unitary(2, rng), random_unitary(2, rng)})};
  q3.validate();
  const JointTable tq = joint_table(q3);
  REQUIRE(check_no_signalling(tq));
  const JointTable to = oracle::bipartite_table(q3);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
          for (std::size_t w = 0; w < 2; ++w)
            REQUIRE_THAT(tq.p(a, b, x, y, w), WithinAbs(to.p(a, b, x, y, w), 1e-12));
}

TEST_CASE("channel wrapping of a block op leaves the table unchanged", "[bipartite]") {
  auto rng = make_stream(83);
  for (const Dynamics dyn : {Dynamics::AoM, Dynamics::NoM}) {
    BipartiteScenario bs = random_bipartite_scenario(dyn, rng);
    BipartiteScenario ch = bs;
    ch.ops[1] = SuperObserverOp::unital_channel(
        {assemble_operator(bs.alice_view(), bs.ops[1])});
    const JointTable a = joint_table(bs);
    const JointTable b = joint_table(ch);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t w = 0; w < 2; ++w)
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
              REQUIRE_THAT(a.p(i, j, x, y, w), WithinAbs(b.p(i, j, x, y, w), 1e-12));
  }
}

TEST_CASE("extremal decomposition certifies random AoM strategies", "[bipartite]") {
  auto rng = make_stream(84);
  for (int rep = 0; rep < 200; ++rep) {
    const BipartiteScenario bs = random_bipartite_scenario(Dynamics::AoM, rng);
    const ExtremalCheck c = check_chsh_extremal_decomposition(bs);
    REQUIRE(c.ok);
    REQUIRE(c.decomposition_residual <= 1e-10);
    for (double e : c.extremal) REQUIRE(e <= kTsirelson + kEpsProb);
    for (double g : c.relabeled_chsh) REQUIRE(g <= kTsirelson + kEpsProb);
    REQUIRE_THAT(c.extremal[3], WithinAbs(1.0 - c.extremal[0], 1e-10));
  }

  BipartiteScenario ref = nom_violating_strategy();
  ref.dynamics = Dynamics::AoM;
  const ExtremalCheck c = check_chsh_extremal_decomposition(ref);
  REQUIRE(c.ok);
  REQUIRE_THAT(c.extremal[0], WithinAbs(0.75, 1e-9));

  REQUIRE_THROWS_AS(check_chsh_extremal_decomposition(nom_violating_strategy()),
                    std::invalid_argument);
}

TEST_CASE("feasible region sweep structure", "[bipartite]") {
  REQUIRE_THROWS_AS(feasible_region_sweep(1, 0), std::invalid_argument);
  const std::vector<RegionPoint> pts = feasible_region_sweep(4, 5);

  bool corner = false, paper_point = false, classical_opt = false;
  for (const RegionPoint& p : pts) {
    if (p.mode == "classical") {
      REQUIRE(p.p0 <= 0.75 + 1e-12);
      REQUIRE(p.p1 <= 0.75 + 1e-12);
      if (std::abs(p.p0 - 0.75) < 1e-12 && std::abs(p.p1 - 0.75) < 1e-12) classical_opt = true;
    }
    if (p.mode == "aom")
      REQUIRE(p.p1 <= std::max(p.p0, 1.5 - p.p0) + kEpsProb);
    if (p.mode == "nom" && std::abs(p.p0 - 0.75) < 1e-7 &&
        std::abs(p.p1 - kTsirelson) < 1e-7)
      paper_point = true;
    if (p.mode == "boundary" && std::abs(p.p0 - kTsirelson) < 1e-12 &&
        std::abs(p.p1 - kTsirelson) < 1e-12)
      corner = true;
  }
  REQUIRE(corner);
  REQUIRE(paper_point);
  REQUIRE(classical_opt);
}

TEST_CASE("bipartite validation names failed invariants", "[bipartite]") {
  BipartiteScenario bs = nom_violating_strategy();
  bs.psi_ab = CVec{cplx(1, 0), cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  REQUIRE_THROWS_WITH(bs.validate(), Catch::Matchers::ContainsSubstring("normalization"));

  BipartiteScenario b2 = nom_violating_strategy();
  b2.bob[0].proj[0](0, 0) = 0.5;
  REQUIRE_THROWS_WITH(b2.validate(), Catch::Matchers::ContainsSubstring("projector"));

  BipartiteScenario b3 = nom_violating_strategy();
  b3.ops[0] = b3.ops[1];
  REQUIRE_THROWS_WITH(b3.validate(), Catch::Matchers::ContainsSubstring("identity"));
}
