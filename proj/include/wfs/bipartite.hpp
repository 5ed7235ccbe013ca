#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfs/linalg.hpp"
#include "wfs/random.hpp"
#include "wfs/scenario.hpp"

// Bipartite extension: Alice is a Friend measuring a qubit half of a shared
// state in one of two rank-one bases; a super-observer can rotate her lab
// records before reading them out; Bob measures his half directly with one
// of two binary projective measurements (any rank).
//
// Scored with CHSH-game coefficients c(a,b,x,y) = 1/4 iff a xor b = x and y,
// the observed tables give
//   P_w  = sum c(a,b,x,y) p(a,b|x,y,w)
//   P_S  = P_1 - |P_0 - 3/4|
// Under AoM, P_1 <= min{(1+1/sqrt2)/2, max{P_0, 3/2 - P_0}} and P_S <= 3/4.
// Unitary dynamics reaches P_S = (1+1/sqrt2)/2.

namespace wfs {

inline constexpr double kTsirelson = 0.85355339059327373;  // (1 + 1/sqrt2)/2

/// Binary projective measurement on Bob's side; projectors of any rank that
/// sum to the identity.
struct BobMeasurement {
  std::array<CMat, 2> proj;

  void validate(std::size_t d_b, double tol = kEpsUnitary) const {
    for (const CMat& p : proj) {
      if (p.rows() != d_b || p.cols() != d_b) throw std::invalid_argument("dimension mismatch");
      if (!is_projector(p, tol)) throw std::invalid_argument("projector check failed");
    }
    if (max_abs_diff(proj[0] + proj[1], CMat::identity(d_b)) > tol)
      throw std::invalid_argument("completeness check failed");
  }

  /// Rank-one pair from an orthonormal qubit-like basis.
  static BobMeasurement from_basis(const CVec& b0, const CVec& b1) {
    return BobMeasurement{{projector(b0), projector(b1)}};
  }
};

struct BipartiteScenario {
  static constexpr std::size_t d_a = 2;  // Alice's system is a qubit

  CVec psi_ab;  // dim 2 * d_b
  std::size_t d_b = 2;
  std::array<FriendMeasurement, 2> alice;
  std::array<BobMeasurement, 2> bob;
  std::vector<SuperObserverOp> ops;  // ops[0] identity; ops[1] acts on Alice's lab
  Dynamics dynamics = Dynamics::AoM;

  LabEncoding lab() const { return LabEncoding{2, 2, 0}; }
  std::size_t alice_dim() const { return d_a * lab().lab_dim(); }  // 10
  std::size_t full_dim() const { return alice_dim() * d_b; }

  void validate() const {
    if (d_b == 0) throw std::invalid_argument("dimension mismatch");
    if (psi_ab.dim() != d_a * d_b) throw std::invalid_argument("dimension mismatch");
    if (!is_normalized(psi_ab, kEpsNorm))
      throw std::invalid_argument("state normalization check failed");
    for (const FriendMeasurement& fm : alice) {
      if (fm.outcomes() != d_a) throw std::invalid_argument("dimension mismatch");
      fm.validate();
    }
    for (const BobMeasurement& bm : bob) bm.validate(d_b);
    if (ops.empty() || ops[0].kind != SuperObserverOp::Kind::Identity)
      throw std::invalid_argument("ops[0] must be identity");
    for (const SuperObserverOp& op : ops) {
      if (op.kind == SuperObserverOp::Kind::BlockUnitary) {
        if (op.blocks.size() != 2) throw std::invalid_argument("dimension mismatch");
        for (const CMat& b : op.blocks)
          if (b.rows() != 2 || b.cols() != 2) throw std::invalid_argument("dimension mismatch");
      } else if (op.kind == SuperObserverOp::Kind::UnitalChannel) {
        for (const CMat& k : op.kraus)
          if (k.rows() != alice_dim() || k.cols() != alice_dim())
            throw std::invalid_argument("dimension mismatch");
      }
    }
  }

  /// Alice's side viewed as a single-lab scenario (used for op assembly).
  Scenario alice_view() const {
    Scenario s;
    s.d = d_a;
    s.n = 2;
    s.psi = CVec::basis(d_a, 0);  // placeholder; never used for amplitudes
    s.measurements = {alice[0], alice[1]};
    s.ops = {SuperObserverOp::identity()};
    s.dynamics = dynamics;
    return s;
  }
};

/// p(a, b | x, y, w) for a,b,x,y,w all binary.
struct JointTable {
  double t[2][2][2][2][2] = {};  // [x][y][w][a][b]

  double& at(std::size_t a, std::size_t b, std::size_t x, std::size_t y, std::size_t w) {
    return t[x][y][w][a][b];
  }
  double p(std::size_t a, std::size_t b, std::size_t x, std::size_t y, std::size_t w) const {
    return t[x][y][w][a][b];
  }
  std::array<std::array<double, 2>, 2> slice(std::size_t x, std::size_t y,
                                             std::size_t w) const {
    return {{{t[x][y][w][0][0], t[x][y][w][0][1]}, {t[x][y][w][1][0], t[x][y][w][1][1]}}};
  }
};

inline double chsh_coeff(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
  return ((a ^ b) == (x & y)) ? 0.25 : 0.0;
}

namespace detail {

/// <mu_a| B |mu_a> contribution of one pure branch, where mu_a is Bob's
/// relative vector for Alice record a.
inline double branch_prob(const CVec& state, const CVec& f_a, const CMat& bob_proj,
                          std::size_t d_b) {
  const std::size_t ad = f_a.dim();
  CVec mu(d_b);
  for (std::size_t k = 0; k < d_b; ++k) {
    cplx s = 0.0;
    for (std::size_t ai = 0; ai < ad; ++ai) s += std::conj(f_a[ai]) * state[ai * d_b + k];
    mu[k] = s;
  }
  return std::real(inner(mu, bob_proj * mu));
}

/// Applies an Alice-space operator to a full-space pure state.
inline CVec apply_alice(const CMat& u, const CVec& state, std::size_t d_b) {
  const std::size_t ad = u.rows();
  CVec out(ad * d_b);
  for (std::size_t ai = 0; ai < ad; ++ai)
    for (std::size_t aj = 0; aj < ad; ++aj) {
      const cplx w = u(ai, aj);
      if (w == cplx(0.0)) continue;
      for (std::size_t k = 0; k < d_b; ++k) out[ai * d_b + k] += w * state[aj * d_b + k];
    }
  return out;
}

}  // namespace detail

/// Observed joint table. NoM keeps a pure state; AoM evolves the dephased
/// branch ensemble; channels fall back to a density matrix on the full space.
inline JointTable joint_table(const BipartiteScenario& bs) {
  bs.validate();
  if (bs.ops.size() != 2) throw std::invalid_argument("bipartite scenarios use ops = {1, U}");
  const std::size_t d_b = bs.d_b;
  const Scenario av = bs.alice_view();
  JointTable table;

  for (std::size_t x = 0; x < 2; ++x) {
    // Bob's relative states chi_i = (<psi^x_i| (x) 1) |psi_AB>.
    std::array<CVec, 2> chi = {CVec(d_b), CVec(d_b)};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < d_b; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < 2; ++j)
          s += std::conj(bs.alice[x].basis[i][j]) * bs.psi_ab[j * d_b + k];
        chi[i][k] = s;
      }
    std::array<CVec, 2> f;  // Alice record states, dim 10
    for (std::size_t i = 0; i < 2; ++i) f[i] = embed_F(av, x, i);

    // Pure branches: NoM has one coherent branch, AoM one branch per record.
    std::vector<std::pair<CVec, double>> branches;
    if (bs.dynamics == Dynamics::NoM) {
      CVec full(bs.full_dim());
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t ai = 0; ai < bs.alice_dim(); ++ai)
          for (std::size_t k = 0; k < d_b; ++k)
            full[ai * d_b + k] += f[i][ai] * chi[i][k];
      branches.emplace_back(full, 1.0);
    } else {
      for (std::size_t i = 0; i < 2; ++i) {
        const double w = std::real(inner(chi[i], chi[i]));
        if (w < 1e-300) continue;
        CVec full(bs.full_dim());
        const double inv = 1.0 / std::sqrt(w);
        for (std::size_t ai = 0; ai < bs.alice_dim(); ++ai)
          for (std::size_t k = 0; k < d_b; ++k)
            full[ai * d_b + k] = f[i][ai] * (inv * chi[i][k]);
        branches.emplace_back(full, w);
      }
    }

    for (std::size_t w = 0; w < 2; ++w) {
      const SuperObserverOp& op = bs.ops[w];
      if (op.kind == SuperObserverOp::Kind::UnitalChannel) {
        // Density-matrix route: rho = sum_br w |v><v|, then sum_K (K(x)1) rho (.)^dag.
        const std::size_t fd = bs.full_dim();
        CMat rho = CMat::zero(fd, fd);
        for (const auto& [v, wt] : branches)
          for (std::size_t r = 0; r < fd; ++r)
            for (std::size_t c = 0; c < fd; ++c) rho(r, c) += wt * v[r] * std::conj(v[c]);
        CMat evolved = CMat::zero(fd, fd);
        for (const CMat& k : op.kraus) {
          CMat kf(fd, fd);
          for (std::size_t ai = 0; ai < bs.alice_dim(); ++ai)
            for (std::size_t aj = 0; aj < bs.alice_dim(); ++aj) {
              const cplx kw = k(ai, aj);
              if (kw == cplx(0.0)) continue;
              for (std::size_t q = 0; q < d_b; ++q) kf(ai * d_b + q, aj * d_b + q) = kw;
            }
          evolved = evolved + kf * rho * adjoint(kf);
        }
        for (std::size_t y = 0; y < 2; ++y)
          for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
              // Tr((P_a (x) B_b) rho)
              double pr = 0.0;
              for (std::size_t k1 = 0; k1 < d_b; ++k1)
                for (std::size_t k2 = 0; k2 < d_b; ++k2) {
                  cplx m = 0.0;
                  for (std::size_t ai = 0; ai < bs.alice_dim(); ++ai)
                    for (std::size_t aj = 0; aj < bs.alice_dim(); ++aj)
                      m += std::conj(f[a][ai]) * evolved(ai * d_b + k1, aj * d_b + k2) *
                           f[a][aj];
                  pr += std::real(bs.bob[y].proj[b](k2, k1) * m);
                }
              table.at(a, b, x, y, w) = std::max(0.0, pr);
            }
        continue;
      }

      const CMat u = assemble_operator(av, op);
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) {
            double pr = 0.0;
            for (const auto& [v, wt] : branches) {
              const CVec ev = op.kind == SuperObserverOp::Kind::Identity
                                  ? v
                                  : detail::apply_alice(u, v, d_b);
              pr += wt * detail::branch_prob(ev, f[a], bs.bob[y].proj[b], d_b);
            }
            table.at(a, b, x, y, w) = pr;
          }
    }
  }
  return table;
}

/// No-signalling of the observed table: Alice's marginal ignores y; Bob's
/// marginal ignores both x and w.
inline bool check_no_signalling(const JointTable& t, double tol = kEpsProb) {
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t w = 0; w < 2; ++w)
      for (std::size_t a = 0; a < 2; ++a) {
        const double m0 = t.p(a, 0, x, 0, w) + t.p(a, 1, x, 0, w);
        const double m1 = t.p(a, 0, x, 1, w) + t.p(a, 1, x, 1, w);
        if (std::abs(m0 - m1) > tol) return false;
      }
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t b = 0; b < 2; ++b) {
      const double ref = t.p(0, b, 0, y, 0) + t.p(1, b, 0, y, 0);
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t w = 0; w < 2; ++w) {
          const double m = t.p(0, b, x, y, w) + t.p(1, b, x, y, w);
          if (std::abs(m - ref) > tol) return false;
        }
    }
  return true;
}

struct PSReport {
  double p0 = 0.0;
  double p1 = 0.0;
  double ps = 0.0;
  double p1_bound = 0.0;  // min{Tsirelson, max{P0, 3/2 - P0}}
  double ps_bound = 0.75;
  bool p1_violated = false;
  bool ps_violated = false;
};

inline PSReport eval_P0_P1_PS(const JointTable& t) {
  PSReport r;
  for (std::size_t w = 0; w < 2; ++w) {
    double v = 0.0;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) v += chsh_coeff(a, b, x, y) * t.p(a, b, x, y, w);
    (w == 0 ? r.p0 : r.p1) = v;
  }
  r.ps = r.p1 - std::abs(r.p0 - 0.75);
  r.p1_bound = std::min(kTsirelson, std::max(r.p0, 1.5 - r.p0));
  r.p1_violated = r.p1 > r.p1_bound + kEpsProb;
  r.ps_violated = r.ps > r.ps_bound + kEpsProb;
  return r;
}

inline PSReport eval_P0_P1_PS(const BipartiteScenario& bs) {
  return eval_P0_P1_PS(joint_table(bs));
}

/// The unitary-dynamics strategy that reaches P_S = (1+1/sqrt2)/2: maximally
/// entangled state, z/x settings on both sides (with Bob's x-outcomes
/// flipped so the w = 0 table sits at the classical optimum P_0 = 3/4), and
/// +-pi/8 record rotations.
inline BipartiteScenario nom_violating_strategy() {
  const double s2 = 1.0 / std::sqrt(2.0);
  BipartiteScenario bs;
  bs.d_b = 2;
  bs.dynamics = Dynamics::NoM;
  bs.psi_ab = CVec{s2, 0.0, 0.0, s2};

  bs.alice[0] = FriendMeasurement::computational(2);
  bs.alice[1].basis = {CVec{s2, s2}, CVec{s2, -s2}};

  bs.bob[0] = BobMeasurement::from_basis(CVec{1.0, 0.0}, CVec{0.0, 1.0});
  bs.bob[1] = BobMeasurement::from_basis(CVec{s2, -s2}, CVec{s2, s2});

  const double c = std::cos(M_PI / 8.0), s = std::sin(M_PI / 8.0);
  CMat u0(2, 2), u1(2, 2);
  u0(0, 0) = c;
  u0(0, 1) = -s;
  u0(1, 0) = s;
  u0(1, 1) = c;
  u1(0, 0) = c;
  u1(0, 1) = s;
  u1(1, 0) = -s;
  u1(1, 1) = c;
  bs.ops = {SuperObserverOp::identity(), SuperObserverOp::block_unitary({u0, u1})};
  bs.validate();
  return bs;
}

// ---------------------------------------------------------------------------
// extremal decomposition of AoM tables

/// Enumeration verdict for an AoM block-unitary strategy: the w = 1 score is
/// a convex combination of the four record-relabeling extremal points of the
/// w = 0 table, and every relabeled CHSH expression stays below both the
/// 3/2 - P_0 line and the Tsirelson value.
struct ExtremalCheck {
  double p0 = 0.0;
  double p1 = 0.0;
  std::array<double, 4> extremal = {};        // E[r0 * 2 + r1], per-setting record flips
  std::array<double, 4> relabeled_chsh = {};  // selectors xy, (x+1)(y+1), (x+1)y, x(y+1)
  double decomposition_residual = 0.0;        // identity p(a,b|U) vs alpha mix
  bool ok = false;
};

inline ExtremalCheck check_chsh_extremal_decomposition(const BipartiteScenario& bs,
                                                       double tol = kEpsProb) {
  if (bs.dynamics != Dynamics::AoM)
    throw std::invalid_argument("extremal decomposition applies to AoM scenarios");
  if (bs.ops.size() != 2 || bs.ops[1].kind != SuperObserverOp::Kind::BlockUnitary)
    throw std::invalid_argument("extremal decomposition expects a block-unitary op");

  const JointTable t = joint_table(bs);
  const PSReport ps = eval_P0_P1_PS(t);
  ExtremalCheck out;
  out.p0 = ps.p0;
  out.p1 = ps.p1;

  // Row and column normalization of the record-rotation amplitudes, and the
  // branch decomposition p(a,b|x,y,U) = sum_i |U^x(a,i)|^2 p(i,b|x,y,1).
  double residual = 0.0;
  bool norms_ok = true;
  for (std::size_t x = 0; x < 2; ++x) {
    const CMat& u = bs.ops[1].blocks[x];
    for (std::size_t a = 0; a < 2; ++a) {
      const double row = std::norm(u(a, 0)) + std::norm(u(a, 1));
      const double col = std::norm(u(0, a)) + std::norm(u(1, a));
      if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol) norms_ok = false;
    }
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const double mix = std::norm(u(a, a)) * t.p(a, b, x, y, 0) +
                             std::norm(u(a, a ^ 1)) * t.p(a ^ 1, b, x, y, 0);
          residual = std::max(residual, std::abs(mix - t.p(a, b, x, y, 1)));
        }
  }
  out.decomposition_residual = residual;

  for (std::size_t r0 = 0; r0 < 2; ++r0)
    for (std::size_t r1 = 0; r1 < 2; ++r1) {
      double v = 0.0;
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
          for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
              v += chsh_coeff(a, b, x, y) * t.p(a ^ (x == 0 ? r0 : r1), b, x, y, 0);
      out.extremal[r0 * 2 + r1] = v;
    }

  const auto game = [&](std::size_t g) {
    double v = 0.0;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) {
        std::size_t target = 0;
        switch (g) {
          case 0: target = x & y; break;
          case 1: target = (x ^ 1) & (y ^ 1); break;
          case 2: target = (x ^ 1) & y; break;
          default: target = x & (y ^ 1); break;
        }
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            if ((a ^ b) == target) v += 0.25 * t.p(a, b, x, y, 0);
      }
    return v;
  };
  for (std::size_t g = 0; g < 4; ++g) out.relabeled_chsh[g] = game(g);

  double emax = 0.0;
  for (double e : out.extremal) emax = std::max(emax, e);
  const double cap = std::max(out.p0, 1.5 - out.p0);

  out.ok = norms_ok && residual <= tol && out.p1 <= emax + tol &&
           std::abs(out.extremal[3] - (1.0 - out.extremal[0])) <= tol &&
           out.extremal[1] <= cap + tol && out.extremal[2] <= cap + tol;
  for (double e : out.extremal) out.ok = out.ok && e <= kTsirelson + tol;
  for (double g : out.relabeled_chsh) out.ok = out.ok && g <= kTsirelson + tol;
  return out;
}

// ---------------------------------------------------------------------------
// feasible region sampling

struct RegionPoint {
  double p0 = 0.0;
  double p1 = 0.0;
  std::string mode;  // "classical" | "aom" | "nom" | "boundary"
  std::uint64_t seed = 0;
};

/// Random AoM/NoM strategy: Haar two-qubit state, Haar rank-one bases on both
/// sides, Haar record rotations.
inline BipartiteScenario random_bipartite_scenario(Dynamics dyn, std::mt19937_64& rng) {
  BipartiteScenario bs;
  bs.d_b = 2;
  bs.dynamics = dyn;
  bs.psi_ab = random_state(4, rng);
  bs.alice[0] = FriendMeasurement::from_unitary(random_unitary(2, rng));
  bs.alice[1] = FriendMeasurement::from_unitary(random_unitary(2, rng));
  for (std::size_t y = 0; y < 2; ++y) {
    const CMat u = random_unitary(2, rng);
    bs.bob[y] = BobMeasurement::from_basis(u.column(0), u.column(1));
  }
  bs.ops = {SuperObserverOp::identity(),
            SuperObserverOp::block_unitary({random_unitary(2, rng), random_unitary(2, rng)})};
  return bs;
}

/// Same ingredients with a sector-preserving unital channel (a mixture of
/// block unitaries) in place of the single record rotation.
inline BipartiteScenario random_bipartite_channel_scenario(Dynamics dyn, std::size_t max_terms,
                                                           std::mt19937_64& rng) {
  BipartiteScenario bs = random_bipartite_scenario(dyn, rng);
  const Scenario av = bs.alice_view();
  std::uniform_int_distribution<std::size_t> nterms(2, max_terms);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  const std::size_t k = nterms(rng);
  std::vector<double> w(k);
  double tot = 0.0;
  for (double& v : w) {
    v = unif(rng);
    tot += v;
  }
  std::vector<CMat> kraus;
  for (std::size_t i = 0; i < k; ++i) {
    const SuperObserverOp block = SuperObserverOp::block_unitary(
        {random_unitary(2, rng), random_unitary(2, rng)});
    kraus.push_back(cplx(std::sqrt(w[i] / tot), 0.0) * assemble_operator(av, block));
  }
  bs.ops[1] = SuperObserverOp::unital_channel(std::move(kraus));
  return bs;
}

namespace detail {

/// (P0, P1) of a deterministic classical strategy: Alice answers resp_a(x),
/// Bob resp_b(y), and for w = 1 Alice's answer is flipped per setting by the
/// record relabeling bits allowed under AoM.
inline std::pair<double, double> classical_point(std::size_t resp_a, std::size_t resp_b,
                                                 std::size_t flips) {
  double p[2] = {0.0, 0.0};
  for (std::size_t w = 0; w < 2; ++w)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) {
        const std::size_t a = ((resp_a >> x) & 1) ^ (w == 1 ? ((flips >> x) & 1) : 0);
        const std::size_t b = (resp_b >> y) & 1;
        p[w] += chsh_coeff(a, b, x, y);
      }
  return {p[0], p[1]};
}

}  // namespace detail

/// Point cloud of the (P0, P1) plane: exact classical vertices plus shared-
/// randomness mixtures, random AoM and NoM strategies (the analytic NoM
/// optimum injected as the first sample), and the analytic boundary curves
/// P1 = P0, P1 = 3/2 - P0, P1 = (1+1/sqrt2)/2.
inline std::vector<RegionPoint> feasible_region_sweep(std::size_t resolution,
                                                      std::uint64_t seed) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const std::size_t samples = resolution * resolution;
  std::vector<RegionPoint> out;
  out.reserve(4 * samples + 64);

  // Classical vertices: 16 deterministic response pairs, 4 record flips.
  std::vector<std::pair<double, double>> vertices;
  std::size_t idx = 0;
  for (std::size_t resp_a = 0; resp_a < 4; ++resp_a)
    for (std::size_t resp_b = 0; resp_b < 4; ++resp_b)
      for (std::size_t flips = 0; flips < 4; ++flips) {
        const auto [p0, p1] = detail::classical_point(resp_a, resp_b, flips);
        vertices.emplace_back(p0, p1);
        out.push_back(RegionPoint{p0, p1, "classical", idx++});
      }
  // Shared randomness: convex mixtures of the vertices.
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = make_stream(seed, 0x10000 + i);
    std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double w0 = unif(rng);
    const auto& v1 = vertices[pick(rng)];
    const auto& v2 = vertices[pick(rng)];
    out.push_back(RegionPoint{w0 * v1.first + (1 - w0) * v2.first,
                              w0 * v1.second + (1 - w0) * v2.second, "classical",
                              mix_seed(seed, 0x10000 + i)});
  }

  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t s = mix_seed(seed, 0x20000 + i);
    auto rng = make_stream(s);
    const PSReport r = eval_P0_P1_PS(random_bipartite_scenario(Dynamics::AoM, rng));
    out.push_back(RegionPoint{r.p0, r.p1, "aom", s});
  }

  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t s = mix_seed(seed, 0x30000 + i);
    PSReport r;
    if (i == 0) {
      r = eval_P0_P1_PS(nom_violating_strategy());
    } else {
      auto rng = make_stream(s);
      r = eval_P0_P1_PS(random_bipartite_scenario(Dynamics::NoM, rng));
    }
    out.push_back(RegionPoint{r.p0, r.p1, "nom", s});
  }

  const double lo = 1.0 - kTsirelson, hi = kTsirelson;
  const std::size_t bpts = samples;
  for (std::size_t i = 0; i < bpts; ++i) {
    const double p0 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bpts - 1);
    out.push_back(RegionPoint{p0, p0, "boundary", 0});
    out.push_back(RegionPoint{p0, 1.5 - p0, "boundary", 0});
    out.push_back(RegionPoint{p0, kTsirelson, "boundary", 0});
  }
  return out;
}

}  // namespace wfs
