#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfs/scenario.hpp"

// Operational witnesses separating the two dynamics. Everything in this
// header consumes observed outcome tables only (through run_trial); no
// state-level quantities enter a witness value.
//
// For a two-outcome Friend measurement (outcome +1 at index 0):
//   T = p(+1|U) - |p(+1|1) - 1/2| - |p(-1|1) - 1/2|    <= 1/2 under AoM
// and for d outcomes with a reference distribution q:
//   T(q) = p(0|U) - sum_i |p(i|1) - q_i|               <= max_i q_i under AoM.
// Unitary dynamics (NoM) reaches 1 for both.

namespace wfs {

/// Reference distribution for the d-outcome witness.
struct QVector {
  std::vector<double> q;

  void validate(double tol = kEpsProb) const {
    if (q.empty()) throw std::invalid_argument("q must be non-empty");
    double total = 0.0;
    for (double v : q) {
      if (v < 0.0 || v >= 1.0) throw std::invalid_argument("q entries must lie in [0, 1)");
      total += v;
    }
    if (std::abs(total - 1.0) > tol) throw std::invalid_argument("q must sum to 1");
  }

  static QVector uniform(std::size_t d) {
    QVector out;
    out.q.assign(d, 1.0 / static_cast<double>(d));
    return out;
  }

  std::size_t argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < q.size(); ++i)
      if (q[i] > q[best]) best = i;
    return best;
  }

  double max() const { return q[argmax()]; }
};

struct WitnessReport {
  std::string witness;
  double value = 0.0;
  double bound = 0.0;
  bool violated = false;
  std::string digest;          // hash of the scenario it was computed from
  std::uint64_t seed = 0;      // 0 when not applicable
  double tolerance = kEpsProb;
};

namespace detail {

inline void fnv_number(std::uint64_t& h, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  for (const char* c = buf; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 1099511628211ULL;
  }
}

inline void fnv_tag(std::uint64_t& h, char tag) {
  h ^= static_cast<unsigned char>(tag);
  h *= 1099511628211ULL;
}

}  // namespace detail

/// FNV-1a over a canonical flat rendering of the scenario. Stable across
/// runs and platforms with IEEE doubles.
inline std::string scenario_digest(const Scenario& s) {
  std::uint64_t h = 1469598103934665603ULL;
  detail::fnv_number(h, static_cast<double>(s.d));
  detail::fnv_number(h, static_cast<double>(s.n));
  detail::fnv_number(h, static_cast<double>(s.extra_junk));
  detail::fnv_tag(h, s.dynamics == Dynamics::AoM ? 'A' : 'N');
  for (std::size_t i = 0; i < s.psi.dim(); ++i) {
    detail::fnv_number(h, std::real(s.psi[i]));
    detail::fnv_number(h, std::imag(s.psi[i]));
  }
  for (const FriendMeasurement& fm : s.measurements)
    for (const CVec& b : fm.basis)
      for (std::size_t i = 0; i < b.dim(); ++i) {
        detail::fnv_number(h, std::real(b[i]));
        detail::fnv_number(h, std::imag(b[i]));
      }
  for (const SuperObserverOp& op : s.ops) {
    detail::fnv_tag(h, op.kind == SuperObserverOp::Kind::Identity     ? 'I'
                       : op.kind == SuperObserverOp::Kind::BlockUnitary ? 'B'
                                                                        : 'K');
    const std::vector<CMat>& mats =
        op.kind == SuperObserverOp::Kind::UnitalChannel ? op.kraus : op.blocks;
    for (const CMat& m : mats)
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
          detail::fnv_number(h, std::real(m(r, c)));
          detail::fnv_number(h, std::imag(m(r, c)));
        }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

/// q as the super-observer would assign it without intervening: p(.|A_x, 1).
inline QVector natural_q(const Scenario& s, std::size_t x = 0) {
  QVector out;
  out.q = trial_sector(s, x, 0);
  return out;
}

/// Two-outcome witness T; requires d = 2, n = 1.
inline WitnessReport eval_T(const Scenario& s, std::size_t u_index) {
  if (s.d != 2 || s.n != 1) throw std::invalid_argument("eval_T requires d = 2, n = 1");
  if (u_index >= s.m()) throw std::invalid_argument("operation index out of range");
  const std::vector<double> with_op = trial_sector(s, 0, u_index);
  const std::vector<double> plain = trial_sector(s, 0, 0);
  WitnessReport r;
  r.witness = "T";
  r.value = with_op[0] - std::abs(plain[0] - 0.5) - std::abs(plain[1] - 0.5);
  r.bound = 0.5;
  r.violated = r.value > r.bound + kEpsProb;
  r.digest = scenario_digest(s);
  return r;
}

/// d-outcome witness T(q); requires n = 1, q of size d.
inline WitnessReport eval_Tq(const Scenario& s, std::size_t u_index, const QVector& q) {
  if (s.n != 1) throw std::invalid_argument("eval_Tq requires n = 1");
  if (q.q.size() != s.d) throw std::invalid_argument("dimension mismatch");
  if (u_index >= s.m()) throw std::invalid_argument("operation index out of range");
  q.validate();
  const std::vector<double> with_op = trial_sector(s, 0, u_index);
  const std::vector<double> plain = trial_sector(s, 0, 0);
  WitnessReport r;
  r.witness = "Tq";
  double penalty = 0.0;
  for (std::size_t i = 0; i < s.d; ++i) penalty += std::abs(plain[i] - q.q[i]);
  r.value = with_op[0] - penalty;
  r.bound = q.max();
  r.violated = r.value > r.bound + kEpsProb;
  r.digest = scenario_digest(s);
  return r;
}

/// max_a p(a|A_x, ops[w]) <= max_i p(i|A_x, 1) + tol; holds for every AoM
/// scenario whose operation is unital (block unitaries included).
inline bool check_rank1_bound(const Scenario& s, std::size_t u_index, double tol = kEpsProb) {
  const std::vector<double> with_op = trial_sector(s, 0, u_index);
  const std::vector<double> plain = trial_sector(s, 0, 0);
  double lhs = 0.0, rhs = 0.0;
  for (double v : with_op) lhs = std::max(lhs, v);
  for (double v : plain) rhs = std::max(rhs, v);
  return lhs <= rhs + tol;
}

/// AoM scenario saturating the T(q) bound: psi = sum_i sqrt(q_i)|psi_i> and a
/// block rotation sending the most likely record onto record 0.
inline Scenario saturating_aom_realization(std::size_t d, const QVector& q,
                                           const FriendMeasurement& basis) {
  q.validate();
  if (q.q.size() != d || basis.outcomes() != d)
    throw std::invalid_argument("dimension mismatch");
  Scenario s;
  s.d = d;
  s.n = 1;
  s.dynamics = Dynamics::AoM;
  s.measurements = {basis};
  CVec psi(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) psi[k] += std::sqrt(q.q[i]) * basis.basis[i][k];
  s.psi = normalized(psi);
  const std::size_t im = q.argmax();
  CMat block = CMat::identity(d);
  if (im != 0) {
    block(0, 0) = 0.0;
    block(im, im) = 0.0;
    block(0, im) = -1.0;
    block(im, 0) = 1.0;  // det-1 swap of records 0 and im
  }
  s.ops = {SuperObserverOp::identity(), SuperObserverOp::block_unitary({block})};
  s.validate();
  return s;
}

inline Scenario saturating_aom_realization(std::size_t d, const QVector& q) {
  return saturating_aom_realization(d, q, FriendMeasurement::computational(d));
}

/// NoM scenario reaching T(q) = 1: same state, with the block unitary that
/// maps the coherent record superposition sum_i sqrt(q_i)|F_i> onto |F_0>.
inline Scenario violating_nom_realization(std::size_t d, const QVector& q,
                                          const FriendMeasurement& basis) {
  q.validate();
  if (q.q.size() != d || basis.outcomes() != d)
    throw std::invalid_argument("dimension mismatch");
  Scenario s;
  s.d = d;
  s.n = 1;
  s.dynamics = Dynamics::NoM;
  s.measurements = {basis};
  CVec psi(d);
  CVec from(d);
  for (std::size_t i = 0; i < d; ++i) {
    from[i] = std::sqrt(q.q[i]);
    for (std::size_t k = 0; k < d; ++k) psi[k] += std::sqrt(q.q[i]) * basis.basis[i][k];
  }
  s.psi = normalized(psi);
  s.ops = {SuperObserverOp::identity(),
           SuperObserverOp::block_unitary({unitary_mapping(normalized(from), CVec::basis(d, 0))})};
  s.validate();
  return s;
}

inline Scenario violating_nom_realization(std::size_t d, const QVector& q) {
  return violating_nom_realization(d, q, FriendMeasurement::computational(d));
}

/// T(q) for the dephased-initial-state AoM variant (initial state
/// sum_i q_i |psi_i><psi_i|). The observed table has p(i|1) = q_i and
/// p(a|U) = sum_i q_i |U(a, i)|^2, so the witness is evaluated directly at
/// table level; scenario inputs proper stay pure states.
inline WitnessReport eval_Tq_aom_mixed(const QVector& q, const CMat& block) {
  q.validate();
  const std::size_t d = q.q.size();
  if (block.rows() != d || block.cols() != d) throw std::invalid_argument("dimension mismatch");
  if (!is_unitary(block)) throw std::invalid_argument("unitarity check failed");
  WitnessReport r;
  r.witness = "Tq";
  double p0 = 0.0;
  for (std::size_t i = 0; i < d; ++i) p0 += q.q[i] * std::norm(block(0, i));
  r.value = p0;  // penalty term vanishes: p(i|1) = q_i exactly
  r.bound = q.max();
  r.violated = r.value > r.bound + kEpsProb;
  return r;
}

}  // namespace wfs
