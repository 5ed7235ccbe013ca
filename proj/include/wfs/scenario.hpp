#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wfs/linalg.hpp"

// Extended Wigner's Friend scenario on a single lab.
//
// A Friend measures the system Q_s (dimension d) in one of n rank-one bases
// A_x = {|psi^x_i>}. The lab pointer space has dimension d*n + 1 (+ optional
// padding): one pointer state |f^x_i> per (setting, outcome) pair at index
// x*d + i, plus a junk block. The record states are |F^x_i> = |psi^x_i> (x)
// |f^x_i>, orthonormal across settings because the pointer factor differs.
//
// The super-observer then acts with a reversible operation (identity, a
// block unitary preserving each setting's record span, or a unital channel
// on the whole combined space) and measures Omega = {{|F^x_i><F^x_i|}, rest}.
//
// The two rival dynamics differ in the state assigned after the Friend's
// measurement:
//   AoM (absolute outcomes):  rho = sum_i |alpha_i|^2 |F^x_i><F^x_i|
//   NoM (unitary dynamics):   |Phi> = sum_i alpha_i |F^x_i>
// with alpha_i = <psi^x_i|psi>.

namespace wfs {

enum class Dynamics { AoM, NoM };

inline std::string to_string(Dynamics d) { return d == Dynamics::AoM ? "AoM" : "NoM"; }

/// Index bookkeeping for the lab pointer space.
struct LabEncoding {
  std::size_t d = 0;      // outcomes per setting
  std::size_t n = 0;      // settings
  std::size_t extra = 0;  // optional junk padding beyond the canonical 1

  std::size_t lab_dim() const { return d * n + 1 + extra; }
  std::size_t junk_index() const { return d * n; }
  std::size_t f_index(std::size_t x, std::size_t i) const {
    if (x >= n || i >= d) throw std::invalid_argument("lab index out of range");
    return x * d + i;
  }
};

/// Rank-one projective measurement of Q_s: an orthonormal basis, one outcome
/// per basis vector.
struct FriendMeasurement {
  std::vector<CVec> basis;

  std::size_t outcomes() const { return basis.size(); }

  void validate(double tol = kEpsUnitary) const {
    const std::size_t d = basis.size();
    if (d == 0) throw std::invalid_argument("measurement must have at least one outcome");
    for (std::size_t i = 0; i < d; ++i) {
      if (basis[i].dim() != d) throw std::invalid_argument("measurement dimension mismatch");
      for (std::size_t j = 0; j < d; ++j) {
        const cplx g = inner(basis[i], basis[j]);
        const cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
        if (std::abs(g - want) > tol)
          throw std::invalid_argument("measurement orthonormality check failed");
      }
    }
  }

  /// Measurement in the canonical basis.
  static FriendMeasurement computational(std::size_t d) {
    FriendMeasurement m;
    for (std::size_t i = 0; i < d; ++i) m.basis.push_back(CVec::basis(d, i));
    return m;
  }

  /// Basis given by the columns of a unitary.
  static FriendMeasurement from_unitary(const CMat& u) {
    if (!is_unitary(u)) throw std::invalid_argument("unitarity check failed");
    FriendMeasurement m;
    for (std::size_t c = 0; c < u.cols(); ++c) m.basis.push_back(u.column(c));
    return m;
  }
};

/// Operation applied by the super-observer between the Friend's measurement
/// and the final Omega measurement.
struct SuperObserverOp {
  enum class Kind { Identity, BlockUnitary, UnitalChannel };

  Kind kind = Kind::Identity;
  std::vector<CMat> blocks;  // BlockUnitary: one d x d unitary per setting
  std::vector<CMat> kraus;   // UnitalChannel: Kraus set on the combined space

  static SuperObserverOp identity() { return SuperObserverOp{}; }

  static SuperObserverOp block_unitary(std::vector<CMat> blocks) {
    if (blocks.empty()) throw std::invalid_argument("block unitary needs at least one block");
    for (const CMat& b : blocks)
      if (!is_unitary(b)) throw std::invalid_argument("unitarity check failed");
    SuperObserverOp op;
    op.kind = Kind::BlockUnitary;
    op.blocks = std::move(blocks);
    return op;
  }

  static SuperObserverOp unital_channel(std::vector<CMat> kraus) {
    if (kraus.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
    const std::size_t dim = kraus[0].rows();
    CMat s = CMat::zero(dim, dim), t = CMat::zero(dim, dim);
    for (const CMat& k : kraus) {
      if (k.rows() != dim || k.cols() != dim)
        throw std::invalid_argument("Kraus dimension mismatch");
      s = s + adjoint(k) * k;
      t = t + k * adjoint(k);
    }
    const CMat id = CMat::identity(dim);
    if (max_abs_diff(s, id) > kEpsUnitary || max_abs_diff(t, id) > kEpsUnitary)
      throw std::invalid_argument("unitality check failed");
    SuperObserverOp op;
    op.kind = Kind::UnitalChannel;
    op.kraus = std::move(kraus);
    return op;
  }
};

/// State of Q_s (x) Lab after the Friend's measurement.
struct CombinedState {
  enum class Kind { Pure, Mixed };

  Kind kind = Kind::Pure;
  CVec vec;   // Pure
  CMat rho;   // Mixed
  std::size_t sys_dim = 0;
  LabEncoding lab;
  bool ancilla_encoded = false;  // a definite outcome has been recorded

  std::size_t dim() const { return sys_dim * lab.lab_dim(); }

  CMat density() const { return kind == Kind::Pure ? outer(vec, vec) : rho; }

  void validate(double tol = kEpsProb) const {
    if (kind == Kind::Pure) {
      if (vec.dim() != dim()) throw std::invalid_argument("dimension mismatch");
      if (!is_normalized(vec, kEpsNorm))
        throw std::invalid_argument("state normalization check failed");
    } else {
      if (rho.rows() != dim() || rho.cols() != dim())
        throw std::invalid_argument("dimension mismatch");
      if (!is_hermitian(rho, 1e-8)) throw std::invalid_argument("hermiticity check failed");
      if (std::abs(std::real(trace(rho)) - 1.0) > tol || std::abs(std::imag(trace(rho))) > tol)
        throw std::invalid_argument("trace check failed");
      if (min_eigenvalue(rho) < -tol)
        throw std::invalid_argument("positivity check failed");
    }
  }
};

/// Probabilities of the super-observer's Omega outcomes: one outcome per
/// (setting, result) record plus the residual "no record" outcome.
struct OutcomeDistribution {
  std::size_t d = 0, n = 0;
  std::vector<double> p;  // size d*n + 1; index x*d + i, residual last

  double prob(std::size_t x, std::size_t i) const { return p.at(x * d + i); }
  double prob_empty() const { return p.back(); }

  std::vector<double> sector(std::size_t x) const {
    if (x >= n) throw std::invalid_argument("sector out of range");
    std::vector<double> s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = p[x * d + i];
    return s;
  }

  std::string label(std::size_t k) const {
    if (k + 1 == p.size()) return "empty";
    return "(x=" + std::to_string(k / d) + ",a=" + std::to_string(k % d) + ")";
  }
};

/// Full description of a single-lab run: system state, Friend measurement
/// settings, super-observer operations (ops[0] is always the identity), and
/// which dynamics generates the post-measurement state.
struct Scenario {
  std::size_t d = 0;
  std::size_t n = 0;
  CVec psi;
  std::vector<FriendMeasurement> measurements;
  std::vector<SuperObserverOp> ops;
  Dynamics dynamics = Dynamics::AoM;
  std::size_t extra_junk = 0;

  std::size_t m() const { return ops.size(); }
  LabEncoding lab() const { return LabEncoding{d, n, extra_junk}; }
  std::size_t combined_dim() const { return d * lab().lab_dim(); }

  void validate() const {
    if (d == 0 || n == 0) throw std::invalid_argument("dimension mismatch");
    if (psi.dim() != d) throw std::invalid_argument("dimension mismatch");
    if (!is_normalized(psi, kEpsNorm))
      throw std::invalid_argument("state normalization check failed");
    if (measurements.size() != n) throw std::invalid_argument("dimension mismatch");
    for (const FriendMeasurement& fm : measurements) {
      if (fm.outcomes() != d) throw std::invalid_argument("dimension mismatch");
      fm.validate();
    }
    if (ops.empty() || ops[0].kind != SuperObserverOp::Kind::Identity)
      throw std::invalid_argument("ops[0] must be identity");
    for (const SuperObserverOp& op : ops) {
      if (op.kind == SuperObserverOp::Kind::BlockUnitary) {
        if (op.blocks.size() != n) throw std::invalid_argument("dimension mismatch");
        for (const CMat& b : op.blocks)
          if (b.rows() != d || b.cols() != d) throw std::invalid_argument("dimension mismatch");
      } else if (op.kind == SuperObserverOp::Kind::UnitalChannel) {
        for (const CMat& k : op.kraus)
          if (k.rows() != combined_dim() || k.cols() != combined_dim())
            throw std::invalid_argument("dimension mismatch");
      }
    }
  }
};

// ---------------------------------------------------------------------------
// operations

/// Record state |F^x_i> = |psi^x_i> (x) |f^x_i> on the combined space.
inline CVec embed_F(const Scenario& s, std::size_t x, std::size_t i) {
  const LabEncoding enc = s.lab();
  return tensor(s.measurements.at(x).basis.at(i), CVec::basis(enc.lab_dim(), enc.f_index(x, i)));
}

/// Outcome amplitudes alpha_i = <psi^x_i|psi>.
inline std::vector<cplx> outcome_amplitudes(const Scenario& s, std::size_t x) {
  std::vector<cplx> alpha(s.d);
  for (std::size_t i = 0; i < s.d; ++i) alpha[i] = inner(s.measurements.at(x).basis[i], s.psi);
  return alpha;
}

/// State of Q_s (x) Lab after the Friend measures setting x.
inline CombinedState post_measurement_state(const CVec& psi, std::size_t x, const Scenario& s) {
  if (psi.dim() != s.d) throw std::invalid_argument("dimension mismatch");
  if (!is_normalized(psi, kEpsNorm))
    throw std::invalid_argument("state normalization check failed");
  Scenario tmp = s;  // amplitudes against the supplied psi
  tmp.psi = psi;
  const std::vector<cplx> alpha = outcome_amplitudes(tmp, x);

  CombinedState out;
  out.sys_dim = s.d;
  out.lab = s.lab();
  out.ancilla_encoded = true;
  const std::size_t dim = out.dim();

  if (s.dynamics == Dynamics::NoM) {
    out.kind = CombinedState::Kind::Pure;
    CVec v(dim);
    for (std::size_t i = 0; i < s.d; ++i) {
      const CVec f = embed_F(tmp, x, i);
      for (std::size_t k = 0; k < dim; ++k) v[k] += alpha[i] * f[k];
    }
    out.vec = v;
  } else {
    out.kind = CombinedState::Kind::Mixed;
    CMat r = CMat::zero(dim, dim);
    for (std::size_t i = 0; i < s.d; ++i) {
      const double w = std::norm(alpha[i]);
      if (w == 0.0) continue;
      const CVec f = embed_F(tmp, x, i);
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) r(a, b) += w * f[a] * std::conj(f[b]);
    }
    out.rho = r;
  }
  return out;
}

/// Combined-space matrix of an identity or block-unitary op: the direct sum
/// of the per-setting blocks over the record spans, identity elsewhere.
inline CMat assemble_operator(const Scenario& s, const SuperObserverOp& op) {
  const std::size_t dim = s.combined_dim();
  CMat u = CMat::identity(dim);
  if (op.kind == SuperObserverOp::Kind::Identity) return u;
  if (op.kind != SuperObserverOp::Kind::BlockUnitary)
    throw std::invalid_argument("assemble_operator expects identity or block unitary");
  for (std::size_t x = 0; x < s.n; ++x) {
    std::vector<CVec> f(s.d);
    for (std::size_t i = 0; i < s.d; ++i) f[i] = embed_F(s, x, i);
    const CMat& b = op.blocks.at(x);
    for (std::size_t i = 0; i < s.d; ++i)
      for (std::size_t j = 0; j < s.d; ++j) {
        const cplx w = b(i, j) - (i == j ? cplx(1.0) : cplx(0.0));
        if (w == cplx(0.0)) continue;
        for (std::size_t a = 0; a < dim; ++a) {
          if (f[i][a] == cplx(0.0)) continue;
          for (std::size_t c = 0; c < dim; ++c) u(a, c) += w * f[i][a] * std::conj(f[j][c]);
        }
      }
  }
  return u;
}

/// Applies a super-observer operation. Pure states stay on the pure path;
/// channels promote to a density matrix.
inline CombinedState apply_op(const CombinedState& st, const SuperObserverOp& op,
                              const Scenario& s) {
  CombinedState out = st;
  switch (op.kind) {
    case SuperObserverOp::Kind::Identity:
      return out;
    case SuperObserverOp::Kind::BlockUnitary: {
      const CMat u = assemble_operator(s, op);
      if (st.kind == CombinedState::Kind::Pure) {
        out.vec = u * st.vec;
      } else {
        out.rho = u * st.rho * adjoint(u);
      }
      return out;
    }
    case SuperObserverOp::Kind::UnitalChannel: {
      const CMat r = st.density();
      const std::size_t dim = r.rows();
      CMat acc = CMat::zero(dim, dim);
      for (const CMat& k : op.kraus) acc = acc + k * r * adjoint(k);
      out.kind = CombinedState::Kind::Mixed;
      out.vec = CVec();
      out.rho = acc;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

/// Omega measurement: p(x, i) = <F^x_i| rho |F^x_i>, residual in the last slot.
inline OutcomeDistribution measure_omega(const CombinedState& st, const Scenario& s) {
  OutcomeDistribution dist;
  dist.d = s.d;
  dist.n = s.n;
  dist.p.assign(s.d * s.n + 1, 0.0);
  double total = 0.0;
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t i = 0; i < s.d; ++i) {
      const CVec f = embed_F(s, x, i);
      double pr = 0.0;
      if (st.kind == CombinedState::Kind::Pure) {
        pr = std::norm(inner(f, st.vec));
      } else {
        pr = std::real(inner(f, st.rho * f));
      }
      if (pr < 0.0) {
        if (pr < -kEpsProb) throw std::logic_error("probability check failed");
        pr = 0.0;
      }
      dist.p[x * s.d + i] = pr;
      total += pr;
    }
  }
  double rest = 1.0 - total;
  if (rest < 0.0) {
    if (rest < -kEpsProb) throw std::logic_error("probability check failed");
    rest = 0.0;
  }
  dist.p.back() = rest;
  return dist;
}

/// One full run: Friend measures setting x, super-observer applies ops[w]
/// and measures Omega.
inline OutcomeDistribution run_trial(const Scenario& s, std::size_t x, std::size_t w) {
  if (x >= s.n) throw std::invalid_argument("setting index out of range");
  if (w >= s.m()) throw std::invalid_argument("operation index out of range");
  const CombinedState post = post_measurement_state(s.psi, x, s);
  const CombinedState evolved = apply_op(post, s.ops[w], s);
  return measure_omega(evolved, s);
}

/// p(a | A_x, ops[w]) over a: the x-sector of the trial distribution.
inline std::vector<double> trial_sector(const Scenario& s, std::size_t x, std::size_t w) {
  return run_trial(s, x, w).sector(x);
}

/// True iff ops[w] maps each setting's record span into itself, so the
/// Friend never observes a record/outcome discrepancy. Identity and block
/// unitaries pass by construction; a channel passes iff every Kraus operator
/// preserves every record span.
inline bool friend_consistency_check(const Scenario& s, std::size_t w) {
  const SuperObserverOp& op = s.ops.at(w);
  if (op.kind == SuperObserverOp::Kind::Identity) return true;

  std::vector<CMat> mats;
  if (op.kind == SuperObserverOp::Kind::BlockUnitary) {
    mats.push_back(assemble_operator(s, op));
  } else {
    mats = op.kraus;
  }
  for (std::size_t x = 0; x < s.n; ++x) {
    std::vector<CVec> f(s.d);
    for (std::size_t i = 0; i < s.d; ++i) f[i] = embed_F(s, x, i);
    for (const CMat& m : mats) {
      for (std::size_t i = 0; i < s.d; ++i) {
        CVec u = m * f[i];
        for (std::size_t j = 0; j < s.d; ++j) u = u - inner(f[j], u) * f[j];
        if (norm(u) > kEpsUnitary) return false;
      }
    }
  }
  return true;
}

/// Block unitaries that make the NoM dynamics reproduce a given AoM
/// scenario's observed table for operation w. For each setting x, with
/// alpha the outcome amplitudes and U^x the AoM block,
///   beta_a = sum_i |alpha_i * U^x(a, i)|^2
/// is the AoM outcome row; the returned block maps the NoM post-measurement
/// coordinate vector alpha onto sum_a sqrt(beta_a) e_a.
inline SuperObserverOp matching_nom_unitary(const Scenario& s, std::size_t w) {
  if (s.dynamics != Dynamics::AoM)
    throw std::invalid_argument("matching_nom_unitary expects an AoM scenario");
  const SuperObserverOp& op = s.ops.at(w);
  if (op.kind == SuperObserverOp::Kind::Identity) return SuperObserverOp::identity();
  if (op.kind != SuperObserverOp::Kind::BlockUnitary)
    throw std::invalid_argument("matching_nom_unitary expects block-unitary ops");

  std::vector<CMat> out;
  out.reserve(s.n);
  for (std::size_t x = 0; x < s.n; ++x) {
    const std::vector<cplx> alpha = outcome_amplitudes(s, x);
    const CMat& b = op.blocks[x];
    CVec from(s.d), to(s.d);
    for (std::size_t i = 0; i < s.d; ++i) from[i] = alpha[i];
    for (std::size_t a = 0; a < s.d; ++a) {
      double beta = 0.0;
      for (std::size_t i = 0; i < s.d; ++i) beta += std::norm(alpha[i] * b(a, i));
      to[a] = std::sqrt(beta);
    }
    out.push_back(unitary_mapping(from, to));
  }
  return SuperObserverOp::block_unitary(std::move(out));
}

/// The NoM scenario whose observed tables match the given AoM scenario for
/// every operation index.
inline Scenario matching_nom_scenario(const Scenario& s) {
  Scenario nom = s;
  nom.dynamics = Dynamics::NoM;
  for (std::size_t w = 1; w < s.m(); ++w) nom.ops[w] = matching_nom_unitary(s, w);
  return nom;
}

}  // namespace wfs
