#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wfs/bipartite.hpp"
#include "wfs/scenario.hpp"

// Brute-force reference implementation. Everything here works on raw
// std::vector<cplx> density matrices with its own index arithmetic and does
// not call the optimized evolution or probability routines; tests compare
// the two routes to 1e-12.

namespace wfs::oracle {

namespace detail {

using Raw = std::vector<cplx>;  // row-major square matrix or plain vector

inline Raw outer_raw(const Raw& v) {
  const std::size_t d = v.size();
  Raw m(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = v[r] * std::conj(v[c]);
  return m;
}

inline Raw conjugate_raw(const Raw& k, const Raw& rho, std::size_t d) {
  Raw tmp(d * d), out(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      cplx s = 0.0;
      for (std::size_t q = 0; q < d; ++q) s += k[r * d + q] * rho[q * d + c];
      tmp[r * d + c] = s;
    }
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      cplx s = 0.0;
      for (std::size_t q = 0; q < d; ++q) s += tmp[r * d + q] * std::conj(k[c * d + q]);
      out[r * d + c] = s;
    }
  return out;
}

/// <v| rho |v>
inline double expval_raw(const Raw& rho, const Raw& v) {
  const std::size_t d = v.size();
  cplx s = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) s += std::conj(v[r]) * rho[r * d + c] * v[c];
  return std::real(s);
}

/// Record state |F^x_i> = |psi^x_i> (x) |f(x,i)> as a raw vector.
inline Raw record_state(const Scenario& s, std::size_t x, std::size_t i) {
  const std::size_t ld = s.lab().lab_dim();
  Raw f(s.d * ld, cplx(0.0));
  const std::size_t slot = x * s.d + i;
  for (std::size_t j = 0; j < s.d; ++j) f[j * ld + slot] = s.measurements[x].basis[i][j];
  return f;
}

/// Kills coherences between the measured records (and anything outside
/// them): rho -> sum_i P_i rho P_i with P_i = |F^x_i><F^x_i|.
inline Raw dephase_records(const Scenario& s, std::size_t x, const Raw& rho) {
  const std::size_t cd = s.combined_dim();
  Raw out(cd * cd, cplx(0.0));
  for (std::size_t i = 0; i < s.d; ++i) {
    const Raw f = record_state(s, x, i);
    cplx w = 0.0;
    for (std::size_t r = 0; r < cd; ++r)
      for (std::size_t c = 0; c < cd; ++c) w += std::conj(f[r]) * rho[r * cd + c] * f[c];
    for (std::size_t r = 0; r < cd; ++r)
      for (std::size_t c = 0; c < cd; ++c) out[r * cd + c] += w * f[r] * std::conj(f[c]);
  }
  return out;
}

/// Full-space matrix of a super-observer op, built from scratch.
inline std::vector<Raw> op_matrices(const Scenario& s, const SuperObserverOp& op) {
  const std::size_t cd = s.combined_dim();
  if (op.kind == SuperObserverOp::Kind::UnitalChannel) {
    std::vector<Raw> out;
    for (const CMat& k : op.kraus) {
      Raw m(cd * cd);
      for (std::size_t r = 0; r < cd; ++r)
        for (std::size_t c = 0; c < cd; ++c) m[r * cd + c] = k(r, c);
      out.push_back(std::move(m));
    }
    return out;
  }
  Raw u(cd * cd, cplx(0.0));
  for (std::size_t r = 0; r < cd; ++r) u[r * cd + r] = 1.0;
  if (op.kind == SuperObserverOp::Kind::BlockUnitary) {
    for (std::size_t x = 0; x < s.n; ++x) {
      std::vector<Raw> f(s.d);
      for (std::size_t i = 0; i < s.d; ++i) f[i] = record_state(s, x, i);
      for (std::size_t i = 0; i < s.d; ++i)
        for (std::size_t j = 0; j < s.d; ++j) {
          const cplx w = op.blocks[x](i, j) - (i == j ? cplx(1.0) : cplx(0.0));
          if (w == cplx(0.0)) continue;
          for (std::size_t r = 0; r < cd; ++r)
            for (std::size_t c = 0; c < cd; ++c)
              u[r * cd + c] += w * f[i][r] * std::conj(f[j][c]);
        }
    }
  }
  return {std::move(u)};
}

}  // namespace detail

/// Outcome distribution of one (x, w) trial via the density-matrix route.
inline OutcomeDistribution trial(const Scenario& s, std::size_t x, std::size_t w) {
  s.validate();
  if (x >= s.n || w >= s.m()) throw std::invalid_argument("index out of range");
  const std::size_t cd = s.combined_dim();

  // Post-measurement density matrix: pure superposition for NoM, its
  // record-dephased version for AoM.
  detail::Raw phi(cd, cplx(0.0));
  for (std::size_t i = 0; i < s.d; ++i) {
    cplx a = 0.0;
    for (std::size_t j = 0; j < s.d; ++j)
      a += std::conj(s.measurements[x].basis[i][j]) * s.psi[j];
    const detail::Raw f = detail::record_state(s, x, i);
    for (std::size_t r = 0; r < cd; ++r) phi[r] += a * f[r];
  }
  detail::Raw rho = detail::outer_raw(phi);
  if (s.dynamics == Dynamics::AoM) rho = detail::dephase_records(s, x, rho);

  const std::vector<detail::Raw> ks = detail::op_matrices(s, s.ops[w]);
  detail::Raw evolved(cd * cd, cplx(0.0));
  for (const detail::Raw& k : ks) {
    const detail::Raw term = detail::conjugate_raw(k, rho, cd);
    for (std::size_t q = 0; q < cd * cd; ++q) evolved[q] += term[q];
  }

  OutcomeDistribution dist;
  dist.d = s.d;
  dist.n = s.n;
  dist.p.assign(s.d * s.n + 1, 0.0);
  double total = 0.0;
  for (std::size_t xp = 0; xp < s.n; ++xp)
    for (std::size_t i = 0; i < s.d; ++i) {
      const double pr = detail::expval_raw(evolved, detail::record_state(s, xp, i));
      dist.p[xp * s.d + i] = pr;
      total += pr;
    }
  dist.p.back() = std::max(0.0, 1.0 - total);
  return dist;
}

/// Joint table of a bipartite scenario via a full 10 d_B density matrix.
inline JointTable bipartite_table(const BipartiteScenario& bs) {
  bs.validate();
  const std::size_t d_b = bs.d_b;
  const std::size_t ad = bs.alice_dim();
  const std::size_t fd = ad * d_b;
  const std::size_t ld = bs.lab().lab_dim();
  JointTable table;

  for (std::size_t x = 0; x < 2; ++x) {
    // Record states on Alice's combined space.
    std::array<detail::Raw, 2> f;
    for (std::size_t i = 0; i < 2; ++i) {
      f[i].assign(ad, cplx(0.0));
      const std::size_t slot = x * 2 + i;
      for (std::size_t j = 0; j < 2; ++j)
        f[i][j * ld + slot] = bs.alice[x].basis[i][j];
    }
    // Joint pure state sum_i |F_i> (x) |chi_i>.
    detail::Raw phi(fd, cplx(0.0));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < d_b; ++k) {
        cplx chi = 0.0;
        for (std::size_t j = 0; j < 2; ++j)
          chi += std::conj(bs.alice[x].basis[i][j]) * bs.psi_ab[j * d_b + k];
        for (std::size_t ai = 0; ai < ad; ++ai) phi[ai * d_b + k] += f[i][ai] * chi;
      }
    detail::Raw rho = detail::outer_raw(phi);
    if (bs.dynamics == Dynamics::AoM) {
      // Dephase with P_i (x) 1.
      detail::Raw out(fd * fd, cplx(0.0));
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k1 = 0; k1 < d_b; ++k1)
          for (std::size_t k2 = 0; k2 < d_b; ++k2) {
            // block <F_i, k1| rho |F_i, k2> spread back onto F_i.
            cplx w = 0.0;
            for (std::size_t r = 0; r < ad; ++r)
              for (std::size_t c = 0; c < ad; ++c)
                w += std::conj(f[i][r]) * rho[(r * d_b + k1) * fd + c * d_b + k2] * f[i][c];
            for (std::size_t r = 0; r < ad; ++r)
              for (std::size_t c = 0; c < ad; ++c)
                out[(r * d_b + k1) * fd + c * d_b + k2] += w * f[i][r] * std::conj(f[i][c]);
          }
      rho = std::move(out);
    }

    for (std::size_t w = 0; w < 2; ++w) {
      // Alice-space matrices of the op, lifted to the full space.
      std::vector<detail::Raw> alice_ks;
      const SuperObserverOp& op = bs.ops[w];
      if (op.kind == SuperObserverOp::Kind::Identity) {
        detail::Raw id(ad * ad, cplx(0.0));
        for (std::size_t r = 0; r < ad; ++r) id[r * ad + r] = 1.0;
        alice_ks.push_back(std::move(id));
      } else if (op.kind == SuperObserverOp::Kind::BlockUnitary) {
        detail::Raw u(ad * ad, cplx(0.0));
        for (std::size_t r = 0; r < ad; ++r) u[r * ad + r] = 1.0;
        for (std::size_t xp = 0; xp < 2; ++xp) {
          std::array<detail::Raw, 2> g;
          for (std::size_t i = 0; i < 2; ++i) {
            g[i].assign(ad, cplx(0.0));
            for (std::size_t j = 0; j < 2; ++j)
              g[i][j * ld + xp * 2 + i] = bs.alice[xp].basis[i][j];
          }
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
              const cplx wt = op.blocks[xp](i, j) - (i == j ? cplx(1.0) : cplx(0.0));
              if (wt == cplx(0.0)) continue;
              for (std::size_t r = 0; r < ad; ++r)
                for (std::size_t c = 0; c < ad; ++c)
                  u[r * ad + c] += wt * g[i][r] * std::conj(g[j][c]);
            }
        }
        alice_ks.push_back(std::move(u));
      } else {
        for (const CMat& k : op.kraus) {
          detail::Raw m(ad * ad);
          for (std::size_t r = 0; r < ad; ++r)
            for (std::size_t c = 0; c < ad; ++c) m[r * ad + c] = k(r, c);
          alice_ks.push_back(std::move(m));
        }
      }

      detail::Raw evolved(fd * fd, cplx(0.0));
      for (const detail::Raw& k : alice_ks) {
        detail::Raw kf(fd * fd, cplx(0.0));
        for (std::size_t r = 0; r < ad; ++r)
          for (std::size_t c = 0; c < ad; ++c) {
            const cplx wv = k[r * ad + c];
            if (wv == cplx(0.0)) continue;
            for (std::size_t q = 0; q < d_b; ++q)
              kf[(r * d_b + q) * fd + c * d_b + q] = wv;
          }
        const detail::Raw term = detail::conjugate_raw(kf, rho, fd);
        for (std::size_t q = 0; q < fd * fd; ++q) evolved[q] += term[q];
      }

      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) {
            // Tr((P_a (x) B_b) rho) = sum F_a[r] conj(F_a[c]) B(k1,k2) rho[(c,k2),(r,k1)]
            cplx pr = 0.0;
            for (std::size_t r = 0; r < ad; ++r)
              for (std::size_t c = 0; c < ad; ++c) {
                const cplx fa = f[a][r] * std::conj(f[a][c]);
                if (fa == cplx(0.0)) continue;
                for (std::size_t k1 = 0; k1 < d_b; ++k1)
                  for (std::size_t k2 = 0; k2 < d_b; ++k2)
                    pr += fa * bs.bob[y].proj[b](k1, k2) *
                          evolved[(c * d_b + k2) * fd + r * d_b + k1];
              }
            table.at(a, b, x, y, w) = std::max(0.0, std::real(pr));
          }
    }
  }
  return table;
}

}  // namespace wfs::oracle
