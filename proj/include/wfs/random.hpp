#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "wfs/linalg.hpp"

// Seeded, splittable randomness. Every sampling site derives its own stream
// from (seed, stream_index) so sweeps are reproducible sample by sample and
// independent of evaluation order or thread count.

namespace wfs {

/// splitmix64 mix; also used to derive per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(mix_seed(seed, stream));
}

/// Haar-random pure state: normalized complex Gaussian vector, global phase
/// fixed so the first nonzero amplitude is real positive (dim 1 gives 1).
inline CVec random_state(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw std::invalid_argument("random_state: dim must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = gauss(rng), im = gauss(rng);
    v[i] = cplx(re, im);
  }
  v = normalized(v);
  for (std::size_t i = 0; i < dim; ++i) {
    const double a = std::abs(v[i]);
    if (a > 1e-12) {
      v = (std::conj(v[i]) / a) * v;
      v[i] = cplx(std::abs(v[i]), 0.0);  // exactly real, not just up to rounding
      return v;
    }
  }
  return v;
}

inline CVec random_state(std::size_t dim, std::uint64_t seed) {
  auto rng = make_stream(seed);
  return random_state(dim, rng);
}

/// Haar-random unitary: QR of a complex Gaussian matrix via two-pass modified
/// Gram-Schmidt. MGS normalization makes the R diagonal real positive, which
/// is exactly the phase fixing that yields the Haar measure.
inline CMat random_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dim must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CVec> cols;
  cols.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    CVec v(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      const double re = gauss(rng), im = gauss(rng);
      v[r] = cplx(re, im);
    }
    for (int pass = 0; pass < 2; ++pass)
      for (const CVec& b : cols) v = v - inner(b, v) * b;
    cols.push_back(normalized(v));
  }
  CMat u(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
  return u;
}

inline CMat random_unitary(std::size_t dim, std::uint64_t seed) {
  auto rng = make_stream(seed);
  return random_unitary(dim, rng);
}

/// Random unital channel as a convex mixture of 2..max_terms Haar unitaries:
/// K_i = sqrt(p_i) U_i, so both sum K^dag K and sum K K^dag equal identity.
inline std::vector<CMat> random_unital_channel(std::size_t dim, std::size_t max_terms,
                                               std::mt19937_64& rng) {
  if (max_terms < 2) throw std::invalid_argument("random_unital_channel: need >= 2 terms");
  std::uniform_int_distribution<std::size_t> nterms(2, max_terms);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  const std::size_t k = nterms(rng);
  std::vector<double> w(k);
  double tot = 0.0;
  for (double& x : w) {
    x = unif(rng);
    tot += x;
  }
  std::vector<CMat> kraus;
  kraus.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    kraus.push_back(cplx(std::sqrt(w[i] / tot), 0.0) * random_unitary(dim, rng));
  return kraus;
}

/// Random unital channel with general (non-mixture) Kraus operators: Ginibre
/// start, then operator-Sinkhorn iteration alternating K_i <- K_i (sum K^dag
/// K)^{-1/2} and K_i <- (sum K K^dag)^{-1/2} K_i until both unitality sums are
/// within tol of the identity. Rejects (resamples) on non-convergence.
inline std::vector<CMat> random_unital_channel_general(std::size_t dim, std::size_t terms,
                                                       std::mt19937_64& rng,
                                                       double tol = 1e-11) {
  if (terms < 2) throw std::invalid_argument("random_unital_channel_general: need >= 2 terms");
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<CMat> k(terms, CMat(dim, dim));
    for (CMat& m : k)
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = cplx(gauss(rng), gauss(rng));
    const CMat id = CMat::identity(dim);
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      CMat s = CMat::zero(dim, dim);
      for (const CMat& m : k) s = s + adjoint(m) * m;
      const CMat sl = hermitian_inverse_sqrt(s);
      for (CMat& m : k) m = m * sl;
      CMat t = CMat::zero(dim, dim);
      for (const CMat& m : k) t = t + m * adjoint(m);
      const CMat tl = hermitian_inverse_sqrt(t);
      for (CMat& m : k) m = tl * m;

      CMat s2 = CMat::zero(dim, dim), t2 = CMat::zero(dim, dim);
      for (const CMat& m : k) {
        s2 = s2 + adjoint(m) * m;
        t2 = t2 + m * adjoint(m);
      }
      if (max_abs_diff(s2, id) <= tol && max_abs_diff(t2, id) <= tol) {
        ok = true;
        break;
      }
    }
    if (ok) return k;
  }
  throw std::runtime_error("random_unital_channel_general: Sinkhorn iteration did not converge");
}

}  // namespace wfs
