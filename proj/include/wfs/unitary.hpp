#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wfs/linalg.hpp"

// Angle parametrization of special unitaries, used by the optimizer.
//
// decode_unitary maps dim^2 - 1 real angles onto SU(dim) as a product of
// complex Givens rotations (one rotation angle and one phase per index pair,
// pairs in lexicographic order) followed by a det-1 diagonal phase layer.
// All-zero angles decode to the identity.

namespace wfs {

struct UnitaryParams {
  std::size_t dim = 0;
  std::vector<double> angles;

  static std::size_t param_count(std::size_t dim) { return dim * dim - 1; }

  static UnitaryParams identity(std::size_t dim) {
    UnitaryParams p;
    p.dim = dim;
    p.angles.assign(param_count(dim), 0.0);
    return p;
  }
};

/// Two-level rotation on (i, j): diag block [[c, -s e^{i phi}], [s e^{-i phi}, c]].
inline CMat givens_factor(std::size_t dim, std::size_t i, std::size_t j, double theta,
                          double phi) {
  CMat g = CMat::identity(dim);
  const double c = std::cos(theta), s = std::sin(theta);
  g(i, i) = c;
  g(i, j) = -s * cplx(std::cos(phi), std::sin(phi));
  g(j, i) = s * cplx(std::cos(phi), -std::sin(phi));
  g(j, j) = c;
  return g;
}

inline CMat decode_unitary(const UnitaryParams& p) {
  const std::size_t d = p.dim;
  if (d == 0) throw std::invalid_argument("decode_unitary: dim must be positive");
  if (p.angles.size() != UnitaryParams::param_count(d))
    throw std::invalid_argument("decode_unitary: parameter count mismatch");

  CMat u = CMat::identity(d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      u = u * givens_factor(d, i, j, p.angles[k], p.angles[k + 1]);
      k += 2;
    }
  // Diagonal phase layer with unit determinant.
  CMat dm = CMat::identity(d);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const double lam = p.angles[k + i];
    dm(i, i) = cplx(std::cos(lam), std::sin(lam));
    total += lam;
  }
  dm(d - 1, d - 1) = cplx(std::cos(total), -std::sin(total));
  return u * dm;
}

}  // namespace wfs
