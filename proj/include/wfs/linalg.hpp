#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal dense complex linear algebra for small Hilbert spaces (dim <= ~32).
//
// Conventions, fixed once for the whole library:
//  - matrices are stored row-major;
//  - tensor products follow index(i, j) = i * dim(b) + j, i.e. the left factor
//    is the slow index (standard Kronecker product layout);
//  - inner(a, b) is conjugate-linear in the first argument.

namespace wfs {

using cplx = std::complex<double>;

// Tolerances shared across the library.
inline constexpr double kEpsUnitary = 1e-9;  // entrywise operator checks
inline constexpr double kEpsNorm = 1e-9;     // state normalization
inline constexpr double kEpsProb = 1e-9;     // probability assertions

/// Dense complex vector.
class CVec {
 public:
  CVec() = default;
  explicit CVec(std::size_t dim) : a_(dim) {}
  CVec(std::initializer_list<cplx> init) : a_(init) {}

  /// Canonical basis vector e_k.
  static CVec basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw std::invalid_argument("basis index out of range");
    CVec v(dim);
    v.a_[k] = 1.0;
    return v;
  }

  std::size_t dim() const { return a_.size(); }
  cplx& operator[](std::size_t i) { return a_[i]; }
  const cplx& operator[](std::size_t i) const { return a_[i]; }
  const std::vector<cplx>& amplitudes() const { return a_; }

 private:
  std::vector<cplx> a_;
};

/// Dense complex matrix, row-major.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMat zero(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  CVec column(std::size_t c) const {
    CVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> e_;
};

// ---------------------------------------------------------------------------
// vector arithmetic

inline CVec operator+(const CVec& a, const CVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dim mismatch");
  CVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CVec operator-(const CVec& a, const CVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dim mismatch");
  CVec r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CVec operator*(const cplx& s, const CVec& v) {
  CVec r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

/// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const CVec& a, const CVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dim mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const CVec& v) { return std::sqrt(std::real(inner(v, v))); }

inline CVec normalized(const CVec& v) {
  const double n = norm(v);
  if (n < 1e-300) throw std::invalid_argument("cannot normalize zero vector");
  CVec r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) r[i] = v[i] / n;
  return r;
}

inline bool is_normalized(const CVec& v, double tol = kEpsNorm) {
  return std::abs(norm(v) - 1.0) <= tol;
}

// ---------------------------------------------------------------------------
// matrix arithmetic

inline CMat operator+(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix dim mismatch");
  CMat r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline CMat operator-(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix dim mismatch");
  CMat r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline CMat operator*(const cplx& s, const CMat& m) {
  CMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
  return r;
}

inline CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dim mismatch");
  CMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline CVec operator*(const CMat& m, const CVec& v) {
  if (m.cols() != v.dim()) throw std::invalid_argument("matrix/vector dim mismatch");
  CVec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline CMat adjoint(const CMat& m) {
  CMat r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

inline cplx trace(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace of non-square matrix");
  cplx s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

inline cplx det(const CMat& m) {
  // Gaussian elimination with partial pivoting; fine at these dims.
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  CMat a = m;
  const std::size_t n = a.rows();
  cplx d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) < 1e-300) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// tensor products and projectors

/// Kronecker product; index(i, j) = i * b.dim() + j.
inline CVec tensor(const CVec& a, const CVec& b) {
  CVec r(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) r[i * b.dim() + j] = a[i] * b[j];
  return r;
}

inline CMat tensor(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      if (f == cplx(0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return r;
}

/// |a><b|
inline CMat outer(const CVec& a, const CVec& b) {
  CMat r(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) r(i, j) = a[i] * std::conj(b[j]);
  return r;
}

/// Rank-one projector |v><v|; v must be normalized.
inline CMat projector(const CVec& v) {
  if (!is_normalized(v)) throw std::invalid_argument("normalization check failed");
  return outer(v, v);
}

// ---------------------------------------------------------------------------
// structural checks

inline double max_abs(const CMat& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

inline double max_abs_diff(const CMat& a, const CMat& b) { return max_abs(a - b); }

inline double max_abs_diff(const CVec& a, const CVec& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

/// Entrywise |U^dag U - 1| <= tol.
inline bool is_unitary(const CMat& u, double tol = kEpsUnitary) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(adjoint(u) * u, CMat::identity(u.rows())) <= tol;
}

inline bool is_hermitian(const CMat& m, double tol = kEpsUnitary) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, adjoint(m)) <= tol;
}

/// Hermitian and idempotent within tol.
inline bool is_projector(const CMat& p, double tol = kEpsUnitary) {
  if (!is_hermitian(p, tol)) return false;
  return max_abs_diff(p * p, p) <= tol;
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem (cyclic Jacobi)

struct Eigh {
  std::vector<double> values;  // ascending
  CMat vectors;                // columns are eigenvectors, A V = V diag(values)
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
inline Eigh eigh(const CMat& a_in) {
  if (!is_hermitian(a_in, 1e-7))
    throw std::invalid_argument("hermiticity check failed");
  const std::size_t n = a_in.rows();
  CMat a = a_in;
  CMat v = CMat::identity(n);
  const double scale = std::max(1.0, max_abs(a));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-14 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double ag = std::abs(g);
        if (ag <= 1e-300) continue;
        const cplx phase = g / ag;
        const double alpha = std::real(a(p, p));
        const double beta = std::real(a(q, q));
        const double tau = (beta - alpha) / (2.0 * ag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx se = s * phase;  // J(p,q) = s*e^{i arg g}

        // A <- J^dag A J with J = I except J(p,p)=c, J(p,q)=se, J(q,p)=-conj(se), J(q,q)=c
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - std::conj(se) * akq;
          a(k, q) = se * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = alpha - t * ag;
        a(q, q) = beta + t * ag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(se) * vkq;
          v(k, q) = se * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::real(a(x, x)) < std::real(a(y, y)); });

  Eigh out;
  out.values.resize(n);
  out.vectors = CMat(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = std::real(a(order[c], order[c]));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const CMat& a) { return eigh(a).values; }

inline double min_eigenvalue(const CMat& a) { return hermitian_eigenvalues(a).front(); }
inline double max_eigenvalue(const CMat& a) { return hermitian_eigenvalues(a).back(); }

inline bool is_psd(const CMat& a, double tol = kEpsProb) {
  return is_hermitian(a, 1e-7) && min_eigenvalue(a) >= -tol;
}

/// A^{-1/2} for Hermitian positive definite A.
inline CMat hermitian_inverse_sqrt(const CMat& a) {
  const Eigh e = eigh(a);
  const std::size_t n = a.rows();
  CMat d = CMat::zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.values[i] <= 1e-12)
      throw std::invalid_argument("positive definiteness check failed");
    d(i, i) = 1.0 / std::sqrt(e.values[i]);
  }
  return e.vectors * d * adjoint(e.vectors);
}

// ---------------------------------------------------------------------------
// orthonormal completion

/// Completes the given orthonormal columns to a full unitary, deterministically:
/// canonical basis vectors are appended in order and orthonormalized with
/// two-pass modified Gram-Schmidt, skipping near-dependent candidates.
inline CMat complete_unitary(const std::vector<CVec>& cols) {
  if (cols.empty()) throw std::invalid_argument("complete_unitary needs at least one column");
  const std::size_t d = cols[0].dim();
  if (cols.size() > d) throw std::invalid_argument("too many columns");
  std::vector<CVec> basis;
  basis.reserve(d);
  for (const CVec& c : cols) {
    if (c.dim() != d) throw std::invalid_argument("vector dim mismatch");
    if (!is_normalized(c, 1e-8)) throw std::invalid_argument("normalization check failed");
    basis.push_back(c);
  }
  for (std::size_t k = 0; k < d && basis.size() < d; ++k) {
    CVec cand = CVec::basis(d, k);
    for (int pass = 0; pass < 2; ++pass)
      for (const CVec& b : basis) cand = cand - inner(b, cand) * b;
    if (norm(cand) > 1e-7) basis.push_back(normalized(cand));
  }
  if (basis.size() != d) throw std::logic_error("orthonormal completion failed");
  CMat u(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) u(r, c) = basis[c][r];
  return u;
}

/// Deterministic unitary V with V|from> = |to>; both inputs normalized.
inline CMat unitary_mapping(const CVec& from, const CVec& to) {
  const CMat uf = complete_unitary({from});
  const CMat ut = complete_unitary({to});
  return ut * adjoint(uf);
}

}  // namespace wfs
