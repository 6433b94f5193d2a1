#pragma once

// Dense complex vectors/matrices for the small fixed dimensions used by the
// cloning workbench (2, 4, 8, 32), plus Kronecker products, partial traces
// and closed-form 2x2 Hermitian spectral tools.
//
// Conventions fixed once for the whole project:
//   * composite systems are ordered with the LEFT tensor factor slowest,
//     i.e. index(i,j) = i*dim(b) + j for tensor(a, b);
//   * subsystems are numbered from 0 in that order;
//   * usage errors throw std::invalid_argument, violated PSD/Hermiticity
//     domain requirements throw std::domain_error.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qclone {

using cplx = std::complex<double>;

inline constexpr double kHermTol = 1e-12;  // Hermiticity / PSD slack
inline constexpr double kPsdTol = 1e-12;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : v_(dim) {}
  CVector(std::initializer_list<cplx> init) : v_(init) {}

  static CVector basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw std::invalid_argument("CVector::basis: index out of range");
    CVector e(dim);
    e.v_[k] = 1.0;
    return e;
  }

  std::size_t dim() const { return v_.size(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }

  double norm_sq() const {
    double s = 0.0;
    for (const cplx& z : v_) s += std::norm(z);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  CVector& operator+=(const CVector& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  CVector& operator-=(const CVector& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  CVector& operator*=(cplx c) {
    for (cplx& z : v_) z *= c;
    return *this;
  }

 private:
  void check_same_dim(const CVector& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("CVector: dimension mismatch");
  }
  std::vector<cplx> v_;
};

inline CVector operator+(CVector a, const CVector& b) { return a += b; }
inline CVector operator-(CVector a, const CVector& b) { return a -= b; }
inline CVector operator*(cplx c, CVector v) { return v *= c; }
inline CVector operator*(double c, CVector v) { return v *= cplx(c); }

// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries)
      : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != rows * cols)
      throw std::invalid_argument("CMatrix: entry count does not match shape");
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMatrix zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  cplx trace() const {
    if (!square()) throw std::invalid_argument("trace: matrix not square");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  CMatrix adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  double herm_deviation() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }
  bool is_hermitian(double tol = kHermTol) const { return herm_deviation() <= tol; }

  CMatrix& operator+=(const CMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMatrix& operator*=(cplx c) {
    for (cplx& z : a_) z *= c;
    return *this;
  }

 private:
  void check_same_shape(const CMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw std::invalid_argument("CMatrix: shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

inline CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
inline CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
inline CMatrix operator*(cplx c, CMatrix m) { return m *= c; }
inline CMatrix operator*(double c, CMatrix m) { return m *= cplx(c); }

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  CMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline CVector operator*(const CMatrix& m, const CVector& v) {
  if (m.cols() != v.dim()) throw std::invalid_argument("matvec: shape mismatch");
  CVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

// |u><v|
inline CMatrix outer(const CVector& u, const CVector& v) {
  CMatrix r(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline CVector tensor(const CVector& a, const CVector& b) {
  CVector r(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < b.dim(); ++j) r[i * b.dim() + j] = a[i] * b[j];
  }
  return r;
}

// Trace out every subsystem not listed in `keep`. `dims` are the subsystem
// dimensions, slowest (leftmost) factor first; `keep` holds 0-based subsystem
// indices, strictly increasing, a nonempty proper subset.
inline CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims,
                             std::span<const std::size_t> keep) {
  if (!m.square()) throw std::invalid_argument("partial_trace: matrix not square");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (total != m.rows()) throw std::invalid_argument("partial_trace: dims do not match matrix");
  if (keep.empty() || keep.size() >= dims.size())
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1]))
      throw std::invalid_argument("partial_trace: keep indices invalid");
  }

  std::vector<std::size_t> stride(dims.size());
  {
    std::size_t s = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
      stride[k] = s;
      s *= dims[k];
    }
  }
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

  // flat offsets for every kept / traced multi-index
  auto offsets = [&](const std::vector<std::size_t>& subs) {
    std::vector<std::size_t> off{0};
    for (std::size_t s : subs) {
      std::vector<std::size_t> next;
      next.reserve(off.size() * dims[s]);
      for (std::size_t base : off)
        for (std::size_t i = 0; i < dims[s]; ++i) next.push_back(base + i * stride[s]);
      off = std::move(next);
    }
    return off;
  };
  const std::vector<std::size_t> kept_off = offsets({keep.begin(), keep.end()});
  const std::vector<std::size_t> traced_off = offsets(traced);

  CMatrix r(kept_off.size(), kept_off.size());
  for (std::size_t p = 0; p < kept_off.size(); ++p)
    for (std::size_t q = 0; q < kept_off.size(); ++q) {
      cplx s = 0.0;
      for (std::size_t t : traced_off) s += m(kept_off[p] + t, kept_off[q] + t);
      r(p, q) = s;
    }
  return r;
}

inline CMatrix partial_trace(const CMatrix& m, std::initializer_list<std::size_t> dims,
                             std::initializer_list<std::size_t> keep) {
  return partial_trace(m, std::span<const std::size_t>(dims.begin(), dims.size()),
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

struct HermEig2 {
  std::array<double, 2> values;    // descending
  std::array<CVector, 2> vectors;  // orthonormal, vectors[k] belongs to values[k]
};

// Closed-form (trace/determinant) spectral decomposition of a 2x2 Hermitian
// matrix; no iteration at the only dimension the workbench needs.
inline HermEig2 herm_eig2(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("herm_eig2: need 2x2");
  if (!m.is_hermitian()) throw std::invalid_argument("herm_eig2: matrix not Hermitian");
  const double a = m(0, 0).real();
  const double c = m(1, 1).real();
  const cplx b = m(0, 1);
  const double mean = 0.5 * (a + c);
  const double half_diff = 0.5 * (a - c);
  const double radius = std::hypot(half_diff, std::abs(b));

  HermEig2 out;
  out.values = {mean + radius, mean - radius};

  const double scale = std::abs(a) + std::abs(c) + std::abs(b) + 1.0;
  if (std::abs(b) <= 1e-14 * scale) {
    const bool a_first = a >= c;
    out.vectors = {CVector::basis(2, a_first ? 0 : 1), CVector::basis(2, a_first ? 1 : 0)};
    return out;
  }
  // (b, l1-a) spans the l1 eigenspace, (-(l1-a), conj(b)) the orthogonal one
  const double d1 = out.values[0] - a;
  CVector v1{b, cplx(d1)};
  CVector v2{cplx(-d1), std::conj(b)};
  v1 *= cplx(1.0 / v1.norm());
  v2 *= cplx(1.0 / v2.norm());
  out.vectors = {std::move(v1), std::move(v2)};
  return out;
}

// Principal square root of a 2x2 Hermitian PSD matrix. Eigenvalues in
// [-1e-12, 0) are treated as rounding and clamped; anything lower is rejected.
inline CMatrix sqrt_psd2(const CMatrix& m) {
  HermEig2 eig = herm_eig2(m);
  for (double& lambda : eig.values) {
    if (lambda < -kPsdTol)
      throw std::domain_error("sqrt_psd2: matrix not positive semidefinite (eigenvalue " +
                              std::to_string(lambda) + ")");
    lambda = std::max(lambda, 0.0);
  }
  CMatrix r = std::sqrt(eig.values[0]) * outer(eig.vectors[0], eig.vectors[0]);
  r += std::sqrt(eig.values[1]) * outer(eig.vectors[1], eig.vectors[1]);
  // symmetrize away the last rounding bits
  r(1, 0) = std::conj(r(0, 1));
  r(0, 0) = r(0, 0).real();
  r(1, 1) = r(1, 1).real();
  return r;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace qclone
