#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "bergmanosc/common.hpp"

namespace bergmanosc {

// Dense square complex matrix, row-major.
struct ComplexMatrix {
  std::size_t n = 0;
  std::vector<complexd> a;

  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : n(dim), a(dim * dim, complexd(0.0, 0.0)) {
    if (dim < 1) throw BadParameters("ComplexMatrix: dimension must be >= 1");
  }

  complexd& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const complexd& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  bool finite() const {
    for (const auto& v : a) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
  }
};

using CoefficientVector = std::vector<complexd>;

inline ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.n != y.n) throw BadParameters("matrix add: dimension mismatch");
  ComplexMatrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.n != y.n) throw BadParameters("matrix sub: dimension mismatch");
  ComplexMatrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.n != y.n) throw BadParameters("matrix mul: dimension mismatch");
  const std::size_t n = x.n;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const complexd xik = x(i, k);
      if (xik == complexd(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += xik * y(k, j);
    }
  }
  return out;
}

inline ComplexMatrix operator*(complexd c, const ComplexMatrix& x) {
  ComplexMatrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = c * x.a[i];
  return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& x) {
  ComplexMatrix out(x.n);
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t j = 0; j < x.n; ++j) out(j, i) = std::conj(x(i, j));
  }
  return out;
}

inline CoefficientVector matvec(const ComplexMatrix& x, const CoefficientVector& v) {
  if (x.n != v.size()) throw BadParameters("matrix apply: dimension mismatch");
  CoefficientVector out(x.n, complexd(0.0, 0.0));
  for (std::size_t i = 0; i < x.n; ++i) {
    complexd acc(0.0, 0.0);
    for (std::size_t j = 0; j < x.n; ++j) acc += x(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

inline complexd dot(const CoefficientVector& x, const CoefficientVector& y) {
  complexd acc(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

inline double norm2(const CoefficientVector& x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

inline double frobenius_norm(const ComplexMatrix& x) {
  double acc = 0.0;
  for (const auto& v : x.a) acc += std::norm(v);
  return std::sqrt(acc);
}

inline double max_abs(const ComplexMatrix& x) {
  double best = 0.0;
  for (const auto& v : x.a) best = std::max(best, std::abs(v));
  return best;
}

// Leading k x k block.
inline ComplexMatrix leading_block(const ComplexMatrix& x, std::size_t k) {
  if (k > x.n) throw BadParameters("leading_block: block larger than matrix");
  ComplexMatrix out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out(i, j) = x(i, j);
  }
  return out;
}

// Largest singular-value estimate by power iteration on X^H X.
inline double operator_norm_estimate(const ComplexMatrix& x, int iters = 60,
                                     std::uint32_t seed = 1) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CoefficientVector v(x.n);
  for (auto& c : v) c = complexd(dist(gen), dist(gen));
  double nv = norm2(v);
  for (auto& c : v) c /= nv;
  ComplexMatrix xh = adjoint(x);
  double sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    CoefficientVector w = matvec(xh, matvec(x, v));
    double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    sigma = std::sqrt(nw);
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
  }
  return sigma;
}

// LU with partial pivoting; solve in place. Used by inverse iteration.
struct LUFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

inline LUFactors lu_factor(ComplexMatrix m) {
  const std::size_t n = m.n;
  LUFactors f{std::move(m), {}, false};
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(f.lu(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      complexd l = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

inline CoefficientVector lu_solve(const LUFactors& f, const CoefficientVector& b) {
  const std::size_t n = f.lu.n;
  CoefficientVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    complexd d = f.lu(ii, ii);
    if (d == complexd(0.0, 0.0)) d = complexd(1e-300, 0.0);
    x[ii] /= d;
  }
  return x;
}

inline complexd det2(const ComplexMatrix& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

// Determinant via LU; fine for the small block-symbol matrices.
inline complexd determinant(ComplexMatrix m) {
  const std::size_t n = m.n;
  if (n == 1) return m(0, 0);
  if (n == 2) return det2(m);
  complexd det(1.0, 0.0);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(m(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == 0.0) return complexd(0.0, 0.0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      complexd l = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return det;
}

// Random unitary via modified Gram-Schmidt on a seeded Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<CoefficientVector> cols(n, CoefficientVector(n));
  for (auto& col : cols) {
    for (auto& v : col) v = complexd(dist(gen), dist(gen));
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      complexd proj = dot(cols[j], cols[k]);
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= proj * cols[j][i];
    }
    double nk = norm2(cols[k]);
    for (auto& v : cols[k]) v /= nk;
  }
  ComplexMatrix u(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
  }
  return u;
}

}  // namespace bergmanosc
