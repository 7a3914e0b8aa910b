#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bergmanosc/common.hpp"
#include "bergmanosc/matrix.hpp"

namespace bergmanosc {

namespace detail {

// Iterative row/column norm equalization with powers of 2 (similarity
// transform; eigenvalues unchanged).
inline void balance(ComplexMatrix& a) {
  const std::size_t n = a.n;
  const double radix = 2.0, sqrdx = radix * radix;
  bool done = false;
  int guard = 0;
  while (!done && guard++ < 100) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0, s = c + r;
      while (c < g) { f *= radix; c *= sqrdx; }
      g = r * radix;
      while (c > g) { f /= radix; c /= sqrdx; }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        double ginv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= ginv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form, in place.
inline void hessenberg(ComplexMatrix& a) {
  const std::size_t n = a.n;
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    complexd x0 = a(k + 1, k);
    complexd alpha = (x0 == complexd(0.0, 0.0))
                         ? complexd(-xnorm, 0.0)
                         : -(x0 / std::abs(x0)) * xnorm;
    std::vector<complexd> v(n, complexd(0.0, 0.0));
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vv += std::norm(v[i]);
    if (vv == 0.0) continue;
    const double beta = 2.0 / vv;
    // A <- (I - beta v v^H) A
    for (std::size_t j = 0; j < n; ++j) {
      complexd s(0.0, 0.0);
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // A <- A (I - beta v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      complexd s(0.0, 0.0);
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

struct Givens {
  double c = 1.0;
  complexd s{0.0, 0.0};
};

inline Givens make_givens(complexd x, complexd y) {
  Givens g;
  double ax = std::abs(x), ay = std::abs(y);
  if (ay == 0.0) return g;
  double r = std::hypot(ax, ay);
  if (ax == 0.0) {
    g.c = 0.0;
    g.s = 1.0;
    return g;
  }
  g.c = ax / r;
  g.s = (x / ax) * std::conj(y) / r;
  return g;
}

// Implicit single-shift QR with Wilkinson shifts on an upper Hessenberg
// matrix; returns all eigenvalues.
inline std::vector<complexd> qr_hessenberg_eigenvalues(ComplexMatrix& h,
                                                       int iter_factor = 40) {
  const std::size_t n = h.n;
  std::vector<complexd> values;
  values.reserve(n);
  if (n == 0) return values;
  if (n == 1) {
    values.push_back(h(0, 0));
    return values;
  }
  const double eps = 2.220446049250313e-16;
  long hi = static_cast<long>(n) - 1;
  long total = 0;
  int stall = 0;
  const long cap = iter_factor * static_cast<long>(n);
  while (hi >= 0) {
    long lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = 1.0;
      if (std::abs(h(lo, lo - 1)) <= eps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      values.push_back(h(hi, hi));
      --hi;
      stall = 0;
      continue;
    }
    if (++total > cap) {
      throw NoConvergence("eigenvalues: QR iteration cap reached with " +
                          std::to_string(values.size()) + " of " +
                          std::to_string(n) + " found");
    }
    complexd sigma;
    {
      complexd a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
      complexd c = h(hi, hi - 1), d = h(hi, hi);
      complexd tr = a + d;
      complexd disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
      complexd l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
      sigma = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
      if (++stall % 12 == 0) {
        sigma = d + 0.75 * std::abs(h(hi, hi - 1));
      }
    }
    complexd x = h(lo, lo) - sigma;
    complexd y = h(lo + 1, lo);
    for (long k = lo; k < hi; ++k) {
      Givens g = make_givens(x, y);
      // rows k, k+1
      for (long j = std::max(lo, k - 1); j <= hi; ++j) {
        complexd t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = g.c * t1 + g.s * t2;
        h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
      // columns k, k+1
      long rmax = std::min(hi, k + 2);
      for (long i = lo; i <= rmax; ++i) {
        complexd t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = g.c * t1 + std::conj(g.s) * t2;
        h(i, k + 1) = -g.s * t1 + g.c * t2;
      }
      if (k + 1 < hi) {
        x = h(k + 1, k);
        y = h(k + 2, k);
      }
    }
  }
  return values;
}

}  // namespace detail

// All eigenvalues of a dense complex matrix, in deflation order.
inline std::vector<complexd> eigenvalues(const ComplexMatrix& t) {
  if (t.n > 512) throw BadParameters("eigenvalues: N must be <= 512");
  if (!t.finite()) throw BadParameters("eigenvalues: matrix has non-finite entries");
  ComplexMatrix work = t;
  detail::balance(work);
  detail::hessenberg(work);
  return detail::qr_hessenberg_eigenvalues(work);
}

struct EigenPairs {
  std::vector<complexd> values;
  std::vector<CoefficientVector> vectors;  // unit 2-norm
  std::vector<double> residuals;           // ||T v - lambda v|| / ||T||_F
};

// Eigenvalues plus eigenvectors by inverse iteration on the original matrix.
inline EigenPairs eigen_pairs(const ComplexMatrix& t) {
  EigenPairs out;
  out.values = eigenvalues(t);
  const std::size_t n = t.n;
  const double tnorm = std::max(frobenius_norm(t), 1e-300);
  for (std::size_t e = 0; e < out.values.size(); ++e) {
    complexd lam = out.values[e];
    ComplexMatrix b = t;
    // small diagonal offset keeps the factorization usable when lam is exact
    double off = 1e-12 * (std::abs(lam) + tnorm / std::sqrt(static_cast<double>(n)));
    for (std::size_t i = 0; i < n; ++i) b(i, i) -= lam + complexd(off, off);
    LUFactors f = lu_factor(std::move(b));
    CoefficientVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = complexd(1.0, 0.5 + static_cast<double>((i + e) % 7));
    }
    double nv = norm2(v);
    for (auto& c : v) c /= nv;
    for (int it = 0; it < 3; ++it) {
      v = lu_solve(f, v);
      nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) break;
      for (auto& c : v) c /= nv;
    }
    CoefficientVector tv = matvec(t, v);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += std::norm(tv[i] - lam * v[i]);
    out.vectors.push_back(std::move(v));
    out.residuals.push_back(std::sqrt(res) / tnorm);
  }
  return out;
}

}  // namespace bergmanosc
