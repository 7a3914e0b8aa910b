#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bergmanosc/common.hpp"
#include "bergmanosc/geometry.hpp"
#include "bergmanosc/matrix.hpp"
#include "bergmanosc/oscillation.hpp"
#include "bergmanosc/quadrature.hpp"
#include "bergmanosc/symbols.hpp"
#include "bergmanosc/thresholds.hpp"

namespace bergmanosc {

// Reproducing kernel at z: K_z(w) = 1/(1 - w conj(z))^2, with
// ||K_z||_2^2 = K_z(z) = 1/(1-|z|^2)^2 and k_z = K_z/||K_z||_2.
struct KernelPoint {
  Point z;

  complexd K(complexd w) const {
    complexd c = complexd(1.0, 0.0) - w * std::conj(z.value());
    return 1.0 / (c * c);
  }
  double norm_sq() const {
    double d = 1.0 - z.r * z.r;
    return 1.0 / (d * d);
  }
  complexd k(complexd w) const { return K(w) * (1.0 - z.r * z.r); }
};

namespace detail {

// In-place radix-2 FFT, sign=-1 forward (e^{-i...}). Length must be a
// power of two.
inline void fft_pow2(std::vector<complexd>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * two_pi / static_cast<double>(len);
    const complexd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        complexd u = a[i + k];
        complexd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline std::size_t next_pow2(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

// Uniform angular samples phi_j = 2 pi j / M of fn at each radial node,
// Fourier-analyzed: coef[i][k + kmax] = (1/M) sum_j fn(rho_i, phi_j) e^{-ik phi_j}.
template <class F>
std::vector<std::vector<complexd>> angular_fourier(F&& fn, const RadialGrid& grid,
                                                   int kmax, std::size_t M) {
  M = next_pow2(std::max<std::size_t>(M, 2 * static_cast<std::size_t>(kmax) + 2));
  std::vector<std::vector<complexd>> coef(grid.rho.size(),
                                          std::vector<complexd>(2 * kmax + 1));
  std::vector<complexd> buf(M);
  for (std::size_t i = 0; i < grid.rho.size(); ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      buf[j] = fn(grid.rho[i], two_pi * static_cast<double>(j) / M);
    }
    fft_pow2(buf, -1);
    for (int k = -kmax; k <= kmax; ++k) {
      std::size_t idx = (k >= 0) ? static_cast<std::size_t>(k)
                                 : M - static_cast<std::size_t>(-k);
      coef[i][k + kmax] = buf[idx] / static_cast<double>(M);
    }
  }
  return coef;
}

}  // namespace detail

// Diagonal of the finite section of T_f for radial f:
// d_n = 2 (n+1) int_0^1 f(rho) rho^{2n+1} d rho.
inline std::vector<complexd> toeplitz_radial_diag(const Symbol& f, std::size_t N,
                                                  const QuadratureConfig& cfg = {}) {
  if (!f.radial) throw BadParameters("toeplitz_radial_diag: symbol is not radial");
  RadialMoments mom = radial_moments(f, static_cast<int>(N), cfg);
  std::vector<complexd> d(N);
  for (std::size_t n = 0; n < N; ++n) {
    d[n] = 2.0 * static_cast<double>(n + 1) * mom.mu[n];
  }
  return d;
}

// Finite section of the Toeplitz operator in the basis e_n(w) = sqrt(n+1) w^n:
// entry (m,n) = sqrt((m+1)(n+1)) (1/pi) int int f rho^{m+n+1} e^{i(n-m)phi}.
// Finite-Fourier-width symbols give exactly banded sections; entries beyond
// the band are skipped.
inline ComplexMatrix toeplitz_matrix(const Symbol& f, std::size_t N,
                                     const QuadratureConfig& cfg = {}) {
  if (N < 1) throw BadParameters("toeplitz_matrix: N must be >= 1");
  ComplexMatrix T(N);
  if (f.radial) {
    auto d = toeplitz_radial_diag(f, N, cfg);
    for (std::size_t n = 0; n < N; ++n) T(n, n) = d[n];
    return T;
  }
  const int nk = static_cast<int>(N) - 1;
  const int kmax = f.fourier_width ? std::min(nk, *f.fourier_width) : nk;
  const std::size_t M =
      f.fourier_width ? static_cast<std::size_t>(2 * kmax + 2) : 4 * N;
  RadialGrid grid = radial_grid(f, static_cast<int>(2 * N), cfg);
  auto coef = detail::angular_fourier(f.eval, grid, kmax, M);

  // powers rho^p for p up to 2N-1
  const std::size_t R = grid.rho.size();
  std::vector<double> pw(R * (2 * N));
  for (std::size_t i = 0; i < R; ++i) {
    double p = grid.rho[i];
    for (std::size_t d = 0; d < 2 * N; ++d) {
      pw[i * (2 * N) + d] = p;
      p *= grid.rho[i];
    }
  }
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t n = 0; n < N; ++n) {
      int k = static_cast<int>(m) - static_cast<int>(n);
      if (std::abs(k) > kmax) continue;
      complexd acc(0.0, 0.0);
      for (std::size_t i = 0; i < R; ++i) {
        acc += grid.w[i] * coef[i][k + kmax] * pw[i * (2 * N) + (m + n)];
      }
      T(m, n) = 2.0 * std::sqrt(static_cast<double>((m + 1) * (n + 1))) * acc;
    }
  }
  return T;
}

// ---------------------------------------------------------------------------
// Berezin transforms

// Berezin transform of the symbol: int f(phi_z(zeta)) dA(zeta). Radial
// symbols use the angular average of |1 - rho t e^{i phi}|^{-4}, which is
// (1 + rho^2 t^2)/(1 - rho^2 t^2)^3, and sum oscillatory tails half-wave by
// half-wave (alternating bound).
inline complexd berezin_symbol(const Symbol& f, const Point& z,
                               const QuadratureConfig& cfg = {}) {
  const double t = z.r;
  if (f.radial) {
    const double t2 = t * t;
    auto g = [&](double rho) {
      const double r2t2 = rho * rho * t2;
      const double den = 1.0 - r2t2;
      return f.eval(rho, 0.0) * (rho * (1.0 + r2t2) / (den * den * den));
    };
    const double scale = 2.0 * (1.0 - t2) * (1.0 - t2);
    if (f.osc_exponent) {
      double inner_hi = 0.5;
      for (double bp : f.radial_breakpoints) {
        inner_hi = std::max(inner_hi, std::min(bp, 0.9));
      }
      RadialHints h;
      h.radial = true;
      h.breakpoints = f.radial_breakpoints;
      Integral inner = integrate_radial_fn(g, 0.0, inner_hi, h, cfg);
      Integral outer = oscillatory_radial_tail(g, inner_hi, *f.osc_exponent, true, cfg);
      return scale * (inner.value + outer.value);
    }
    RadialHints h;
    h.radial = true;
    // resolve the kernel peak at rho ~ 1 for t near 1
    int peak = static_cast<int>(std::ceil(1.0 / std::max(1.0 - t, 1e-6)));
    h.breakpoints = detail::graded_edges(f.radial_breakpoints, 1.0, peak);
    Integral val = integrate_radial_fn(g, 0.0, 1.0, h, cfg);
    return scale * val.value;
  }
  if (f.fourier_width) {
    // Kernel expansion: |k_z(w)|^2 = (1-x)^2 sum_{m,n} (m+1)(n+1) (conj(z)w)^m (z conj(w))^n
    // pairs the angular slice f_k with n = m+k, so
    //   ~f(z) = (1-x)^2 sum_k e^{ik theta} sum_m (m+1)(m+k+1) r^{2m+k} c_{k,m},
    //   c_{k,m} = 2 int f_k(rho) rho^{2m+k+1} d rho,  x = r^2.
    const double x = t * t;
    const int K = std::max(0, *f.fourier_width);
    std::size_t M = 8;
    while (x > 0.0 && M < 200000) {
      double tail = std::pow(x, static_cast<double>(M)) *
                    (static_cast<double>(M + 1) - static_cast<double>(M) * x);
      if (tail < 1e-12) break;
      M += M / 2 + 8;
    }
    RadialGrid grid =
        radial_grid(f.radial_breakpoints, static_cast<int>(2 * M) + K + 2, cfg);
    const std::size_t Mang = detail::next_pow2(static_cast<std::size_t>(4 * K + 4));
    auto coef = detail::angular_fourier(f.eval, grid, K, Mang);
    std::vector<std::vector<complexd>> c(
        2 * K + 1, std::vector<complexd>(M + 1, complexd(0.0, 0.0)));
    for (std::size_t i = 0; i < grid.rho.size(); ++i) {
      const double rho = grid.rho[i], rho2 = rho * rho;
      for (int k = -K; k <= K; ++k) {
        const complexd base = 2.0 * grid.w[i] * coef[i][k + K];
        const std::size_t m0 = k < 0 ? static_cast<std::size_t>(-k) : 0;
        double pw = std::pow(rho, static_cast<double>(std::abs(k) + 1));
        for (std::size_t m = m0; m <= M; ++m) {
          c[k + K][m] += base * pw;
          pw *= rho2;
        }
      }
    }
    complexd total(0.0, 0.0);
    for (int k = -K; k <= K; ++k) {
      const std::size_t m0 = k < 0 ? static_cast<std::size_t>(-k) : 0;
      complexd s(0.0, 0.0);
      double rp = std::pow(t, static_cast<double>(std::abs(k)));
      for (std::size_t m = m0; m <= M; ++m) {
        s += (static_cast<double>(m + 1) * (static_cast<double>(m + 1) + k)) * rp *
             c[k + K][m];
        rp *= x;
      }
      total += s * std::polar(1.0, k * z.theta);
    }
    return (1.0 - x) * (1.0 - x) * total;
  }
  const complexd zc = z.value();
  auto pullback = [&](double rho, double phi) {
    return f(mobius(zc, std::polar(rho, phi)));
  };
  RadialHints h;
  Box full{0.0, 1.0 - 1e-15, 0.0, two_pi};
  return integrate_polar_rect_fn(pullback, full, h, cfg).value;
}

// Berezin transform of a finite section: (c^H T c)/(c^H c) with
// c_n = sqrt(n+1) conj(z)^n the kernel coefficients, truncated at N.
inline complexd berezin_operator(const ComplexMatrix& T, const Point& z) {
  const std::size_t N = T.n;
  const double x = z.r * z.r;
  // relative kernel mass beyond the section: x^N (N+1 - N x)
  const double tail_rel = std::pow(x, static_cast<double>(N)) *
                          (static_cast<double>(N + 1) - static_cast<double>(N) * x);
  if (tail_rel > thresholds::berezin_tail) {
    throw TruncationWarning("berezin_operator: kernel tail mass " +
                            std::to_string(tail_rel) + " exceeds tolerance at this z");
  }
  CoefficientVector c(N);
  const complexd zb = std::conj(z.value());
  complexd p(1.0, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    c[n] = std::sqrt(static_cast<double>(n + 1)) * p;
    p *= zb;
  }
  return dot(c, matvec(T, c)) / dot(c, c);
}

// ---------------------------------------------------------------------------
// Projection coefficients <F, e_m> for a pointwise function F on the disc:
// c_m = sqrt(m+1) (1/pi) int int F rho^{m+1} e^{-im phi} d rho d phi.
template <class F>
CoefficientVector project_coefficients(F&& fn, std::size_t count,
                                       const std::vector<double>& breakpoints,
                                       std::size_t M, const QuadratureConfig& cfg = {}) {
  RadialGrid grid = radial_grid(breakpoints, static_cast<int>(2 * count), cfg);
  const int kmax = static_cast<int>(count);  // need k = +m up to count-1
  auto coef = detail::angular_fourier(fn, grid, kmax, M);
  CoefficientVector c(count, complexd(0.0, 0.0));
  for (std::size_t m = 0; m < count; ++m) {
    complexd acc(0.0, 0.0);
    for (std::size_t i = 0; i < grid.rho.size(); ++i) {
      acc += grid.w[i] * coef[i][static_cast<int>(m) + kmax] *
             std::pow(grid.rho[i], static_cast<double>(m + 1));
    }
    c[m] = 2.0 * std::sqrt(static_cast<double>(m + 1)) * acc;
  }
  return c;
}

// Evaluate a coefficient vector as the analytic function
// g(w) = sum g_n sqrt(n+1) w^n.
inline complexd eval_coefficients(const CoefficientVector& g, complexd w) {
  complexd acc(0.0, 0.0);
  complexd p(1.0, 0.0);
  for (std::size_t n = 0; n < g.size(); ++n) {
    acc += g[n] * std::sqrt(static_cast<double>(n + 1)) * p;
    p *= w;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Hankel: ||H_f g||_2^2 = ||f g||_{L^2}^2 - ||P(f g)||^2, with the projection
// truncated at N and the dropped coefficient mass estimated from the next 16
// coefficients.
inline double hankel_norm_applied(const Symbol& f, const CoefficientVector& g,
                                  std::size_t N, const QuadratureConfig& cfg = {}) {
  auto fg = [&](double rho, double phi) {
    return f.eval(rho, phi) * eval_coefficients(g, std::polar(rho, phi));
  };
  auto fg_sq = [&](double rho, double phi) {
    return complexd(std::norm(fg(rho, phi)), 0.0);
  };
  RadialHints h = hints_of(f);
  h.radial = false;
  Box full{0.0, 1.0 - 1e-15, 0.0, two_pi};
  Integral l2 = integrate_polar_rect_fn(fg_sq, full, h, cfg);
  if (!l2.converged) {
    throw UnderResolved("hankel_norm_applied: ||fg||_2 quadrature did not converge");
  }
  const std::size_t extra = 16;
  CoefficientVector c =
      project_coefficients(fg, N + extra, f.radial_breakpoints, 4 * (N + extra), cfg);
  double proj = 0.0;
  for (std::size_t m = 0; m < N; ++m) proj += std::norm(c[m]);
  double tail = 0.0;
  for (std::size_t m = N; m < N + extra; ++m) tail += std::norm(c[m]);
  tail *= 2.0;  // safety factor for the unobserved remainder
  double value_sq = l2.value.real() - proj;
  if (tail > thresholds::hankel_tail * std::max(std::abs(value_sq), 1e-12)) {
    throw TailBoundExceeded("hankel_norm_applied: projection tail estimate " +
                            std::to_string(tail) + " too large at N = " +
                            std::to_string(N));
  }
  return std::sqrt(std::max(0.0, value_sq));
}

// Both sides of the semi-commutator identity
// (T_f T_g - T_{fg}) e_0 = -P M_f H_g e_0, as norms.
struct SemiCommutator {
  double finite_section = 0.0;  // ||(T_f T_g - T_{fg}) e_0||
  double projected = 0.0;       // ||P M_f H_g e_0||
};

inline SemiCommutator semi_commutator_check(const Symbol& f, const Symbol& g,
                                            std::size_t N,
                                            const QuadratureConfig& cfg = {}) {
  ComplexMatrix Tf = toeplitz_matrix(f, N, cfg);
  ComplexMatrix Tg = toeplitz_matrix(g, N, cfg);
  ComplexMatrix Tfg = toeplitz_matrix(symbol_mul(f, g), N, cfg);
  CoefficientVector e0(N, complexd(0.0, 0.0));
  e0[0] = 1.0;
  CoefficientVector lhs = matvec(Tf, matvec(Tg, e0));
  CoefficientVector rhs_vec = matvec(Tfg, e0);
  for (std::size_t i = 0; i < N; ++i) lhs[i] -= rhs_vec[i];

  SemiCommutator out;
  out.finite_section = norm2(lhs);

  // H_g e_0 = g - P g; P g is exact once the coefficient count passes the
  // Fourier width of g.
  std::size_t count_g = g.fourier_width
                            ? std::min<std::size_t>(*g.fourier_width + 1, N)
                            : N;
  CoefficientVector a =
      project_coefficients(g.eval, count_g, g.radial_breakpoints, 4 * N, cfg);
  auto residual = [&](double rho, double phi) {
    complexd w = std::polar(rho, phi);
    return f.eval(rho, phi) * (g.eval(rho, phi) - eval_coefficients(a, w));
  };
  CoefficientVector c =
      project_coefficients(residual, N, f.radial_breakpoints, 4 * N, cfg);
  out.projected = norm2(c);
  return out;
}

// ---------------------------------------------------------------------------
// Truncation convergence: Cauchy residuals ||(T_{chi_{c'} f} - T_{chi_c f}) g||
// across successive cut radii.
struct TruncationReport {
  std::vector<double> cuts;
  std::vector<double> residuals;   // one per successive pair of cuts
  double condition_proxy = 0.0;    // averaging_local at the probe point
  bool condition_ok = true;        // advisory only
};

inline TruncationReport truncation_convergence(const Symbol& f,
                                               const CoefficientVector& g,
                                               const std::vector<double>& cuts,
                                               std::size_t N,
                                               const QuadratureConfig& cfg = {}) {
  if (cuts.size() < 2) throw BadParameters("truncation_convergence: need >= 2 cuts");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) {
      throw BadParameters("truncation_convergence: cuts must increase");
    }
  }
  TruncationReport rep;
  rep.cuts = cuts;
  rep.condition_proxy =
      averaging_local_report(f, Point{0.99, 0.0}, GridSpec{16, 16}, cfg, false).value;
  rep.condition_ok = std::isfinite(rep.condition_proxy) && rep.condition_proxy < 1e6;

  CoefficientVector gv = g;
  gv.resize(N, complexd(0.0, 0.0));

  if (f.radial) {
    std::vector<std::vector<complexd>> diags;
    for (double cut : cuts) {
      diags.push_back(toeplitz_radial_diag(truncate(f, cut), N, cfg));
    }
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      double acc = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        acc += std::norm((diags[j + 1][n] - diags[j][n]) * gv[n]);
      }
      rep.residuals.push_back(std::sqrt(acc));
    }
    return rep;
  }
  std::vector<ComplexMatrix> mats;
  for (double cut : cuts) mats.push_back(toeplitz_matrix(truncate(f, cut), N, cfg));
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    rep.residuals.push_back(norm2(matvec(mats[j + 1] - mats[j], gv)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reflection conjugation: U_z h = (h o phi_z) (1-|z|^2)/(1 - conj(z) w)^2,
// the self-inverse surjective isometry of A^2. Returns the Frobenius norm of
// U_z T_f U_z - T_{f o phi_z} on the leading (N/4) x (N/4) block. The
// composition spreads e_m over roughly 4m basis modes at |z| = 1/2, so only
// the leading quarter of the section is trustworthy.
inline double reflection_check(const Symbol& f, const Point& z, std::size_t N,
                               const QuadratureConfig& cfg = {}) {
  if (!f.bounded) throw BadParameters("reflection_check: symbol must be bounded");
  if (z.r > 0.7) {
    throw TruncationWarning("reflection_check: |z| > 0.7, finite section too lossy");
  }
  const complexd zc = z.value();
  const double one_minus = 1.0 - z.r * z.r;

  RadialGrid grid = radial_grid(std::vector<double>{}, static_cast<int>(2 * N), cfg);
  const std::size_t R = grid.rho.size();
  const std::size_t M = detail::next_pow2(4 * N);

  ComplexMatrix U(N);
  std::vector<complexd> wnodes(M), unodes(M), weight(M);
  std::vector<complexd> buf(M);
  std::vector<complexd> upow(M);
  for (std::size_t i = 0; i < R; ++i) {
    const double rho = grid.rho[i];
    for (std::size_t j = 0; j < M; ++j) {
      complexd w = std::polar(rho, two_pi * static_cast<double>(j) / M);
      wnodes[j] = w;
      unodes[j] = mobius(zc, w);
      complexd den = complexd(1.0, 0.0) - std::conj(zc) * w;
      weight[j] = one_minus / (den * den);
      upow[j] = complexd(1.0, 0.0);
    }
    // precompute rho^{m+1}
    std::vector<double> rp(N);
    double p = rho;
    for (std::size_t m = 0; m < N; ++m) {
      rp[m] = p;
      p *= rho;
    }
    for (std::size_t n = 0; n < N; ++n) {
      for (std::size_t j = 0; j < M; ++j) buf[j] = upow[j] * weight[j];
      detail::fft_pow2(buf, -1);
      for (std::size_t m = 0; m < N; ++m) {
        U(m, n) += grid.w[i] * rp[m] * buf[m] / static_cast<double>(M);
      }
      for (std::size_t j = 0; j < M; ++j) upow[j] *= unodes[j];
    }
  }
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t n = 0; n < N; ++n) {
      U(m, n) *= 2.0 * std::sqrt(static_cast<double>((m + 1) * (n + 1)));
    }
  }

  Symbol pullback;
  pullback.name = "pullback(" + f.name + ")";
  Symbol inner = f;
  pullback.eval = [inner, zc](double rho, double phi) {
    return inner(mobius(zc, std::polar(rho, phi)));
  };
  pullback.bounded = f.bounded;
  pullback.bound = f.bound;
  pullback.continuous = f.continuous;

  ComplexMatrix Tf = toeplitz_matrix(f, N, cfg);
  ComplexMatrix Tp = toeplitz_matrix(pullback, N, cfg);
  ComplexMatrix diff = U * Tf * U - Tp;
  return frobenius_norm(leading_block(diff, std::max<std::size_t>(1, N / 4)));
}

}  // namespace bergmanosc
