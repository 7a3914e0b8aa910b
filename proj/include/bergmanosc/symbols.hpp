#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bergmanosc/common.hpp"
#include "bergmanosc/geometry.hpp"

namespace bergmanosc {

enum class Integrability { L1, L1loc };

// A measurable function on the disc in polar coordinates, with the metadata
// the numerics rely on. eval must be 2*pi-periodic in phi.
struct Symbol {
  std::string name;
  std::function<complexd(double rho, double phi)> eval;

  bool radial = false;
  bool bounded = false;
  double bound = 0.0;  // valid when bounded
  bool continuous = false;
  std::optional<double> osc_exponent;  // phase 1/(1-rho)^b when set
  Integrability integrability = Integrability::L1;
  std::vector<double> radial_breakpoints;       // discontinuity radii
  std::optional<int> fourier_width;             // |k| <= K in e^{ik phi}

  complexd operator()(double rho, double phi) const { return eval(rho, phi); }
  complexd operator()(complexd w) const {
    return eval(std::abs(w), std::arg(w));
  }
  complexd operator()(const Point& p) const { return eval(p.r, p.theta); }
};

inline Symbol constant_symbol(complexd c, std::string name = {}) {
  Symbol s;
  if (name.empty()) {
    std::ostringstream os;
    os << "const(" << c.real();
    if (c.imag() != 0.0) os << "," << c.imag();
    os << ")";
    name = os.str();
  }
  s.name = std::move(name);
  s.eval = [c](double, double) { return c; };
  s.radial = true;
  s.bounded = true;
  s.bound = std::abs(c);
  s.continuous = true;
  s.fourier_width = 0;
  return s;
}

// w^k as a symbol: rho^k e^{ik phi}.
inline Symbol zk_symbol(int k) {
  Symbol s;
  s.name = "zk(" + std::to_string(k) + ")";
  s.eval = [k](double rho, double phi) {
    return std::polar(std::pow(rho, k), k * phi);
  };
  s.radial = (k == 0);
  s.bounded = true;
  s.bound = 1.0;
  s.continuous = true;
  s.fourier_width = k;
  return s;
}

inline Symbol conj_zk_symbol(int k) {
  Symbol s;
  s.name = "conjzk(" + std::to_string(k) + ")";
  s.eval = [k](double rho, double phi) {
    return std::polar(std::pow(rho, k), -k * phi);
  };
  s.radial = (k == 0);
  s.bounded = true;
  s.bound = 1.0;
  s.continuous = true;
  s.fourier_width = k;
  return s;
}

inline Symbol abs_z_squared_symbol() {
  Symbol s;
  s.name = "absz2";
  s.eval = [](double rho, double) { return complexd(rho * rho, 0.0); };
  s.radial = true;
  s.bounded = true;
  s.bound = 1.0;
  s.continuous = true;
  s.fourier_width = 0;
  return s;
}

// w + conj(w) = 2 rho cos(phi).
inline Symbol z_plus_conj_symbol() {
  Symbol s;
  s.name = "zpluszbar";
  s.eval = [](double rho, double phi) {
    return complexd(2.0 * rho * std::cos(phi), 0.0);
  };
  s.bounded = true;
  s.bound = 2.0;
  s.continuous = true;
  s.fourier_width = 1;
  return s;
}

// The oscillatory symbol family: 1 on rho < 1/2 and
// sin(1/(1-rho)^b) / (rho (1-rho)^{b-beta}) on rho >= 1/2, for b >= beta > 0.
// Radial, with sine phase exponent b; integrable on the disc iff b - beta < 1;
// bounded (by 2) exactly when b = beta.
inline Symbol example45(double b, double beta) {
  if (!(b >= beta && beta > 0.0)) {
    throw BadParameters("example45: requires b >= beta > 0");
  }
  Symbol s;
  {
    std::ostringstream os;
    os << "example45(b=" << b << ",beta=" << beta << ")";
    s.name = os.str();
  }
  s.eval = [b, beta](double rho, double) {
    if (rho < 0.5) return complexd(1.0, 0.0);
    double u = 1.0 - rho;
    return complexd(std::sin(std::pow(u, -b)) * std::pow(u, beta - b) / rho, 0.0);
  };
  s.radial = true;
  s.bounded = (b == beta);
  s.bound = 2.0;
  s.continuous = false;
  s.osc_exponent = b;
  s.integrability = (b - beta < 1.0) ? Integrability::L1 : Integrability::L1loc;
  s.radial_breakpoints = {0.5};
  s.fourier_width = 0;
  return s;
}

// Radii of the sign changes of example45 along a ray: sin(1/(1-rho)^b) = 0
// at rho_m = 1 - (m pi)^{-1/b}.
inline double example45_zero(double b, int m) {
  return 1.0 - std::pow(m * pi, -1.0 / b);
}

// Random smooth test symbol: a finite Fourier sum
//   sum_{|k| <= K} c_k(rho) e^{ik phi},  c_{-k} = conj(c_k), c_0 real,
// with polynomial radial parts, so the result is real-valued, smooth and
// closed under every operation in the toolkit. Deterministic per seed.
inline Symbol rand_smooth(std::uint32_t seed, int width = 4, int degree = 3) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  // coeffs[k][d] for k = 0..width, radial factor rho^(k+d)
  std::vector<std::vector<complexd>> coeffs(width + 1);
  double bound = 0.0;
  for (int k = 0; k <= width; ++k) {
    coeffs[k].resize(degree + 1);
    for (int d = 0; d <= degree; ++d) {
      double re = dist(gen);
      double im = (k == 0) ? 0.0 : dist(gen);
      coeffs[k][d] = complexd(re, im);
      bound += (k == 0 ? 1.0 : 2.0) * std::abs(coeffs[k][d]);
    }
  }
  Symbol s;
  s.name = "rand(" + std::to_string(seed) + ")";
  s.eval = [coeffs, width, degree](double rho, double phi) {
    double acc = 0.0;
    for (int k = 0; k <= width; ++k) {
      complexd ck(0.0, 0.0);
      double rpow = std::pow(rho, k);
      for (int d = 0; d <= degree; ++d) {
        ck += coeffs[k][d] * rpow;
        rpow *= rho;
      }
      if (k == 0) {
        acc += ck.real();
      } else {
        // c_k e^{ik phi} + conj(c_k) e^{-ik phi}
        acc += 2.0 * (ck * std::polar(1.0, k * phi)).real();
      }
    }
    return complexd(acc, 0.0);
  };
  s.bounded = true;
  s.bound = bound;
  s.continuous = true;
  s.fourier_width = width;
  s.radial = (width == 0);
  return s;
}

// +-1 checkerboard on the dyadic decomposition tiles.
inline Symbol checkerboard_symbol() {
  Symbol s;
  s.name = "checker";
  s.eval = [](double rho, double phi) {
    auto [k, j] = decomposition_locate(std::min(rho, 1.0 - 1e-15), phi);
    return complexd(((k + j) % 2 == 0) ? 1.0 : -1.0, 0.0);
  };
  s.bounded = true;
  s.bound = 1.0;
  for (int k = 1; k <= 24; ++k) {
    s.radial_breakpoints.push_back(1.0 - std::ldexp(1.0, -k));
  }
  return s;
}

// chi_{|w| <= rho_cut} * f. Integrable regardless of f's class.
inline Symbol truncate(const Symbol& f, double rho_cut) {
  if (!(rho_cut > 0.0 && rho_cut < 1.0)) {
    throw BadParameters("truncate: rho_cut must lie in (0,1)");
  }
  Symbol s = f;
  s.name = "trunc(" + f.name + "," + std::to_string(rho_cut) + ")";
  auto inner = f.eval;
  s.eval = [inner, rho_cut](double rho, double phi) {
    return rho > rho_cut ? complexd(0.0, 0.0) : inner(rho, phi);
  };
  s.continuous = false;
  s.integrability = Integrability::L1;
  s.radial_breakpoints.push_back(rho_cut);
  return s;
}

// Restriction of f to the annulus rho_in < |w| <= rho_out.
inline Symbol annulus_restrict(const Symbol& f, double rho_in, double rho_out) {
  Symbol s = f;
  s.name = "annulus(" + f.name + ")";
  auto inner = f.eval;
  s.eval = [inner, rho_in, rho_out](double rho, double phi) {
    return (rho > rho_in && rho <= rho_out) ? inner(rho, phi) : complexd(0.0, 0.0);
  };
  s.continuous = false;
  s.integrability = Integrability::L1;
  s.radial_breakpoints.push_back(rho_in);
  s.radial_breakpoints.push_back(rho_out);
  return s;
}

namespace detail {
inline std::optional<double> merge_osc(const std::optional<double>& a,
                                       const std::optional<double>& b) {
  if (!a) return b;
  if (!b) return a;
  if (*a == *b) return a;
  return std::max(*a, *b);  // finer phase wins for panel placement
}
inline std::vector<double> merge_breaks(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}
}  // namespace detail

inline Symbol symbol_add(const Symbol& f, const Symbol& g) {
  Symbol s;
  s.name = "(" + f.name + "+" + g.name + ")";
  auto fe = f.eval, ge = g.eval;
  s.eval = [fe, ge](double rho, double phi) { return fe(rho, phi) + ge(rho, phi); };
  s.radial = f.radial && g.radial;
  s.bounded = f.bounded && g.bounded;
  s.bound = f.bound + g.bound;
  s.continuous = f.continuous && g.continuous;
  s.osc_exponent = detail::merge_osc(f.osc_exponent, g.osc_exponent);
  s.integrability = (f.integrability == Integrability::L1 &&
                     g.integrability == Integrability::L1)
                        ? Integrability::L1
                        : Integrability::L1loc;
  s.radial_breakpoints = detail::merge_breaks(f.radial_breakpoints, g.radial_breakpoints);
  if (f.fourier_width && g.fourier_width) {
    s.fourier_width = std::max(*f.fourier_width, *g.fourier_width);
  }
  return s;
}

inline Symbol symbol_add_const(const Symbol& f, complexd c) {
  return symbol_add(f, constant_symbol(c));
}

inline Symbol symbol_scale(const Symbol& f, complexd c) {
  Symbol s = f;
  std::ostringstream os;
  os << "scale(" << f.name << ")";
  s.name = os.str();
  auto fe = f.eval;
  s.eval = [fe, c](double rho, double phi) { return c * fe(rho, phi); };
  s.bound = f.bound * std::abs(c);
  return s;
}

inline Symbol symbol_mul(const Symbol& f, const Symbol& g) {
  Symbol s;
  s.name = "(" + f.name + "*" + g.name + ")";
  auto fe = f.eval, ge = g.eval;
  s.eval = [fe, ge](double rho, double phi) { return fe(rho, phi) * ge(rho, phi); };
  s.radial = f.radial && g.radial;
  s.bounded = f.bounded && g.bounded;
  s.bound = f.bound * g.bound;
  s.continuous = f.continuous && g.continuous;
  s.osc_exponent = detail::merge_osc(f.osc_exponent, g.osc_exponent);
  // bounded times integrable stays integrable; anything else only locally
  s.integrability = Integrability::L1loc;
  if ((f.bounded && g.integrability == Integrability::L1) ||
      (g.bounded && f.integrability == Integrability::L1)) {
    s.integrability = Integrability::L1;
  }
  s.radial_breakpoints = detail::merge_breaks(f.radial_breakpoints, g.radial_breakpoints);
  if (f.fourier_width && g.fourier_width) {
    s.fourier_width = *f.fourier_width + *g.fourier_width;
  }
  return s;
}

inline Symbol symbol_abs(const Symbol& f) {
  Symbol s = f;
  s.name = "abs(" + f.name + ")";
  auto fe = f.eval;
  s.eval = [fe](double rho, double phi) {
    return complexd(std::abs(fe(rho, phi)), 0.0);
  };
  s.fourier_width = f.radial ? std::optional<int>(0) : std::nullopt;
  return s;
}

// Named symbols used throughout the test suites and studies.
inline std::vector<Symbol> standard_library() {
  std::vector<Symbol> lib;
  lib.push_back(constant_symbol(1.0, "one"));
  lib.push_back(constant_symbol(2.0));
  lib.push_back(zk_symbol(1));
  lib.push_back(zk_symbol(2));
  lib.push_back(zk_symbol(3));
  lib.push_back(conj_zk_symbol(1));
  lib.push_back(abs_z_squared_symbol());
  lib.push_back(z_plus_conj_symbol());
  lib.push_back(rand_smooth(7));
  lib.push_back(rand_smooth(42));
  lib.push_back(checkerboard_symbol());
  lib.push_back(example45(1.0, 1.0));
  lib.push_back(example45(1.5, 1.0));
  return lib;
}

// ---------------------------------------------------------------------------
// Expression grammar for the CLI: name or name(arg, key=value, ...).
// Recognized names: const(re[,im]), one, zk(k), conjzk(k), absz2, zpluszbar,
// rand(seed), checker, example45(b=...,beta=...).

namespace detail {

struct ParsedExpr {
  std::string name;
  std::vector<std::pair<std::string, double>> args;  // key may be empty (positional)
};

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

inline ParsedExpr parse_expr(const std::string& raw) {
  ParsedExpr out;
  const std::string text = trim(raw);
  auto open = text.find('(');
  if (open == std::string::npos) {
    out.name = text;
    return out;
  }
  if (text.empty() || text.back() != ')') {
    throw BadParameters("symbol expression: missing ')'");
  }
  out.name = trim(text.substr(0, open));
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::string token;
  std::istringstream in(body);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    auto eq = token.find('=');
    std::string key;
    std::string val = token;
    if (eq != std::string::npos) {
      key = trim(token.substr(0, eq));
      val = token.substr(eq + 1);
    }
    if (trim(val).empty()) continue;
    try {
      out.args.emplace_back(key, std::stod(val));
    } catch (const std::exception&) {
      throw BadParameters("symbol expression: bad numeric argument '" + val + "'");
    }
  }
  return out;
}

inline double expr_arg(const ParsedExpr& e, const std::string& key, std::size_t position,
                       std::optional<double> fallback = std::nullopt) {
  for (const auto& [k, v] : e.args) {
    if (k == key) return v;
  }
  if (position < e.args.size() && e.args[position].first.empty()) {
    return e.args[position].second;
  }
  if (fallback) return *fallback;
  throw BadParameters("symbol expression: missing argument '" + key + "'");
}

}  // namespace detail

inline Symbol parse_symbol(const std::string& text) {
  auto e = detail::parse_expr(text);
  const auto& n = e.name;
  if (n == "one") return constant_symbol(1.0, "one");
  if (n == "const") {
    double re = detail::expr_arg(e, "re", 0);
    double im = detail::expr_arg(e, "im", 1, 0.0);
    return constant_symbol(complexd(re, im));
  }
  if (n == "zk") return zk_symbol(static_cast<int>(detail::expr_arg(e, "k", 0)));
  if (n == "conjzk") return conj_zk_symbol(static_cast<int>(detail::expr_arg(e, "k", 0)));
  if (n == "absz2") return abs_z_squared_symbol();
  if (n == "zpluszbar") return z_plus_conj_symbol();
  if (n == "rand") {
    return rand_smooth(static_cast<std::uint32_t>(detail::expr_arg(e, "seed", 0)));
  }
  if (n == "checker") return checkerboard_symbol();
  if (n == "example45") {
    return example45(detail::expr_arg(e, "b", 0), detail::expr_arg(e, "beta", 1));
  }
  throw BadParameters("symbol expression: unknown symbol '" + n + "'");
}

// N x N matrix of scalar symbols, row-major.
struct MatrixSymbol {
  std::size_t n = 0;
  std::vector<Symbol> entries;  // n*n, row-major

  MatrixSymbol() = default;
  explicit MatrixSymbol(std::size_t size) : n(size), entries(size * size) {}
  Symbol& at(std::size_t j, std::size_t k) { return entries[j * n + k]; }
  const Symbol& at(std::size_t j, std::size_t k) const { return entries[j * n + k]; }
};

inline MatrixSymbol diag_matrix_symbol(const std::vector<Symbol>& diag) {
  MatrixSymbol m(diag.size());
  for (std::size_t j = 0; j < diag.size(); ++j) {
    for (std::size_t k = 0; k < diag.size(); ++k) {
      m.at(j, k) = (j == k) ? diag[j] : constant_symbol(0.0, "zero");
    }
  }
  return m;
}

}  // namespace bergmanosc
