#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bergmanosc/bergman.hpp"
#include "bergmanosc/common.hpp"
#include "bergmanosc/eigensolver.hpp"
#include "bergmanosc/matrix.hpp"
#include "bergmanosc/oscillation.hpp"
#include "bergmanosc/symbols.hpp"
#include "bergmanosc/thresholds.hpp"

namespace bergmanosc {

// Which boundary extension a cluster/index computation samples: the box
// average (hat) or the Berezin transform (tilde).
enum class Transform { hat, tilde };

inline const char* transform_name(Transform t) {
  return t == Transform::hat ? "hat" : "tilde";
}

inline complexd transform_value(const Symbol& f, const Point& z, Transform which,
                                const QuadratureConfig& cfg = {}) {
  return which == Transform::hat ? box_average(f, z, cfg) : berezin_symbol(f, z, cfg);
}

// The radial ladder standing in for "circles sufficiently close to 1".
inline std::vector<double> ladder_radii() { return {0.9, 0.95, 0.99, 0.995, 0.999}; }

// ---------------------------------------------------------------------------
// Cluster sets: values of f-hat or f-tilde on sampled circles.

struct ClusterSet {
  Transform which = Transform::hat;
  std::vector<double> radii;
  std::vector<double> angles;
  std::vector<std::vector<complexd>> values;  // [radius][angle]
};

inline ClusterSet cluster_set(const Symbol& f, const std::vector<double>& radii,
                              int n_angles, Transform which,
                              const QuadratureConfig& cfg = {}, int threads = 1) {
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw BadParameters("cluster_set: radii must lie in (0,1)");
  }
  ClusterSet cs;
  cs.which = which;
  cs.radii = radii;
  cs.angles.resize(n_angles);
  for (int j = 0; j < n_angles; ++j) cs.angles[j] = two_pi * j / n_angles;
  cs.values.assign(radii.size(), std::vector<complexd>(n_angles));
  if (f.radial) {
    std::vector<complexd> per_radius(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
      per_radius[i] = transform_value(f, Point{radii[i], 0.0}, which, cfg);
    });
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (int j = 0; j < n_angles; ++j) cs.values[i][j] = per_radius[i];
    }
    return cs;
  }
  std::vector<complexd> flat(radii.size() * static_cast<std::size_t>(n_angles));
  parallel_for(flat.size(), threads, [&](std::size_t k) {
    std::size_t i = k / n_angles;
    std::size_t j = k % n_angles;
    flat[k] = transform_value(f, Point{radii[i], cs.angles[j]}, which, cfg);
  });
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (int j = 0; j < n_angles; ++j) cs.values[i][j] = flat[i * n_angles + j];
  }
  return cs;
}

inline double cluster_max_modulus(const ClusterSet& cs, std::size_t radius_index) {
  double best = 0.0;
  for (const auto& v : cs.values[radius_index]) best = std::max(best, std::abs(v));
  return best;
}

// ---------------------------------------------------------------------------
// Essential norm: max |f-hat| on the outermost sampled radius, with the
// per-radius trend kept for the report.
struct EssentialNormReport {
  std::vector<double> radii;
  std::vector<double> max_hat;  // per radius
  double value = 0.0;           // outermost radius
};

inline EssentialNormReport essential_norm_report(const Symbol& f,
                                                 const std::vector<double>& radii,
                                                 int n_angles,
                                                 const QuadratureConfig& cfg = {},
                                                 int threads = 1) {
  ClusterSet cs = cluster_set(f, radii, n_angles, Transform::hat, cfg, threads);
  EssentialNormReport rep;
  rep.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double m = cluster_max_modulus(cs, i);
    if (!std::isfinite(m)) {
      throw BadParameters("essential_norm: f-hat not bounded on the lattice");
    }
    rep.max_hat.push_back(m);
  }
  rep.value = rep.max_hat.back();
  return rep;
}

inline double essential_norm_estimate(const Symbol& f, const std::vector<double>& radii,
                                      int n_angles, const QuadratureConfig& cfg = {},
                                      int threads = 1) {
  return essential_norm_report(f, radii, n_angles, cfg, threads).value;
}

// ---------------------------------------------------------------------------
// Winding numbers on sampled closed curves.

struct CurveSamples {
  double r = 0.0;  // circle radius the trace was sampled on
  std::vector<double> angles;
  std::vector<complexd> values;
  Transform which = Transform::hat;
};

inline CurveSamples sample_curve(const Symbol& f, double r, int n, Transform which,
                                 const QuadratureConfig& cfg = {}, int threads = 1) {
  if (!(r > 0.0 && r < 1.0)) throw BadParameters("sample_curve: r must lie in (0,1)");
  CurveSamples c;
  c.r = r;
  c.which = which;
  c.angles.resize(n);
  c.values.resize(n);
  for (int j = 0; j < n; ++j) c.angles[j] = two_pi * j / n;
  if (f.radial) {
    complexd v = transform_value(f, Point{r, 0.0}, which, cfg);
    for (int j = 0; j < n; ++j) c.values[j] = v;
    return c;
  }
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t j) {
    c.values[j] = transform_value(f, Point{r, c.angles[j]}, which, cfg);
  });
  return c;
}

// (1/2pi) sum of principal-branch argument increments, rounded. Demands the
// curve stay off 0 and the sampling resolve every increment below pi/2.
inline int winding_number(const CurveSamples& c) {
  const std::size_t n = c.values.size();
  if (n < 2) throw BadParameters("winding_number: need at least 2 samples");
  for (const auto& v : c.values) {
    if (std::abs(v) <= thresholds::curve_zero_eps) {
      throw CurveThroughZero("winding_number: sample within eps of 0");
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    complexd ratio = c.values[(k + 1) % n] / c.values[k];
    double inc = std::arg(ratio);
    if (std::abs(inc) >= pi / 2.0) {
      throw UnderResolved("winding_number: angular increment >= pi/2, refine sampling");
    }
    total += inc;
  }
  total /= two_pi;
  int w = static_cast<int>(std::lround(total));
  if (std::abs(total - w) >= 0.05) {
    throw UnderResolved("winding_number: rounding residual " +
                        std::to_string(std::abs(total - w)) + " too large");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Fredholm index at one radius: -winding of the sampled extension, with
// automatic sample doubling while increments are under-resolved.
inline int fredholm_index(const Symbol& f, double r, Transform which,
                          const QuadratureConfig& cfg = {}, int n0 = 256,
                          int threads = 1) {
  int n = n0;
  for (int attempt = 0; attempt < 5; ++attempt, n *= 2) {
    CurveSamples c = sample_curve(f, r, n, which, cfg, threads);
    double mn = 1e300;
    for (const auto& v : c.values) mn = std::min(mn, std::abs(v));
    if (mn <= thresholds::fredholm_margin) {
      throw NotFredholmError("fredholm_index: curve within margin of 0 at r = " +
                             std::to_string(r));
    }
    try {
      return -winding_number(c);
    } catch (const UnderResolved&) {
      if (attempt == 4) throw;
    }
  }
  throw UnderResolved("fredholm_index: sampling cap reached");
}

struct IndexReport {
  Transform which = Transform::hat;
  std::vector<double> radii;
  std::vector<std::optional<int>> indices;  // nullopt: margin hit at that radius
  int index = 0;
  bool stable = false;
};

// Index over the radial ladder. The two outermost radii decide: both under
// the margin means not Fredholm; disagreement means the ladder has not
// settled.
inline IndexReport fredholm_index_ladder(const Symbol& f, Transform which,
                                         const QuadratureConfig& cfg = {},
                                         const std::vector<double>& radii = ladder_radii(),
                                         int threads = 1) {
  if (radii.size() < 2) throw BadParameters("fredholm_index_ladder: need >= 2 radii");
  IndexReport rep;
  rep.which = which;
  rep.radii = radii;
  for (double r : radii) {
    try {
      rep.indices.push_back(fredholm_index(f, r, which, cfg, 256, threads));
    } catch (const NotFredholmError&) {
      rep.indices.push_back(std::nullopt);
    }
  }
  const auto& last = rep.indices[rep.indices.size() - 1];
  const auto& prev = rep.indices[rep.indices.size() - 2];
  if (!last && !prev) {
    throw NotFredholmError(
        "fredholm_index_ladder: extension within margin of 0 on the outer radii");
  }
  if (last && prev && *last == *prev) {
    rep.index = *last;
    rep.stable = true;
    return rep;
  }
  throw UnstableIndex("fredholm_index_ladder: outer radii disagree");
}

// ---------------------------------------------------------------------------
// Block symbols: Fredholm iff the determinant of the entrywise Berezin
// matrix stays away from 0 near the boundary.
struct BlockFredholmReport {
  bool fredholm = false;
  double margin = 0.0;  // min |det| over the outermost two radii
  std::vector<double> radii_used;
  std::vector<std::string> warnings;
};

inline BlockFredholmReport block_fredholm_check(const MatrixSymbol& F,
                                                const std::vector<double>& radii,
                                                int n_angles,
                                                const QuadratureConfig& cfg = {},
                                                int threads = 1) {
  if (F.n < 1) throw BadParameters("block_fredholm_check: empty block symbol");
  if (radii.size() < 2) throw BadParameters("block_fredholm_check: need >= 2 radii");
  BlockFredholmReport rep;
  rep.radii_used = {radii[radii.size() - 2], radii[radii.size() - 1]};

  // advisory entry checks
  for (std::size_t j = 0; j < F.n; ++j) {
    for (std::size_t k = 0; k < F.n; ++k) {
      const Symbol& e = F.at(j, k);
      double hat99 = std::abs(box_average(e, Point{0.99, 0.0}, cfg));
      if (!std::isfinite(hat99) || hat99 > 1e3) {
        rep.warnings.push_back("entry (" + std::to_string(j) + "," +
                               std::to_string(k) + "): f-hat large on the lattice");
      }
      double b1 = bwmo_local(e, Point{0.9, 0.0}, GridSpec{16, 16}, cfg, false);
      double b2 = bwmo_local(e, Point{0.99, 0.0}, GridSpec{16, 16}, cfg, false);
      if (b2 > std::max(10.0 * std::max(b1, thresholds::ratio_floor), 1.0)) {
        rep.warnings.push_back("entry (" + std::to_string(j) + "," +
                               std::to_string(k) + "): weak oscillation growing");
      }
    }
  }

  // per-(entry, radius) cache for radial entries
  std::map<std::pair<std::size_t, double>, complexd> radial_cache;
  auto entry_value = [&](std::size_t idx, double r, double a) {
    const Symbol& e = F.entries[idx];
    if (e.radial) {
      auto key = std::make_pair(idx, r);
      auto it = radial_cache.find(key);
      if (it != radial_cache.end()) return it->second;
      complexd v = berezin_symbol(e, Point{r, 0.0}, cfg);
      radial_cache.emplace(key, v);
      return v;
    }
    return berezin_symbol(e, Point{r, a}, cfg);
  };

  double min_det = 1e300;
  for (double r : rep.radii_used) {
    for (int j = 0; j < n_angles; ++j) {
      double a = two_pi * j / n_angles;
      ComplexMatrix B(F.n);
      for (std::size_t p = 0; p < F.n; ++p) {
        for (std::size_t q = 0; q < F.n; ++q) {
          B(p, q) = entry_value(p * F.n + q, r, a);
        }
      }
      min_det = std::min(min_det, std::abs(determinant(B)));
    }
  }
  (void)threads;
  rep.margin = min_det;
  rep.fredholm = min_det > thresholds::det_margin;
  return rep;
}

// ---------------------------------------------------------------------------
// Bundled spectrum study for one symbol.
struct SpectrumReport {
  std::size_t N = 0;
  std::vector<complexd> eigenvalues;
  ClusterSet cluster;
  EssentialNormReport essential;
};

inline SpectrumReport spectrum_report(const Symbol& f, std::size_t N,
                                      const std::vector<double>& radii,
                                      int n_angles, const QuadratureConfig& cfg = {},
                                      int threads = 1) {
  if (N > 512) throw BadParameters("spectrum_report: N must be <= 512");
  SpectrumReport rep;
  rep.N = N;
  ComplexMatrix T = toeplitz_matrix(f, N, cfg);
  rep.eigenvalues = eigenvalues(T);
  rep.cluster = cluster_set(f, radii, n_angles, Transform::hat, cfg, threads);
  rep.essential = essential_norm_report(f, radii, n_angles, cfg, threads);
  return rep;
}

}  // namespace bergmanosc
