#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bergmanosc {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr const char* version = "1.0.0";
inline constexpr const char* schema_version = "bergman-osc/1";

// Named error conditions surfaced by the library.
struct PointOutsideBox : std::runtime_error {
  explicit PointOutsideBox(const std::string& what) : std::runtime_error(what) {}
};
struct OrderViolation : std::runtime_error {
  explicit OrderViolation(const std::string& what) : std::runtime_error(what) {}
};
struct AreaRatioViolation : std::runtime_error {
  explicit AreaRatioViolation(const std::string& what) : std::runtime_error(what) {}
};
struct RootFindFailure : std::runtime_error {
  explicit RootFindFailure(const std::string& what) : std::runtime_error(what) {}
};
struct RefinementUnstable : std::runtime_error {
  explicit RefinementUnstable(const std::string& what) : std::runtime_error(what) {}
};
struct CurveThroughZero : std::runtime_error {
  explicit CurveThroughZero(const std::string& what) : std::runtime_error(what) {}
};
struct UnderResolved : std::runtime_error {
  explicit UnderResolved(const std::string& what) : std::runtime_error(what) {}
};
struct NotFredholmError : std::runtime_error {
  explicit NotFredholmError(const std::string& what) : std::runtime_error(what) {}
};
struct UnstableIndex : std::runtime_error {
  explicit UnstableIndex(const std::string& what) : std::runtime_error(what) {}
};
struct BadParameters : std::invalid_argument {
  explicit BadParameters(const std::string& what) : std::invalid_argument(what) {}
};
struct TailBoundExceeded : std::runtime_error {
  explicit TailBoundExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct TruncationWarning : std::runtime_error {
  explicit TruncationWarning(const std::string& what) : std::runtime_error(what) {}
};
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Reduce an angle to [0, 2*pi).
inline double reduce_angle(double phi) {
  double a = std::fmod(phi, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;  // fmod rounding at the seam
  return a;
}

// Deterministic parallel map: out[i] = fn(i) for i in [0, n).
// Every slot is written independently, so results are identical for any
// thread count; reductions are done by the caller in index order.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// FNV-1a, used to tag configurations in serialized reports.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bergmanosc
