/**
 * @file oracles.hpp
 * @brief Test-only reference implementations, kept independent of the
 *        library code paths they are used to check.
 *
 * Nothing here may call into orbitlab internals beyond plain data types:
 * quadrature is re-derived from scratch, eigenvalues come from a Jacobi
 * sweep, derivatives from central differences, and the compensated
 * double-double arithmetic exists to evaluate algebraic identities beyond
 * double roundoff.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Composite Simpson quadrature (scalar)
// ---------------------------------------------------------------------------

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  if (panels <= 0 || panels % 2 != 0)
    throw std::invalid_argument("oracle::simpson: even panel count required");
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int j = 1; j < panels; ++j) sum += (j % 2 == 1 ? 4.0 : 2.0) * f(a + j * h);
  return sum * h / 3.0;
}

// ---------------------------------------------------------------------------
// Central finite differences
// ---------------------------------------------------------------------------

inline double central_diff1(const std::function<double(double)>& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline double central_diff2(const std::function<double(double)>& f, double t, double h) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

// ---------------------------------------------------------------------------
// Jacobi eigenvalue sweep for real symmetric matrices
// ---------------------------------------------------------------------------

inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  return eig;
}

// ---------------------------------------------------------------------------
// Double-double compensated arithmetic (enough for polynomial identities)
// ---------------------------------------------------------------------------

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD dd_from(double x) { return {x, 0.0}; }

inline DD dd_two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD dd_two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = dd_two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  const DD t = dd_two_sum(s.hi, s.lo);
  return t;
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, {-b.hi, -b.lo}); }

inline DD dd_mul(DD a, DD b) {
  DD p = dd_two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_two_sum(p.hi, p.lo);
}

// ---------------------------------------------------------------------------
// Deterministic test RNG (raw-bit uniform, independent of <random> dists)
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed == 0 ? 0x9e3779b97f4a7c15ull : seed) {}

  std::uint64_t bits() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return (bits() >> 11) * 0x1.0p-53; }          // [0, 1)
  double sym() { return 2.0 * uniform() - 1.0; }                   // [-1, 1)
  double in(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::complex<double> complex_sym() { return {sym(), sym()}; }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Dense-grid minimizer oracle
// ---------------------------------------------------------------------------

struct GridMin {
  double argmin = 0.0;
  double value = 0.0;
};

inline GridMin grid_minimize(const std::function<double(double)>& f, double lo, double hi,
                             int points) {
  GridMin best{lo, f(lo)};
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = f(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

inline GridMin grid_maximize(const std::function<double(double)>& f, double lo, double hi,
                             int points) {
  GridMin best{lo, f(lo)};
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

// Monotone bisection solve of f(x) = y on [lo, hi], f increasing.
inline double bisect_increasing(const std::function<double(double)>& f, double y,
                                double lo, double hi, int iterations = 200) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
