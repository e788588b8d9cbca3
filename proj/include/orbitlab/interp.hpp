/**
 * @file interp.hpp
 * @brief g(x) = x(1 - log x), its numerical inverse, the interpolated bound
 *        b <= c - (a + c) g^{-1}((c - a)/(c + a)), and an exploratory scan
 *        of the localized quantities as omega decreases.
 */
#pragma once

#include <span>
#include <vector>

#include "orbitlab/landau.hpp"
#include "orbitlab/operators.hpp"

namespace orbitlab {

/// Bracketing bisection with guarded Newton acceleration. Newton steps are
/// accepted only inside the bracket and for x < 0.9; g'(x) = -log x
/// vanishes at 1, which defeats pure Newton near that endpoint.
struct GInverseSolver {
  double tolerance = 1e-12;  // on |g(x) - y|
  int max_iterations = 200;
  bool use_newton = true;
};

/// g(x) = x(1 - log x) on [0, 1], g(0) = 0. Strictly increasing, g(1) = 1.
double g_eval(double x);

/// Inverse of g on [0, 1]; endpoints return exactly without iterating.
double g_inverse(double y, const GInverseSolver& solver = {});

/// c - (a + c) g^{-1}((c - a)/(c + a)). Requires a <= c (guaranteed by the
/// ordering relation under exponential hypotheses); a > c is a hard error,
/// not a clamp.
double interpolated_bound(const LandauQuantities& q, const GInverseSolver& solver = {});

struct OmegaScanRow {
  double omega = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double interpolated = 0.0;  // NaN when a > c
  double direct = 0.0;        // 2 sqrt(a c)
  double ratio = 0.0;         // b^2 / (a c)
};

/// One row per omega, in input order. Exploratory output: no inequality is
/// asserted between the two bounds. Callers must pass omegas no larger than
/// the certified one (smaller omega weakens the orbital hypotheses).
std::vector<OmegaScanRow> omega_scan(const Generator& a, const StateVector& f,
                                     NormKind kind, std::span<const double> omegas);

/// CSV with header omega,a,b,c,interpolated_bound,direct_bound,ratio.
std::string omega_scan_csv(std::span<const OmegaScanRow> rows);

}  // namespace orbitlab
