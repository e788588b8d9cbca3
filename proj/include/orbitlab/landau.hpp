/**
 * @file landau.hpp
 * @brief Orbital decay certification and the resulting operator-norm
 *        inequalities for the localized quantities a, b, c.
 *
 * The two orbital bounds ||e^{tA}f|| <= phi(omega t)||f|| and
 * ||e^{tA}A^2 f|| <= phi''(omega t)||A^2 f|| are certified on a finite time
 * grid with an explicit horizon policy; the universal statements are the
 * theorems, the artifact checks grids and records them.
 */
#pragma once

#include <span>
#include <vector>

#include "orbitlab/comparison_function.hpp"
#include "orbitlab/operators.hpp"

namespace orbitlab {

/// Time-grid policy for orbit checks: {0} plus `points` geometric values
/// from t_min_scale/omega up to the horizon T, where T is the smallest time
/// with phi(omega T) <= tail_tol, capped at cap_scale/omega (and at the
/// sample range for custom phi).
struct TimeGridPolicy {
  double tail_tol = 1e-8;
  double t_min_scale = 1e-4;
  double cap_scale = 1e5;
  int points = 2000;
};

struct OrbitalHypothesis {
  Generator generator;
  StateVector f;
  double omega = 1.0;
  ComparisonFunction phi = ComparisonFunction::exponential();
  NormKind norm = NormKind::l2;
  TimeGridPolicy grid;
};

struct RatioCurve {
  std::vector<double> t;
  std::vector<double> ratio;
  double max_ratio = 0.0;
  double argmax_t = 0.0;
};

struct OrbitalCheckReport {
  RatioCurve f_orbit;       // ||e^{tA}f|| / (phi(omega t) ||f||)
  RatioCurve second_orbit;  // ||e^{tA}A^2f|| / (phi''(omega t) ||A^2f||)
  bool degenerate_second = false;  // A^2 f = 0: vacuous pass
  bool pass_f = false;
  bool pass_second = false;
  bool pass = false;
  bool refined = false;   // near-boundary grid refinement was triggered
  double horizon = 0.0;   // T actually used
  double tolerance = 1e-10;
};

/// Evaluates both orbit ratios on the hypothesis grid. Both ratios equal 1
/// exactly at t = 0; pass means max ratio <= 1 + 1e-10. If any ratio
/// exceeds 1 - 1e-4 the grid is refined 10x around the argmax before the
/// verdict. The check is advisory beyond the recorded horizon.
OrbitalCheckReport check_orbital(const OrbitalHypothesis& hyp);

/// a = ||f||, b = ||Af||/omega, c = ||A^2 f||/omega^2.
struct LandauQuantities {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double omega = 1.0;
  NormKind norm = NormKind::l2;
};

LandauQuantities compute_abc(const Generator& a, const StateVector& f,
                             double omega, NormKind kind);

/// D(s) = phi(s)(a + c) + s(c - b) + (a - c) evaluated on a grid.
/// D(0) = 2a always; on certified instances min D >= -1e-9 (a + c).
struct DynamicalScan {
  std::vector<double> s;
  std::vector<double> value;
  double min_value = 0.0;
  double argmin_s = 0.0;
};

DynamicalScan dynamical_scan(const LandauQuantities& q, const ComparisonFunction& phi,
                             std::span<const double> s_grid);

/// 2001 points: linear [0, 10] union geometric [1e-3, 10 + 4 sqrt(c/a)].
std::vector<double> default_s_grid(const LandauQuantities& q);

/// 4ac - b^2; >= -1e-9 ac on certified instances.
double landau_margin(const LandauQuantities& q);

/// Minimizing 2/s + s c' / 2 (c' = c/a) gives b <= 2 sqrt(ac) at
/// s* = 2 / sqrt(c/a).
struct DirectBound {
  double s_star = 0.0;
  double bound = 0.0;
  bool degenerate = false;   // c = 0
  bool consistent = true;    // false when c = 0 but b > 0
};

DirectBound direct_bound(const LandauQuantities& q);

/// a <= b <= c, asserted only for exponential phi on certified instances;
/// informational otherwise. Violations scaled against a + c.
struct OrderingReport {
  bool a_le_b = false;
  bool b_le_c = false;
  double ab_violation = 0.0;  // max(0, a - b)
  double bc_violation = 0.0;  // max(0, b - c)
  bool assertive = false;     // phi was exponential
  bool pass = false;
};

OrderingReport ordering_check(const LandauQuantities& q, PhiKind phi_kind);

}  // namespace orbitlab
