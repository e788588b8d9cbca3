#include "orbitlab/landau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbitlab {

namespace {

constexpr double kPassTol = 1e-10;
constexpr double kRefineTrigger = 1e-4;  // refine when max ratio > 1 - this

// Smallest s with phi(s) <= tail, by bisection (phi is decreasing), capped
// at s_cap and at the sample range for custom functions.
double horizon_s(const ComparisonFunction& phi, double tail, double s_cap) {
  const double s_hi = std::min(s_cap, phi.max_t());
  if (phi.value(s_hi) > tail) return s_hi;  // cap reached; advisory beyond
  double lo = 0.0, hi = s_hi;
  for (int it = 0; it < 200 && (hi - lo) > 1e-9 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi.value(mid) <= tail)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  std::vector<double> g;
  g.reserve(points);
  if (points == 1 || hi <= lo) {
    g.push_back(hi);
    return g;
  }
  const double r = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) g.push_back(lo * std::exp(r * i));
  g.back() = hi;
  return g;
}

struct OrbitEval {
  const Generator* a = nullptr;
  const StateVector* v = nullptr;
  double v_norm = 0.0;
  NormKind kind = NormKind::l2;

  double ratio_at(double t, double envelope) const {
    // An orbit that overflows has certainly left any admissible envelope;
    // report the ratio as infinite rather than aborting the whole check.
    try {
      const double orbit = norm(expm_apply(*a, t, *v), kind);
      const double bound = envelope * v_norm;
      if (bound == 0.0) return orbit == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return orbit / bound;
    } catch (const std::overflow_error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

void scan_curve(RatioCurve& curve, const OrbitEval& eval,
                const std::vector<double>& grid, auto&& envelope) {
  curve.t = grid;
  curve.ratio.resize(grid.size());
  curve.max_ratio = 0.0;
  curve.argmax_t = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    curve.ratio[i] = eval.ratio_at(grid[i], envelope(grid[i]));
    if (curve.ratio[i] > curve.max_ratio) {
      curve.max_ratio = curve.ratio[i];
      curve.argmax_t = grid[i];
    }
  }
}

// Inserts a 10x finer linear window around the argmax and re-scans.
void refine_curve(RatioCurve& curve, const OrbitEval& eval, auto&& envelope) {
  const auto it = std::lower_bound(curve.t.begin(), curve.t.end(), curve.argmax_t);
  const std::size_t idx = static_cast<std::size_t>(it - curve.t.begin());
  const double lo = idx > 0 ? curve.t[idx - 1] : curve.t[idx];
  const double hi = idx + 1 < curve.t.size() ? curve.t[idx + 1] : curve.t[idx];
  if (!(hi > lo)) return;
  std::vector<double> extra;
  for (int k = 1; k < 20; ++k) extra.push_back(lo + (hi - lo) * k / 20.0);

  std::vector<double> merged_t;
  std::vector<double> merged_r;
  merged_t.reserve(curve.t.size() + extra.size());
  std::size_t i = 0, j = 0;
  auto push = [&](double t, double r) {
    merged_t.push_back(t);
    merged_r.push_back(r);
    if (r > curve.max_ratio) {
      curve.max_ratio = r;
      curve.argmax_t = t;
    }
  };
  while (i < curve.t.size() || j < extra.size()) {
    if (j == extra.size() || (i < curve.t.size() && curve.t[i] <= extra[j])) {
      push(curve.t[i], curve.ratio[i]);
      ++i;
    } else {
      push(extra[j], eval.ratio_at(extra[j], envelope(extra[j])));
      ++j;
    }
  }
  curve.t = std::move(merged_t);
  curve.ratio = std::move(merged_r);
}

}  // namespace

OrbitalCheckReport check_orbital(const OrbitalHypothesis& hyp) {
  if (!(hyp.omega > 0.0)) throw std::invalid_argument("check_orbital: omega must be > 0");
  if (hyp.f.is_zero()) throw std::invalid_argument("check_orbital: f must be nonzero");

  OrbitalCheckReport r;
  r.tolerance = kPassTol;
  const double s_T = horizon_s(hyp.phi, hyp.grid.tail_tol, hyp.grid.cap_scale);
  r.horizon = s_T / hyp.omega;

  std::vector<double> grid;
  grid.reserve(hyp.grid.points + 1);
  grid.push_back(0.0);
  const double t_min = hyp.grid.t_min_scale / hyp.omega;
  for (double t : geometric_grid(t_min, r.horizon, hyp.grid.points)) grid.push_back(t);

  const StateVector af = apply(hyp.generator, hyp.f);
  const StateVector a2f = apply(hyp.generator, af);

  OrbitEval eval_f{&hyp.generator, &hyp.f, norm(hyp.f, hyp.norm), hyp.norm};
  auto env_f = [&](double t) { return hyp.phi.value(hyp.omega * t); };
  scan_curve(r.f_orbit, eval_f, grid, env_f);

  const double a2f_norm = norm(a2f, hyp.norm);
  OrbitEval eval_2{&hyp.generator, &a2f, a2f_norm, hyp.norm};
  auto env_2 = [&](double t) { return hyp.phi.deriv2(hyp.omega * t); };
  if (a2f_norm == 0.0) {
    r.degenerate_second = true;  // 0/0 family: vacuously true
    r.second_orbit.t = grid;
    r.second_orbit.ratio.assign(grid.size(), 0.0);
  } else {
    scan_curve(r.second_orbit, eval_2, grid, env_2);
  }

  // Equality orbits sit exactly on the boundary; look closer before ruling.
  if (r.f_orbit.max_ratio > 1.0 - kRefineTrigger) {
    refine_curve(r.f_orbit, eval_f, env_f);
    r.refined = true;
  }
  if (!r.degenerate_second && r.second_orbit.max_ratio > 1.0 - kRefineTrigger) {
    refine_curve(r.second_orbit, eval_2, env_2);
    r.refined = true;
  }

  r.pass_f = r.f_orbit.max_ratio <= 1.0 + kPassTol;
  r.pass_second = r.degenerate_second || r.second_orbit.max_ratio <= 1.0 + kPassTol;
  r.pass = r.pass_f && r.pass_second;
  return r;
}

LandauQuantities compute_abc(const Generator& a, const StateVector& f, double omega,
                             NormKind kind) {
  if (f.is_zero()) throw std::invalid_argument("compute_abc: f must be nonzero");
  if (!(omega > 0.0)) throw std::invalid_argument("compute_abc: omega must be > 0");
  const StateVector af = apply(a, f);
  const StateVector a2f = apply(a, af);
  LandauQuantities q;
  q.a = norm(f, kind);
  q.b = norm(af, kind) / omega;
  q.c = norm(a2f, kind) / (omega * omega);
  q.omega = omega;
  q.norm = kind;
  return q;
}

DynamicalScan dynamical_scan(const LandauQuantities& q, const ComparisonFunction& phi,
                             std::span<const double> s_grid) {
  if (s_grid.empty()) throw std::invalid_argument("dynamical_scan: empty grid");
  if (s_grid.front() != 0.0)
    throw std::invalid_argument("dynamical_scan: grid must start at s = 0");
  DynamicalScan scan;
  scan.s.assign(s_grid.begin(), s_grid.end());
  scan.value.resize(s_grid.size());
  scan.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scan.s.size(); ++i) {
    const double s = scan.s[i];
    // Regrouped form of phi(s)(a+c) + s(c-b) + (a-c); at s = 0 it reduces
    // to 2a with no rounding, which D(0) = 2a tests rely on.
    const double p = phi.value(s);
    const double d = q.a * (p + 1.0) + q.c * (p - 1.0) + s * (q.c - q.b);
    scan.value[i] = d;
    if (d < scan.min_value) {
      scan.min_value = d;
      scan.argmin_s = s;
    }
  }
  return scan;
}

std::vector<double> default_s_grid(const LandauQuantities& q) {
  std::vector<double> g;
  g.reserve(2001);
  for (int i = 0; i <= 1000; ++i) g.push_back(10.0 * i / 1000.0);
  const double s_max = 10.0 + 4.0 * std::sqrt(std::max(q.c / q.a, 0.0));
  for (double s : geometric_grid(1e-3, s_max, 1000)) g.push_back(s);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

double landau_margin(const LandauQuantities& q) { return 4.0 * q.a * q.c - q.b * q.b; }

DirectBound direct_bound(const LandauQuantities& q) {
  DirectBound r;
  if (q.c == 0.0) {
    r.degenerate = true;
    r.s_star = std::numeric_limits<double>::quiet_NaN();
    if (q.b == 0.0) {
      r.bound = 0.0;
    } else {
      // b > 0 with c = 0 contradicts any certified hypothesis family.
      r.bound = std::numeric_limits<double>::quiet_NaN();
      r.consistent = false;
    }
    return r;
  }
  r.s_star = 2.0 / std::sqrt(q.c / q.a);
  r.bound = 2.0 * std::sqrt(q.a * q.c);
  return r;
}

OrderingReport ordering_check(const LandauQuantities& q, PhiKind phi_kind) {
  OrderingReport r;
  const double tol = 1e-9 * (q.a + q.c);
  r.ab_violation = std::max(0.0, q.a - q.b);
  r.bc_violation = std::max(0.0, q.b - q.c);
  r.a_le_b = q.a <= q.b + tol;
  r.b_le_c = q.b <= q.c + tol;
  r.assertive = phi_kind == PhiKind::exponential;
  r.pass = r.a_le_b && r.b_le_c;
  return r;
}

}  // namespace orbitlab
