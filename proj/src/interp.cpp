#include "orbitlab/interp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace orbitlab {

double g_eval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("g: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  return x * (1.0 - std::log(x));
}

double g_inverse(double y, const GInverseSolver& solver) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("g_inverse: y must lie in [0, 1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;  // g'(1) = 0: return the endpoint, do not iterate

  double lo = 0.0, hi = 1.0;
  double x = 0.5;
  for (int it = 0; it < solver.max_iterations; ++it) {
    const double gx = g_eval(x);
    const double err = gx - y;
    if (std::abs(err) <= solver.tolerance) return x;
    if (err < 0.0)
      lo = x;
    else
      hi = x;

    double next = 0.5 * (lo + hi);
    if (solver.use_newton && x > 0.0 && x < 0.9) {
      const double slope = -std::log(x);  // g'(x)
      if (slope > 0.0) {
        const double newton = x - err / slope;
        if (newton > lo && newton < hi) next = newton;
      }
    }
    x = next;
  }
  return x;
}

double interpolated_bound(const LandauQuantities& q, const GInverseSolver& solver) {
  if (!(q.a > 0.0)) throw std::invalid_argument("interpolated_bound: a must be > 0");
  if (q.a > q.c)
    throw std::domain_error("interpolated_bound: requires a <= c (see ordering check)");
  if (q.a == q.c) return q.c;  // g^{-1}(0) = 0
  const double y = (q.c - q.a) / (q.c + q.a);
  return q.c - (q.a + q.c) * g_inverse(y, solver);
}

std::vector<OmegaScanRow> omega_scan(const Generator& a, const StateVector& f,
                                     NormKind kind, std::span<const double> omegas) {
  if (omegas.empty()) throw std::invalid_argument("omega_scan: empty omega list");
  const double nf = norm(f, kind);
  if (nf == 0.0) throw std::invalid_argument("omega_scan: f must be nonzero");
  const StateVector af = apply(a, f);
  const StateVector a2f = apply(a, af);
  const double naf = norm(af, kind);
  const double na2f = norm(a2f, kind);

  std::vector<OmegaScanRow> rows;
  rows.reserve(omegas.size());
  for (double w : omegas) {
    if (!(w > 0.0)) throw std::invalid_argument("omega_scan: omegas must be > 0");
    OmegaScanRow row;
    row.omega = w;
    row.a = nf;
    row.b = naf / w;
    row.c = na2f / (w * w);
    LandauQuantities q{row.a, row.b, row.c, w, kind};
    row.interpolated = row.a <= row.c ? interpolated_bound(q)
                                      : std::numeric_limits<double>::quiet_NaN();
    row.direct = 2.0 * std::sqrt(row.a * row.c);
    row.ratio = row.c > 0.0 ? row.b * row.b / (row.a * row.c)
                            : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

std::string omega_scan_csv(std::span<const OmegaScanRow> rows) {
  std::string out = "omega,a,b,c,interpolated_bound,direct_bound,ratio\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.omega, r.a, r.b, r.c, r.interpolated, r.direct, r.ratio);
    out += line;
  }
  return out;
}

}  // namespace orbitlab
