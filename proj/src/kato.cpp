#include "orbitlab/kato.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbitlab {

namespace {

StateVector shifted(const StateVector& af, const StateVector& f, double lambda) {
  StateVector g;
  g.entries.resize(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i)
    g.entries[i] = af.entries[i] + lambda * f.entries[i];
  return g;
}

std::vector<double> contractivity_grid(double t_min, double t_max, int points) {
  std::vector<double> grid;
  grid.reserve(points + 1);
  grid.push_back(0.0);
  const double r = std::log(t_max / t_min) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(t_min * std::exp(r * i));
  grid.back() = t_max;
  return grid;
}

}  // namespace

double lemma_identity_residual(const StateVector& f1, const StateVector& f2,
                               const StateVector& f3) {
  if (f1.dim() != f2.dim() || f2.dim() != f3.dim())
    throw std::invalid_argument("lemma_identity_residual: dimension mismatch");
  StateVector sum;
  sum.entries.resize(f1.dim());
  StateVector left;   // f1 + f2
  StateVector right;  // f2 + f3
  left.entries.resize(f1.dim());
  right.entries.resize(f1.dim());
  for (std::size_t i = 0; i < f1.dim(); ++i) {
    sum.entries[i] = f1.entries[i] + f2.entries[i] + f3.entries[i];
    left.entries[i] = f1.entries[i] + f2.entries[i];
    right.entries[i] = f2.entries[i] + f3.entries[i];
  }
  auto sq = [](const StateVector& v) {
    const double n = norm(v, NormKind::l2);
    return n * n;
  };
  const double lhs = sq(sum) + sq(f2);
  const double rhs = sq(f1) + sq(f3) + 2.0 * inner(left, right).real();
  return std::abs(lhs - rhs);
}

double restricted_dissipativity(const Generator& a, const StateVector& f, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("restricted_dissipativity: lambda must be > 0");
  const StateVector af = apply(a, f);
  const StateVector g = shifted(af, f, lambda);
  return inner(apply(a, g), g).real();
}

ContractivityCheck orbital_contractivity(const Generator& a, const StateVector& f,
                                         double lambda, std::span<const double> t_grid) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("orbital_contractivity: lambda must be > 0");
  const StateVector g = shifted(apply(a, f), f, lambda);
  ContractivityCheck check;
  const double g_norm = norm(g, NormKind::l2);
  if (g_norm == 0.0) {
    check.degenerate = true;  // f is an eigenvector for -lambda
    return check;
  }
  for (double t : t_grid) {
    double ratio;
    try {
      ratio = norm(expm_apply(a, t, g), NormKind::l2) / g_norm;
    } catch (const std::overflow_error&) {
      ratio = std::numeric_limits<double>::infinity();
    }
    if (ratio > check.max_ratio) {
      check.max_ratio = ratio;
      check.argmax_t = t;
    }
  }
  return check;
}

double lambda_inequality_margin(const Generator& a, const StateVector& f, double lambda) {
  if (!(lambda >= 0.0))
    throw std::invalid_argument("lambda_inequality_margin: lambda must be >= 0");
  const StateVector af = apply(a, f);
  const StateVector a2f = apply(a, af);
  const double nf = norm(f, NormKind::l2);
  const double naf = norm(af, NormKind::l2);
  const double na2f = norm(a2f, NormKind::l2);
  const double l2 = lambda * lambda;
  return na2f * na2f + l2 * l2 * nf * nf - l2 * naf * naf;
}

std::vector<double> default_lambda_grid(double lambda_star) {
  if (!(lambda_star > 0.0)) {
    // Degenerate probe (A^2 f = 0): fixed fallback coverage.
    return default_lambda_grid(1.0);
  }
  std::vector<double> grid(25);
  const double lo = lambda_star / 10.0;
  const double r = std::log(100.0) / 24.0;
  for (int i = 0; i < 25; ++i) grid[i] = lo * std::exp(r * i);
  grid[12] = lambda_star;  // pin the minimizer of the final optimization
  return grid;
}

KatoCertificate kato_certificate(const KatoProbe& probe) {
  if (probe.f.is_zero()) throw std::invalid_argument("kato_certificate: f must be nonzero");

  const Generator& a = probe.generator;
  const StateVector af = apply(a, probe.f);
  const StateVector a2f = apply(a, af);
  const double nf = norm(probe.f, NormKind::l2);
  const double naf = norm(af, NormKind::l2);
  const double na2f = norm(a2f, NormKind::l2);

  KatoCertificate cert;
  cert.tolerance = probe.tolerance;
  cert.lambda_star = std::sqrt(na2f / nf);
  cert.kato_margin = 2.0 * nf * na2f - naf * naf;
  cert.scale = 2.0 * nf * na2f + naf * naf;
  cert.t_grid = contractivity_grid(probe.t_min, probe.t_max, probe.grid_points);

  const std::vector<double> lambdas =
      probe.lambdas.empty() ? default_lambda_grid(cert.lambda_star) : probe.lambdas;

  // One orbit pair serves every lambda: e^{tA}(A+lambda)f = w(t) + lambda u(t)
  // with u = e^{tA}f and w = e^{tA}Af. Overflowing orbits count as infinite
  // ratios, failing contractivity instead of aborting.
  std::vector<StateVector> u_orbit, w_orbit;
  u_orbit.reserve(cert.t_grid.size());
  w_orbit.reserve(cert.t_grid.size());
  const std::size_t n = probe.f.dim();
  for (double t : cert.t_grid) {
    try {
      u_orbit.push_back(expm_apply(a, t, probe.f));
      w_orbit.push_back(expm_apply(a, t, af));
    } catch (const std::overflow_error&) {
      StateVector inf_vec;
      inf_vec.entries.assign(n, Complex(std::numeric_limits<double>::infinity(), 0.0));
      u_orbit.push_back(inf_vec);
      w_orbit.push_back(inf_vec);
    }
  }

  cert.contractivity_pass = true;
  for (double lambda : lambdas) {
    KatoLambdaRow row;
    row.lambda = lambda;
    const StateVector g = shifted(af, probe.f, lambda);
    const double g_norm = norm(g, NormKind::l2);
    if (g_norm == 0.0) {
      row.degenerate = true;
    } else {
      for (std::size_t i = 0; i < cert.t_grid.size(); ++i) {
        const StateVector orbit = shifted(w_orbit[i], u_orbit[i], lambda);
        const double ratio = norm(orbit, NormKind::l2) / g_norm;
        if (ratio > row.max_ratio) {
          row.max_ratio = ratio;
          row.argmax_t = cert.t_grid[i];
        }
      }
      if (row.max_ratio > 1.0 + cert.tolerance) cert.contractivity_pass = false;
    }
    row.dissipativity = restricted_dissipativity(a, probe.f, lambda);
    row.margin = lambda_inequality_margin(a, probe.f, lambda);
    cert.rows.push_back(row);
  }

  cert.margin_pass = cert.kato_margin >= -cert.tolerance * cert.scale;
  cert.certified = cert.contractivity_pass && cert.margin_pass;
  return cert;
}

}  // namespace orbitlab
