#include "orbitlab/comparison_function.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace orbitlab {

namespace {

void require_nonneg(double t, const char* what) {
  if (!(t >= 0.0)) throw std::domain_error(std::string(what) + ": t must be >= 0");
}

// q(t) = 1 + t + t^2/2, the denominator of the quadratic-rational candidate.
double quad_q(double t) { return 1.0 + t + 0.5 * t * t; }

// ---------------------------------------------------------------------------
// Monotone cubic (Fritsch-Carlson) interpolation for sampled columns.
// ---------------------------------------------------------------------------

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0)
      s = 0.0;
    else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
      s = 3.0 * d0;
    return s;
  };
  d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double hermite_eval(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& d, double t) {
  // Locate the panel; callers guarantee x.front() <= t <= x.back().
  std::size_t lo = 0, hi = x.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (x[mid] <= t)
      lo = mid;
    else
      hi = mid;
  }
  const double h = x[hi] - x[lo];
  const double s = (t - x[lo]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y[lo] + h * h10 * d[lo] + h01 * y[hi] + h * h11 * d[hi];
}

}  // namespace

std::string_view to_string(PhiKind kind) {
  switch (kind) {
    case PhiKind::exponential: return "exponential";
    case PhiKind::quadratic_rational: return "quadratic-rational";
    case PhiKind::custom_sampled: return "custom-sampled";
  }
  return "exponential";
}

ComparisonFunction ComparisonFunction::exponential() {
  ComparisonFunction f;
  f.kind_ = PhiKind::exponential;
  f.name_ = "exp";
  return f;
}

ComparisonFunction ComparisonFunction::quadratic_rational() {
  ComparisonFunction f;
  f.kind_ = PhiKind::quadratic_rational;
  f.name_ = "quad";
  return f;
}

ComparisonFunction ComparisonFunction::from_samples(std::vector<PhiSample> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("custom phi: need at least two samples");
  if (samples.front().t != 0.0)
    throw std::invalid_argument("custom phi: samples must start at t = 0");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (!(samples[i].t < samples[i + 1].t))
      throw std::invalid_argument("custom phi: sample times must be strictly increasing");
  for (const auto& s : samples)
    if (!std::isfinite(s.t) || !std::isfinite(s.phi) || !std::isfinite(s.dphi) ||
        !std::isfinite(s.ddphi))
      throw std::invalid_argument("custom phi: samples must be finite");

  ComparisonFunction f;
  f.kind_ = PhiKind::custom_sampled;
  f.name_ = "custom";
  f.samples_ = std::move(samples);
  const std::size_t n = f.samples_.size();
  f.ts_.resize(n);
  f.phi_col_.resize(n);
  f.dphi_col_.resize(n);
  f.ddphi_col_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.ts_[i] = f.samples_[i].t;
    f.phi_col_[i] = f.samples_[i].phi;
    f.dphi_col_[i] = f.samples_[i].dphi;
    f.ddphi_col_[i] = f.samples_[i].ddphi;
  }
  f.slope_phi_ = pchip_slopes(f.ts_, f.phi_col_);
  f.slope_dphi_ = pchip_slopes(f.ts_, f.dphi_col_);
  f.slope_ddphi_ = pchip_slopes(f.ts_, f.ddphi_col_);
  return f;
}

ComparisonFunction ComparisonFunction::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("custom phi: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("custom phi: empty file " + path.string());
  auto strip = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  if (strip(line) != "t,phi,dphi,ddphi")
    throw std::invalid_argument("custom phi: expected header t,phi,dphi,ddphi in " +
                                path.string());
  std::vector<PhiSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    std::istringstream row(line);
    PhiSample s{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> s.t >> c1 >> s.phi >> c2 >> s.dphi >> c3 >> s.ddphi) || c1 != ',' ||
        c2 != ',' || c3 != ',')
      throw std::invalid_argument("custom phi: malformed row at line " +
                                  std::to_string(line_no) + " of " + path.string());
    samples.push_back(s);
  }
  auto f = from_samples(std::move(samples));
  f.name_ = "custom:" + path.string();
  return f;
}

ComparisonFunction ComparisonFunction::from_name(std::string_view name) {
  if (name == "exp") return exponential();
  if (name == "quad") return quadratic_rational();
  constexpr std::string_view kPrefix = "custom:";
  if (name.substr(0, kPrefix.size()) == kPrefix)
    return from_csv(std::filesystem::path(std::string(name.substr(kPrefix.size()))));
  throw std::invalid_argument("unknown comparison function: " + std::string(name));
}

double ComparisonFunction::max_t() const {
  if (kind_ == PhiKind::custom_sampled) return samples_.back().t;
  return std::numeric_limits<double>::infinity();
}

double ComparisonFunction::value(double t) const {
  require_nonneg(t, "phi");
  switch (kind_) {
    case PhiKind::exponential:
      return std::exp(-t);
    case PhiKind::quadratic_rational:
      return 1.0 / quad_q(t);
    case PhiKind::custom_sampled:
      if (t > ts_.back()) throw std::domain_error("phi: t beyond the custom sample range");
      return hermite_eval(ts_, phi_col_, slope_phi_, t);
  }
  return 0.0;
}

double ComparisonFunction::deriv(double t) const {
  require_nonneg(t, "phi'");
  switch (kind_) {
    case PhiKind::exponential:
      return -std::exp(-t);
    case PhiKind::quadratic_rational: {
      const double q = quad_q(t);
      return -(1.0 + t) / (q * q);
    }
    case PhiKind::custom_sampled:
      if (t > ts_.back()) throw std::domain_error("phi': t beyond the custom sample range");
      return hermite_eval(ts_, dphi_col_, slope_dphi_, t);
  }
  return 0.0;
}

double ComparisonFunction::deriv2(double t) const {
  require_nonneg(t, "phi''");
  switch (kind_) {
    case PhiKind::exponential:
      return std::exp(-t);
    case PhiKind::quadratic_rational: {
      // Quotient rule on 1/q with q'' = 1: phi'' = (2 q'^2 - q) / q^3.
      const double q = quad_q(t);
      const double qp = 1.0 + t;
      return (2.0 * qp * qp - q) / (q * q * q);
    }
    case PhiKind::custom_sampled:
      if (t > ts_.back()) throw std::domain_error("phi'': t beyond the custom sample range");
      return hermite_eval(ts_, ddphi_col_, slope_ddphi_, t);
  }
  return 0.0;
}

std::vector<double> uniform_grid(double t_max, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  if (!(t_max > 0.0)) throw std::invalid_argument("uniform_grid: t_max must be > 0");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = t_max * i / (points - 1);
  return g;
}

AdmissibilityReport validate_phi(const ComparisonFunction& phi,
                                 std::span<const double> grid) {
  static constexpr double kIdentityTol = 1e-10;
  static constexpr double kSignSlack = 1e-12;

  std::vector<double> own;
  if (phi.kind() == PhiKind::custom_sampled) {
    own.reserve(phi.samples().size());
    for (const auto& s : phi.samples()) own.push_back(s.t);
    grid = own;
  }
  if (grid.empty()) throw std::invalid_argument("validate_phi: grid must be nonempty");
  if (grid.front() != 0.0)
    throw std::invalid_argument("validate_phi: grid must start at t = 0");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] <= grid[i + 1]))
      throw std::invalid_argument("validate_phi: grid must be sorted");

  AdmissibilityReport r;
  r.value_at_zero.worst = std::abs(phi.value(0.0) - 1.0);
  r.value_at_zero.pass = r.value_at_zero.worst <= kIdentityTol;
  r.slope_at_zero.worst = std::abs(phi.deriv(0.0) + 1.0);
  r.slope_at_zero.pass = r.slope_at_zero.worst <= kIdentityTol;

  auto record = [](ConditionCheck& check, double violation, double t) {
    if (violation > check.worst) {
      check.worst = violation;
      check.at_t = t;
    }
  };
  double min_phi = std::numeric_limits<double>::infinity();
  double argmin_phi = 0.0;
  for (double t : grid) {
    const double v = phi.value(t);
    const double d1 = phi.deriv(t);
    const double d2 = phi.deriv2(t);
    record(r.decreasing, d1, t);                          // want phi' <= 0
    record(r.convex, -d2, t);                             // want phi'' >= 0
    record(r.majorized, v - (1.0 - t + 0.5 * t * t), t);  // want <= 0
    if (v < min_phi) {
      min_phi = v;
      argmin_phi = t;
    }
  }
  r.decreasing.pass = r.decreasing.worst <= kSignSlack;
  r.convex.pass = r.convex.worst <= kSignSlack;
  r.majorized.pass = r.majorized.worst <= kSignSlack;
  r.positive.pass = min_phi > 0.0;
  r.positive.worst = min_phi > 0.0 ? 0.0 : -min_phi;
  r.positive.at_t = argmin_phi;
  r.pass = r.value_at_zero.pass && r.slope_at_zero.pass && r.decreasing.pass &&
           r.convex.pass && r.majorized.pass && r.positive.pass;
  return r;
}

double remainder_kernel(const ComparisonFunction& phi, double omega, double t) {
  if (!(omega > 0.0)) throw std::invalid_argument("remainder_kernel: omega must be > 0");
  require_nonneg(t, "remainder_kernel");
  return (phi.value(omega * t) - 1.0) / (omega * omega) + t / omega;
}

}  // namespace orbitlab
