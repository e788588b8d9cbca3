/**
 * @file comparison_function.hpp
 * @brief Decay comparison functions: decreasing convex phi on [0, inf) with
 *        phi(0) = -phi'(0) = 1 and phi(t) <= 1 - t + t^2/2.
 *
 * Two built-in candidates: exp(-t) and 1/(1 + t + t^2/2). Custom functions
 * are given as sampled (t, phi, phi', phi'') rows and evaluated with
 * monotone cubic interpolation between samples; admissibility of a custom
 * function is only ever checked on its own sample grid.
 */
#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace orbitlab {

enum class PhiKind { exponential, quadratic_rational, custom_sampled };

std::string_view to_string(PhiKind kind);

struct PhiSample {
  double t;
  double phi;
  double dphi;
  double ddphi;
};

class ComparisonFunction {
 public:
  static ComparisonFunction exponential();
  static ComparisonFunction quadratic_rational();
  /// Samples must be sorted, start at t = 0, and contain at least two rows.
  static ComparisonFunction from_samples(std::vector<PhiSample> samples);
  /// CSV with header t,phi,dphi,ddphi.
  static ComparisonFunction from_csv(const std::filesystem::path& path);
  /// "exp" | "quad" | "custom:<path>"
  static ComparisonFunction from_name(std::string_view name);

  PhiKind kind() const { return kind_; }
  /// Short selector name ("exp", "quad", "custom:<path>").
  const std::string& name() const { return name_; }

  double value(double t) const;   // phi(t)
  double deriv(double t) const;   // phi'(t)
  double deriv2(double t) const;  // phi''(t)

  /// Largest t a custom function can be evaluated at; +inf for built-ins.
  double max_t() const;
  const std::vector<PhiSample>& samples() const { return samples_; }

 private:
  ComparisonFunction() = default;
  PhiKind kind_ = PhiKind::exponential;
  std::string name_ = "exp";
  std::vector<PhiSample> samples_;  // custom only; columns + slopes below
  std::vector<double> ts_, phi_col_, dphi_col_, ddphi_col_;
  std::vector<double> slope_phi_, slope_dphi_, slope_ddphi_;
};

struct ConditionCheck {
  bool pass = true;
  double worst = 0.0;  // worst violation magnitude (0 when clean)
  double at_t = 0.0;
};

struct AdmissibilityReport {
  ConditionCheck value_at_zero;  // |phi(0) - 1| <= 1e-10
  ConditionCheck slope_at_zero;  // |phi'(0) + 1| <= 1e-10
  ConditionCheck decreasing;     // phi'(t) <= slack
  ConditionCheck convex;         // phi''(t) >= -slack
  ConditionCheck majorized;      // phi(t) <= 1 - t + t^2/2 + slack
  ConditionCheck positive;       // phi(t) > 0
  bool pass = false;
};

/// Checks the admissibility conditions on the given grid (sorted, nonempty,
/// containing 0). Custom-sampled functions are checked on their own sample
/// grid instead. Identity checks at 1e-10 absolute, sign checks with 1e-12
/// slack.
AdmissibilityReport validate_phi(const ComparisonFunction& phi,
                                 std::span<const double> grid);

/// Convenience: uniform grid of `points` values on [0, t_max].
std::vector<double> uniform_grid(double t_max, int points);

/// Closed form of int_0^t (t - tau) phi''(omega tau) dtau, namely
/// (phi(omega t) - 1)/omega^2 + t/omega. Nonnegative; omega must be > 0.
double remainder_kernel(const ComparisonFunction& phi, double omega, double t);

}  // namespace orbitlab
