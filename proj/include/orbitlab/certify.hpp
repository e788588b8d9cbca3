/**
 * @file certify.hpp
 * @brief Certification pipeline and machine-readable certificates.
 *
 * A run produces one JSON certificate per scenario plus sidecar CSV curves
 * (orbit ratios, dynamical scan, per-lambda rows) referenced by relative
 * path. Certificates are byte-stable for identical inputs: no timestamps,
 * sorted keys, explicit seeds.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "orbitlab/interp.hpp"
#include "orbitlab/kato.hpp"
#include "orbitlab/landau.hpp"
#include "orbitlab/scenario.hpp"

namespace orbitlab {

enum class Verdict { certified, hypothesis_failed, violation, input_error };

std::string_view to_string(Verdict v);

/// 0 certified, 1 hypothesis_failed, 2 violation, 3 input_error.
int exit_code_for(Verdict v);

enum class CertifyMode { landau, kato, both };

CertifyMode certify_mode_from_string(std::string_view name);

struct RunOptions {
  CertifyMode mode = CertifyMode::both;
  double tail_tol = 1e-8;
  double ineq_tol = 1e-9;
  int grid_points = 2000;
  double kato_t_max = 50.0;
  double kato_tol = 1e-10;
};

/// Inequality margins; NaN where not applicable.
struct Margins {
  double dynamical_min;
  double landau;        // 4ac - b^2
  double direct;        // 2 sqrt(ac)
  double interpolated;  // c - (a+c) g^{-1}((c-a)/(c+a)), needs a <= c
  double kato;          // 2 ||f|| ||A^2 f|| - ||Af||^2, l2 only
};

struct Certificate {
  int schema_version = 1;
  Scenario scenario;
  CertifyMode mode = CertifyMode::both;
  RunOptions options;
  AdmissibilityReport phi_admissibility;
  std::optional<OrbitalCheckReport> orbital;
  std::optional<DynamicalScan> scan;
  std::optional<OrderingReport> ordering;
  std::optional<KatoCertificate> kato;
  std::optional<LandauQuantities> quantities;
  Margins margins;
  Verdict verdict = Verdict::input_error;
  std::string error;  // populated for input_error
};

/// Runs phi validation, orbital/contractivity checks, quantities, and all
/// applicable margins. A failed orbital or contractivity family yields
/// hypothesis_failed (margins still reported, informationally); a negative
/// margin beyond tolerance on a hypothesis-certified instance yields
/// violation, which signals an internal bug. Requesting kato checks under
/// l1/linf is an input error.
Certificate run_certify(const Scenario& scenario, const RunOptions& options = {});

nlohmann::json certificate_to_json(const Certificate& cert);

/// Writes <name>.cert.json plus sidecar CSVs into `dir`; returns the
/// certificate path.
std::filesystem::path write_certificate(const Certificate& cert,
                                        const std::filesystem::path& dir);

/// Human-readable multi-line summary for the CLI.
std::string render_summary(const Certificate& cert);

}  // namespace orbitlab
