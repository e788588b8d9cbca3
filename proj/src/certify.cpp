#include "orbitlab/certify.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace orbitlab {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sanitize(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
  return out;
}

json condition_to_json(const ConditionCheck& c) {
  return {{"pass", c.pass}, {"worst", c.worst}, {"at_t", c.at_t}};
}

json admissibility_to_json(const AdmissibilityReport& r) {
  return {{"pass", r.pass},
          {"value_at_zero", condition_to_json(r.value_at_zero)},
          {"slope_at_zero", condition_to_json(r.slope_at_zero)},
          {"decreasing", condition_to_json(r.decreasing)},
          {"convex", condition_to_json(r.convex)},
          {"majorized", condition_to_json(r.majorized)},
          {"positive", condition_to_json(r.positive)}};
}

json curve_to_json(const RatioCurve& c) {
  return {{"max_ratio", c.max_ratio}, {"argmax_t", c.argmax_t},
          {"points", c.t.size()}};
}

std::string format_row(const char* fmt, auto... args) {
  char buf[320];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::hypothesis_failed: return "hypothesis_failed";
    case Verdict::violation: return "violation";
    case Verdict::input_error: return "input_error";
  }
  return "input_error";
}

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::certified: return 0;
    case Verdict::hypothesis_failed: return 1;
    case Verdict::violation: return 2;
    case Verdict::input_error: return 3;
  }
  return 3;
}

CertifyMode certify_mode_from_string(std::string_view name) {
  if (name == "landau") return CertifyMode::landau;
  if (name == "kato") return CertifyMode::kato;
  if (name == "both") return CertifyMode::both;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

Certificate run_certify(const Scenario& scenario, const RunOptions& options) {
  Certificate cert;
  cert.scenario = scenario;
  cert.mode = options.mode;
  cert.options = options;
  cert.margins = {kNaN, kNaN, kNaN, kNaN, kNaN};

  bool hypothesis_failed = false;
  bool violation = false;

  try {
    if (scenario.f.is_zero()) throw std::invalid_argument("scenario: f must be nonzero");
    if (!(scenario.omega > 0.0))
      throw std::invalid_argument("scenario: omega must be > 0");

    const ComparisonFunction phi = ComparisonFunction::from_name(scenario.phi_name);
    {
      const double t_max = std::min(100.0, phi.max_t());
      cert.phi_admissibility = validate_phi(phi, uniform_grid(t_max, 1001));
    }
    if (!cert.phi_admissibility.pass) {
      cert.verdict = Verdict::input_error;
      cert.error = "comparison function failed admissibility validation";
      return cert;
    }

    const LandauQuantities q =
        compute_abc(scenario.generator, scenario.f, scenario.omega, scenario.norm);
    cert.quantities = q;
    const double sum_scale = q.a + q.c;

    if (options.mode != CertifyMode::kato) {
      OrbitalHypothesis hyp{scenario.generator, scenario.f, scenario.omega, phi,
                            scenario.norm, TimeGridPolicy{}};
      hyp.grid.tail_tol = options.tail_tol;
      hyp.grid.points = options.grid_points;
      cert.orbital = check_orbital(hyp);

      const auto s_grid = default_s_grid(q);
      cert.scan = dynamical_scan(q, phi, s_grid);
      cert.ordering = ordering_check(q, phi.kind());

      cert.margins.dynamical_min = cert.scan->min_value;
      cert.margins.landau = landau_margin(q);
      const DirectBound direct = direct_bound(q);
      cert.margins.direct = direct.bound;
      cert.margins.interpolated = q.a <= q.c ? interpolated_bound(q) : kNaN;

      if (!cert.orbital->pass) {
        hypothesis_failed = true;
      } else {
        const double tol = options.ineq_tol;
        if (cert.margins.dynamical_min < -tol * sum_scale) violation = true;
        if (cert.margins.landau < -tol * q.a * q.c) violation = true;
        if (!direct.consistent || q.b > direct.bound + tol * sum_scale) violation = true;
        if (phi.kind() == PhiKind::exponential) {
          if (!cert.ordering->pass) violation = true;
          if (q.a <= q.c && q.b > cert.margins.interpolated + tol * sum_scale)
            violation = true;
        }
      }
    }

    if (options.mode != CertifyMode::landau) {
      if (scenario.norm != NormKind::l2)
        throw std::invalid_argument("kato checks require the l2 norm");
      KatoProbe probe{scenario.generator, scenario.f, {}, options.kato_t_max,
                      options.grid_points, 1e-4, options.kato_tol};
      KatoCertificate kc = kato_certificate(probe);
      cert.margins.kato = kc.kato_margin;
      if (!kc.contractivity_pass) {
        hypothesis_failed = true;
      } else {
        // Hypotheses hold; by the certified chain every recorded margin must
        // be nonnegative up to roundoff, else we are looking at a bug.
        if (!kc.margin_pass) violation = true;
        const double nf2 = q.a * q.a;
        const double naf2 = q.b * q.b * q.omega * q.omega;
        const double na2f2 = q.c * q.c * std::pow(q.omega, 4);
        for (const auto& row : kc.rows) {
          const double l2 = row.lambda * row.lambda;
          const double row_scale = na2f2 + l2 * l2 * nf2 + l2 * naf2;
          if (row.margin < -options.kato_tol * row_scale) violation = true;
        }
      }
      cert.kato = std::move(kc);
    }

    cert.verdict = violation ? Verdict::violation
                             : (hypothesis_failed ? Verdict::hypothesis_failed
                                                  : Verdict::certified);
  } catch (const std::exception& e) {
    cert.verdict = Verdict::input_error;
    cert.error = e.what();
  }
  return cert;
}

json certificate_to_json(const Certificate& cert) {
  const std::string stem = sanitize(cert.scenario.name);
  json doc;
  doc["schema_version"] = cert.schema_version;
  json scen = scenario_to_json(cert.scenario);
  if (cert.scenario.seed) scen["seed"] = *cert.scenario.seed;
  doc["scenario"] = scen;
  doc["mode"] = cert.mode == CertifyMode::landau
                    ? "landau"
                    : (cert.mode == CertifyMode::kato ? "kato" : "both");
  doc["options"] = {{"tail_tol", cert.options.tail_tol},
                    {"ineq_tol", cert.options.ineq_tol},
                    {"grid_points", cert.options.grid_points},
                    {"kato_t_max", cert.options.kato_t_max},
                    {"kato_tol", cert.options.kato_tol}};
  doc["phi_admissibility"] = admissibility_to_json(cert.phi_admissibility);

  if (cert.quantities) {
    doc["quantities"] = {{"a", cert.quantities->a},
                         {"b", cert.quantities->b},
                         {"c", cert.quantities->c},
                         {"omega", cert.quantities->omega},
                         {"norm", std::string(to_string(cert.quantities->norm))}};
  }
  if (cert.orbital) {
    doc["orbital"] = {{"pass", cert.orbital->pass},
                      {"pass_f", cert.orbital->pass_f},
                      {"pass_second", cert.orbital->pass_second},
                      {"degenerate_second", cert.orbital->degenerate_second},
                      {"refined", cert.orbital->refined},
                      {"horizon", cert.orbital->horizon},
                      {"tolerance", cert.orbital->tolerance},
                      {"f_orbit", curve_to_json(cert.orbital->f_orbit)},
                      {"second_orbit", curve_to_json(cert.orbital->second_orbit)}};
  }
  if (cert.scan) {
    doc["dynamical_scan"] = {{"min_value", cert.scan->min_value},
                             {"argmin_s", cert.scan->argmin_s},
                             {"points", cert.scan->s.size()}};
  }
  if (cert.ordering) {
    doc["ordering"] = {{"a_le_b", cert.ordering->a_le_b},
                       {"b_le_c", cert.ordering->b_le_c},
                       {"ab_violation", cert.ordering->ab_violation},
                       {"bc_violation", cert.ordering->bc_violation},
                       {"assertive", cert.ordering->assertive},
                       {"pass", cert.ordering->pass}};
  }
  if (cert.kato) {
    json rows = json::array();
    for (const auto& r : cert.kato->rows) {
      rows.push_back({{"lambda", r.lambda},
                      {"max_ratio", r.max_ratio},
                      {"argmax_t", r.argmax_t},
                      {"degenerate", r.degenerate},
                      {"dissipativity", r.dissipativity},
                      {"margin", r.margin}});
    }
    doc["kato"] = {{"lambda_star", cert.kato->lambda_star},
                   {"kato_margin", cert.kato->kato_margin},
                   {"scale", cert.kato->scale},
                   {"contractivity_pass", cert.kato->contractivity_pass},
                   {"margin_pass", cert.kato->margin_pass},
                   {"certified", cert.kato->certified},
                   {"tolerance", cert.kato->tolerance},
                   {"t_grid",
                    {{"points", cert.kato->t_grid.size()},
                     {"t_min", cert.kato->t_grid.size() > 1 ? cert.kato->t_grid[1] : 0.0},
                     {"t_max", cert.kato->t_grid.back()}}},
                   {"rows", rows}};
  }
  doc["margins"] = {{"dynamical_min", cert.margins.dynamical_min},
                    {"landau", cert.margins.landau},
                    {"direct", cert.margins.direct},
                    {"interpolated", cert.margins.interpolated},
                    {"kato", cert.margins.kato}};
  json curves = json::object();
  if (cert.orbital) {
    curves["orbit_f"] = stem + "_orbit_f.csv";
    curves["orbit_second"] = stem + "_orbit_second.csv";
  }
  if (cert.scan) curves["dynamical"] = stem + "_dscan.csv";
  if (cert.kato) curves["lambda"] = stem + "_lambda.csv";
  doc["curves"] = curves;
  doc["verdict"] = std::string(to_string(cert.verdict));
  doc["error"] = cert.error;
  return doc;
}

std::filesystem::path write_certificate(const Certificate& cert,
                                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = sanitize(cert.scenario.name);

  auto write_file = [&](const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
  };

  if (cert.orbital) {
    auto curve_csv = [](const RatioCurve& c) {
      std::string csv = "t,ratio\n";
      for (std::size_t i = 0; i < c.t.size(); ++i)
        csv += format_row("%.17g,%.17g\n", c.t[i], c.ratio[i]);
      return csv;
    };
    write_file(dir / (stem + "_orbit_f.csv"), curve_csv(cert.orbital->f_orbit));
    write_file(dir / (stem + "_orbit_second.csv"), curve_csv(cert.orbital->second_orbit));
  }
  if (cert.scan) {
    std::string csv = "s,value\n";
    for (std::size_t i = 0; i < cert.scan->s.size(); ++i)
      csv += format_row("%.17g,%.17g\n", cert.scan->s[i], cert.scan->value[i]);
    write_file(dir / (stem + "_dscan.csv"), csv);
  }
  if (cert.kato) {
    std::string csv = "lambda,max_ratio,argmax_t,degenerate,dissipativity,margin\n";
    for (const auto& r : cert.kato->rows)
      csv += format_row("%.17g,%.17g,%.17g,%d,%.17g,%.17g\n", r.lambda, r.max_ratio,
                        r.argmax_t, r.degenerate ? 1 : 0, r.dissipativity, r.margin);
    write_file(dir / (stem + "_lambda.csv"), csv);
  }

  const std::filesystem::path cert_path = dir / (stem + ".cert.json");
  write_file(cert_path, certificate_to_json(cert).dump(2) + "\n");
  return cert_path;
}

std::string render_summary(const Certificate& cert) {
  std::string out;
  out += "scenario: " + cert.scenario.name + " (expected " + cert.scenario.expected +
         ")\n";
  out += format_row("verdict: %s\n", std::string(to_string(cert.verdict)).c_str());
  if (!cert.error.empty()) out += "error: " + cert.error + "\n";
  if (cert.quantities) {
    out += format_row("quantities: a=%.9g b=%.9g c=%.9g omega=%.9g norm=%s\n",
                      cert.quantities->a, cert.quantities->b, cert.quantities->c,
                      cert.quantities->omega,
                      std::string(to_string(cert.quantities->norm)).c_str());
  }
  if (cert.orbital) {
    out += format_row(
        "orbital: %s (f-orbit max %.12g at t=%.6g; second orbit max %.12g at t=%.6g%s)\n",
        cert.orbital->pass ? "pass" : "FAIL", cert.orbital->f_orbit.max_ratio,
        cert.orbital->f_orbit.argmax_t, cert.orbital->second_orbit.max_ratio,
        cert.orbital->second_orbit.argmax_t,
        cert.orbital->degenerate_second ? "; second orbit degenerate" : "");
  }
  if (cert.kato) {
    out += format_row(
        "contractivity: %s; kato margin %.9g (lambda* = %.9g)\n",
        cert.kato->contractivity_pass ? "pass" : "FAIL", cert.kato->kato_margin,
        cert.kato->lambda_star);
  }
  out += format_row(
      "margins: dynamical_min=%.9g landau=%.9g direct=%.9g interpolated=%.9g kato=%.9g\n",
      cert.margins.dynamical_min, cert.margins.landau, cert.margins.direct,
      cert.margins.interpolated, cert.margins.kato);
  return out;
}

}  // namespace orbitlab
