/**
 * @file acceptance_main.cpp
 * @brief End-to-end acceptance gate. Each numbered criterion prints one
 *        PASS/FAIL line; the process exits nonzero if any fail.
 *
 * Everything asserted here is pinned to a fixed tolerance in this file; the
 * independent oracles live in oracles.hpp.
 */
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orbitlab/certify.hpp"
#include "orbitlab/interp.hpp"
#include "orbitlab/kato.hpp"
#include "orbitlab/landau.hpp"
#include "orbitlab/scenario.hpp"
#include "oracles.hpp"

using namespace orbitlab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    notes.push_back(what);
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int number;
  const char* title;
  std::function<void()> body;
};

// Shared instance family: the certified catalog entries plus 20 seeded
// skew-dissipative instances with n <= 8.
struct Instance {
  std::string name;
  Generator generator;
  StateVector f;
  double omega;
  std::string phi_name;
};

std::vector<Instance> certified_instances() {
  std::vector<Instance> all;
  for (const auto& s : catalog()) {
    if (s.expected != "pass") continue;
    all.push_back({s.name, s.generator, s.f, s.omega, s.phi_name});
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 2 + seed % 7;  // 2..8
    const double omega = 0.5 + 0.07 * static_cast<double>(seed);
    all.push_back({"skew-seed-" + std::to_string(seed),
                   random_skew_dissipative(n, omega, seed),
                   random_state(n, seed + 500), omega, "exp"});
  }
  return all;
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();
  std::vector<Criterion> criteria;

  // ── 1: comparison-function admissibility ────────────────────────────────
  criteria.push_back({1, "phi admissibility and the majorization identity", [] {
    const auto start = Clock::now();
    const auto grid = uniform_grid(100.0, 1000);
    for (const auto& phi : {ComparisonFunction::exponential(),
                            ComparisonFunction::quadratic_rational()}) {
      const auto report = validate_phi(phi, grid);
      expect(report.pass, std::string(phi.name()) + " must be admissible");
    }
    // (1 - t + t^2/2)(1 + t + t^2/2) - 1 - t^4/4 == 0, evaluated in
    // compensated double-double arithmetic so the check measures the
    // identity rather than double roundoff at t near 100.
    double worst = 0.0;
    for (double t : grid) {
      using oracle::DD;
      const DD td = oracle::dd_from(t);
      const DD t2_half = oracle::dd_mul(oracle::dd_mul(td, td), oracle::dd_from(0.5));
      const DD one = oracle::dd_from(1.0);
      const DD left = oracle::dd_add(oracle::dd_sub(one, td), t2_half);
      const DD right = oracle::dd_add(oracle::dd_add(one, td), t2_half);
      const DD prod = oracle::dd_mul(left, right);
      const DD quarter_t4 = oracle::dd_mul(t2_half, t2_half);
      const DD residual = oracle::dd_sub(oracle::dd_sub(prod, one), quarter_t4);
      worst = std::max(worst, std::abs(residual.hi + residual.lo));
    }
    expect(worst <= 1e-12, "majorization product identity residual " +
                               std::to_string(worst));
    expect(seconds_since(start) < 1.0, "criterion 1 must finish within 1 s");
  }});

  // ── 2: Hilbert norm identity ────────────────────────────────────────────
  criteria.push_back({2, "three-vector norm identity on random complex triples", [] {
    const auto start = Clock::now();
    oracle::Rng rng(20230801);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.bits() % 16);
      auto draw = [&] {
        std::vector<Complex> e(n);
        for (auto& z : e) z = rng.complex_sym();
        return StateVector(e);
      };
      const auto f1 = draw(), f2 = draw(), f3 = draw();
      auto sq = [](const StateVector& v) {
        const double x = norm(v, NormKind::l2);
        return x * x;
      };
      const double scale = sq(f1) + sq(f2) + sq(f3) + 1.0;
      expect(lemma_identity_residual(f1, f2, f3) <= 1e-12 * scale,
             "identity residual beyond 1e-12 * scale at trial " + std::to_string(trial));
    }
    expect(seconds_since(start) < 1.0, "criterion 2 must finish within 1 s");
  }});

  // ── 3: integral representation ──────────────────────────────────────────
  criteria.push_back({3, "integral representation residual and 4th-order decay", [] {
    const auto start = Clock::now();
    for (const char* name : {"identity-decay", "diagonal-two-rates",
                             "rotation-decay-2d", "laplacian-16"}) {
      const auto s = catalog_scenario(name);
      for (double t : {0.1, 1.0, 5.0}) {
        const double coarse = verify_integral_representation(s.generator, s.f, t, 1024);
        expect(coarse <= 1e-8, std::string(name) + " residual " + std::to_string(coarse) +
                                   " at t=" + std::to_string(t));
        if (coarse > 1e-12) {
          const double fine = verify_integral_representation(s.generator, s.f, t, 2048);
          expect(coarse / fine >= 8.0,
                 std::string(name) + " halving gain " + std::to_string(coarse / fine) +
                     " at t=" + std::to_string(t));
        }
      }
    }
    expect(seconds_since(start) < 5.0, "criterion 3 must finish within 5 s");
  }});

  // ── 4: remainder kernel closed form vs quadrature ───────────────────────
  criteria.push_back({4, "remainder kernel matches quadrature", [] {
    for (const auto& phi : {ComparisonFunction::exponential(),
                            ComparisonFunction::quadratic_rational()}) {
      for (double omega : {0.5, 1.0, 2.0}) {
        for (double t : {0.1, 0.5, 1.0, 2.0, 4.0, 7.0, 10.0}) {
          const double closed = remainder_kernel(phi, omega, t);
          const double quadrature = oracle::simpson(
              [&](double tau) { return (t - tau) * phi.deriv2(omega * tau); }, 0.0, t,
              2000);
          expect(std::abs(closed - quadrature) <= 1e-8,
                 std::string(phi.name()) + " kernel mismatch at omega=" +
                     std::to_string(omega) + " t=" + std::to_string(t));
        }
      }
    }
  }});

  // ── 5: orbit-certified inequality regression ────────────────────────────
  criteria.push_back({5, "certified instances satisfy every localized bound", [] {
    const auto start = Clock::now();
    const auto exp_phi = ComparisonFunction::exponential();
    for (const auto& inst : certified_instances()) {
      const ComparisonFunction phi = ComparisonFunction::from_name(inst.phi_name);
      OrbitalHypothesis hyp{inst.generator, inst.f, inst.omega, phi};
      const auto report = check_orbital(hyp);
      expect(report.pass, inst.name + " orbital check must pass");
      if (!report.pass) continue;

      const auto q = compute_abc(inst.generator, inst.f, inst.omega, NormKind::l2);
      const double tol = 1e-9 * (q.a + q.c);
      const auto scan = dynamical_scan(q, phi, default_s_grid(q));
      expect(scan.min_value >= -tol, inst.name + " dynamical scan went negative");
      expect(landau_margin(q) >= -1e-9 * q.a * q.c, inst.name + " 4ac - b^2 negative");
      expect(q.b <= direct_bound(q).bound + tol, inst.name + " direct bound violated");
      if (phi.kind() == PhiKind::exponential) {
        const auto order = ordering_check(q, phi.kind());
        expect(order.ab_violation <= 1e-9 && order.bc_violation <= 1e-9,
               inst.name + " ordering a <= b <= c violated");
      }
    }
    expect(seconds_since(start) < 30.0, "criterion 5 must finish within 30 s");
  }});

  // ── 6: designed failures fail in the designed way ───────────────────────
  criteria.push_back({6, "designed failure scenarios report hypothesis_failed", [] {
    RunOptions landau_mode;
    landau_mode.mode = CertifyMode::landau;
    {
      const auto cert = run_certify(catalog_scenario("quad-phi-second-orbit-fail"),
                                    landau_mode);
      expect(cert.verdict == Verdict::hypothesis_failed,
             "quad-phi scenario must fail its hypotheses");
      expect(exit_code_for(cert.verdict) == 1, "quad-phi scenario exit code must be 1");
      const double argmax = cert.orbital ? cert.orbital->second_orbit.argmax_t : -1.0;
      expect(argmax >= 0.5 && argmax <= 2.0,
             "second-orbit argmax " + std::to_string(argmax) + " outside [0.5, 2]");
    }
    {
      const auto cert = run_certify(catalog_scenario("shift-mix-tight"), landau_mode);
      expect(cert.verdict == Verdict::hypothesis_failed,
             "shift-mix scenario must fail its hypotheses");
      expect(exit_code_for(cert.verdict) == 1, "shift-mix exit code must be 1");
    }
  }});

  // ── 7: monotone inverse machinery ───────────────────────────────────────
  criteria.push_back({7, "g machinery: monotone, invertible, interpolated bound", [] {
    double prev = -1.0;
    bool monotone = true;
    for (int i = 0; i <= 10000; ++i) {
      const double v = g_eval(i / 10000.0);
      if (v <= prev) monotone = false;
      prev = v;
    }
    expect(monotone, "g must be strictly increasing on the 1e4 grid");

    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double y = i / 10000.0;
      worst = std::max(worst, std::abs(g_eval(g_inverse(y)) - y));
    }
    expect(worst <= 1e-10, "round trip error " + std::to_string(worst));

    expect(std::abs(g_inverse(0.846574) - 0.5) <= 1e-6, "g_inverse(0.846574) != 0.5");

    const auto q = compute_abc(Generator::diagonal({Complex(-1.0), Complex(-2.0)}),
                               StateVector::from_real({1.0 / std::sqrt(2.0),
                                                       1.0 / std::sqrt(2.0)}),
                               1.0, NormKind::l2);
    const double bound = interpolated_bound(q);
    expect(std::abs(bound - 2.2095) <= 1e-3,
           "interpolated bound " + std::to_string(bound) + " not 2.2095 +- 1e-3");
    expect(bound > q.b, "interpolated bound must exceed b");
  }});

  // ── 8: Hilbert-space certification chain ────────────────────────────────
  criteria.push_back({8, "contractivity family, dissipativity, and final margin", [] {
    for (const auto& inst : certified_instances()) {
      KatoProbe probe{inst.generator, inst.f};
      const auto cert = kato_certificate(probe);
      expect(cert.contractivity_pass, inst.name + " contractivity family must pass");

      const double nf = norm(inst.f, NormKind::l2);
      const auto af = apply(inst.generator, inst.f);
      const auto a2f = apply(inst.generator, af);
      const double naf = norm(af, NormKind::l2);
      const double na2f = norm(a2f, NormKind::l2);

      for (const auto& row : cert.rows) {
        if (!row.degenerate)
          expect(row.max_ratio <= 1.0 + 1e-10,
                 inst.name + " contractivity ratio above 1 + 1e-10");
        StateVector g;
        g.entries.resize(inst.f.dim());
        for (std::size_t i = 0; i < inst.f.dim(); ++i)
          g.entries[i] = af.entries[i] + row.lambda * inst.f.entries[i];
        const double diss_scale =
            norm(apply(inst.generator, g), NormKind::l2) * norm(g, NormKind::l2);
        expect(row.dissipativity <= 1e-10 * std::max(1.0, diss_scale),
               inst.name + " restricted dissipativity positive");
        const double l2 = row.lambda * row.lambda;
        const double margin_scale = na2f * na2f + l2 * l2 * nf * nf + l2 * naf * naf;
        expect(row.margin >= -1e-10 * margin_scale,
               inst.name + " lambda-inequality margin negative");
      }
      expect(cert.kato_margin >= -1e-10 * cert.scale,
             inst.name + " final margin negative");
      bool pinned = false;
      for (const auto& row : cert.rows) {
        if (row.lambda == cert.lambda_star && cert.lambda_star > 0.0) {
          pinned = true;
          const double via_lambda = row.margin / (cert.lambda_star * cert.lambda_star);
          expect(std::abs(via_lambda - cert.kato_margin) <=
                     1e-10 * std::max(1.0, std::abs(cert.kato_margin)),
                 inst.name + " lambda* margin does not collapse to the final margin");
        }
      }
      expect(pinned, inst.name + " lambda grid must contain lambda*");
    }
  }});

  // ── 9: the constants 4 and 2 are never violated ─────────────────────────
  criteria.push_back({9, "certified instances respect the constants 4 and 2", [] {
    double worst_banach = 0.0;
    double worst_hilbert = 0.0;
    for (const auto& inst : certified_instances()) {
      Scenario scenario;
      scenario.name = inst.name;
      scenario.generator = inst.generator;
      scenario.f = inst.f;
      scenario.omega = inst.omega;
      scenario.phi_name = inst.phi_name;
      const auto cert = run_certify(scenario, RunOptions{});
      expect(cert.verdict != Verdict::violation,
             inst.name + " produced the forbidden verdict");
      expect(exit_code_for(cert.verdict) != 2, inst.name + " produced exit code 2");
      expect(cert.verdict == Verdict::certified, inst.name + " expected to certify");
      if (!cert.quantities) continue;
      const auto& q = *cert.quantities;
      worst_banach = std::max(worst_banach, q.b * q.b / (q.a * q.c));
      const double naf = q.b * q.omega;
      const double na2f = q.c * q.omega * q.omega;
      worst_hilbert = std::max(worst_hilbert, naf * naf / (q.a * na2f));
    }
    expect(worst_banach <= 4.0 + 1e-9,
           "sup b^2/(ac) = " + std::to_string(worst_banach));
    expect(worst_hilbert <= 2.0 + 1e-9,
           "sup ||Af||^2/(||f|| ||A^2f||) = " + std::to_string(worst_hilbert));
  }});

  // ── run ──────────────────────────────────────────────────────────────────
  for (const auto& criterion : criteria) {
    const int before = failures;
    const auto start = Clock::now();
    criterion.body();
    const bool ok = failures == before;
    std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL",
                criterion.number, criterion.title, seconds_since(start));
  }

  // ── 10: single-threaded wall clock for the whole suite ──────────────────
  {
    const double elapsed = seconds_since(suite_start);
    const bool ok = elapsed < 60.0;
    if (!ok) ++failures;
    std::printf("[%s] criterion 10: full acceptance suite runtime %.2f s < 60 s\n",
                ok ? "PASS" : "FAIL", elapsed);
  }

  for (const auto& note : notes) std::printf("  detail: %s\n", note.c_str());
  if (failures > 0) {
    std::printf("%d acceptance failure(s)\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
