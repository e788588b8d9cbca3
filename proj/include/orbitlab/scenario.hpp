/**
 * @file scenario.hpp
 * @brief Scenario catalog and scenario-file parsing.
 *
 * A scenario bundles a generator, a distinguished nonzero vector f, a decay
 * rate omega, a comparison-function name, and a norm. Scenario files are
 * JSON; complex entries are written as [re, im] pairs. Unknown fields are
 * rejected.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitlab/operators.hpp"

namespace orbitlab {

struct Scenario {
  std::string name;
  Generator generator = Generator::diagonal({Complex(-1.0, 0.0)});
  StateVector f;
  double omega = 1.0;
  std::string phi_name = "exp";
  NormKind norm = NormKind::l2;
  std::string expected = "exploratory";  // "pass" | "fail" | "exploratory"
  std::optional<std::uint64_t> seed;     // for randomized generators
  nlohmann::json generator_spec;         // parameter echo for certificates
};

/// Built-in scenario catalog. Randomized entries carry explicit seeds.
std::vector<Scenario> catalog();

/// Catalog lookup by name; throws std::invalid_argument if absent.
Scenario catalog_scenario(std::string_view name);

Scenario parse_scenario(const std::filesystem::path& path);
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& s);

/// Tridiagonal (-2, 1, 1)/h^2 Dirichlet Laplacian on n interior points.
Generator dirichlet_laplacian(std::size_t n, double h);

/// Magnitude of its smallest eigenvalue: (2/h^2)(1 - cos(pi/(n+1))).
double dirichlet_laplacian_decay_rate(std::size_t n, double h);

/// Sine mode sin(j k pi / (n+1)), j = 1..n, normalized to unit l2 norm.
StateVector dirichlet_laplacian_mode(std::size_t n, std::size_t k);

/// -omega*I + S with S real skew-symmetric, entries uniform in [-1, 1]
/// drawn from the seed. Deterministic across platforms.
Generator random_skew_dissipative(std::size_t n, double omega, std::uint64_t seed);

/// Deterministic nonzero real vector with entries uniform in [-1, 1].
StateVector random_state(std::size_t n, std::uint64_t seed);

}  // namespace orbitlab
