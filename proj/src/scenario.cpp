#include "orbitlab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace orbitlab {

namespace {

using nlohmann::json;

// Deterministic uniform in [-1, 1): uses raw mt19937_64 bits so the stream
// does not depend on the standard library's distribution implementation.
class UniformBits {
 public:
  explicit UniformBits(std::uint64_t seed) : rng_(seed) {}
  double next() { return 2.0 * ((rng_() >> 11) * 0x1.0p-53) - 1.0; }

 private:
  std::mt19937_64 rng_;
};

[[noreturn]] void fail_field(const std::string& where, const std::string& message) {
  throw std::invalid_argument("scenario: field '" + where + "': " + message);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail_field(where + "." + it.key(), "unknown field");
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail_field(where + "." + key, "missing");
  if (!obj[key].is_number()) fail_field(where + "." + key, "expected a number");
  return obj[key].get<double>();
}

Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  fail_field(where, "expected a number or an [re, im] pair");
}

std::vector<Complex> parse_complex_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail_field(where, "expected a nonempty array");
  std::vector<Complex> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_complex(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<Complex>> parse_complex_matrix(const json& v,
                                                       const std::string& where) {
  if (!v.is_array() || v.empty()) fail_field(where, "expected a nonempty array of rows");
  std::vector<std::vector<Complex>> rows;
  rows.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    rows.push_back(parse_complex_vector(v[i], where + "[" + std::to_string(i) + "]"));
  for (const auto& row : rows)
    if (row.size() != rows.size()) fail_field(where, "matrix must be square");
  return rows;
}

json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return json(z.real());
  return json::array({z.real(), z.imag()});
}

json vector_to_json(const StateVector& v) {
  json arr = json::array();
  for (const auto& z : v.entries) arr.push_back(complex_to_json(z));
  return arr;
}

struct ParsedGenerator {
  Generator generator;
  std::optional<double> derived_omega;
  std::optional<std::uint64_t> seed;
};

ParsedGenerator parse_generator(const json& g) {
  if (!g.is_object()) fail_field("generator", "expected an object");
  if (!g.contains("kind") || !g["kind"].is_string())
    fail_field("generator.kind", "missing or not a string");
  const std::string kind = g["kind"].get<std::string>();

  if (kind == "dense") {
    reject_unknown(g, {"kind", "matrix"}, "generator");
    if (!g.contains("matrix")) fail_field("generator.matrix", "missing");
    return {Generator::dense(parse_complex_matrix(g["matrix"], "generator.matrix")),
            std::nullopt, std::nullopt};
  }
  if (kind == "diagonal") {
    reject_unknown(g, {"kind", "entries"}, "generator");
    if (!g.contains("entries")) fail_field("generator.entries", "missing");
    return {Generator::diagonal(parse_complex_vector(g["entries"], "generator.entries")),
            std::nullopt, std::nullopt};
  }
  if (kind == "tridiagonal") {
    reject_unknown(g, {"kind", "sub", "diag", "super"}, "generator");
    for (const char* k : {"sub", "diag", "super"})
      if (!g.contains(k)) fail_field(std::string("generator.") + k, "missing");
    return {Generator::tridiagonal(parse_complex_vector(g["sub"], "generator.sub"),
                                   parse_complex_vector(g["diag"], "generator.diag"),
                                   parse_complex_vector(g["super"], "generator.super")),
            std::nullopt, std::nullopt};
  }
  if (kind == "shift") {
    reject_unknown(g, {"kind", "n", "alpha", "beta"}, "generator");
    const double n = require_number(g, "n", "generator");
    if (n < 1 || n != std::floor(n)) fail_field("generator.n", "expected a positive integer");
    const Complex alpha = g.contains("alpha")
                              ? parse_complex(g["alpha"], "generator.alpha")
                              : Complex(0.0);
    const Complex beta =
        g.contains("beta") ? parse_complex(g["beta"], "generator.beta") : Complex(1.0);
    return {Generator::shift(static_cast<std::size_t>(n), alpha, beta), std::nullopt,
            std::nullopt};
  }
  if (kind == "laplacian") {
    reject_unknown(g, {"kind", "n", "h"}, "generator");
    const double n = require_number(g, "n", "generator");
    if (n < 1 || n != std::floor(n)) fail_field("generator.n", "expected a positive integer");
    const double h = g.contains("h") ? require_number(g, "h", "generator") : 1.0;
    if (!(h > 0.0)) fail_field("generator.h", "must be > 0");
    const auto dim = static_cast<std::size_t>(n);
    return {dirichlet_laplacian(dim, h), dirichlet_laplacian_decay_rate(dim, h),
            std::nullopt};
  }
  if (kind == "skew-dissipative") {
    if (g.contains("skew")) {
      reject_unknown(g, {"kind", "omega", "skew"}, "generator");
      const double omega = require_number(g, "omega", "generator");
      return {Generator::skew_dissipative(
                  omega, parse_complex_matrix(g["skew"], "generator.skew")),
              std::nullopt, std::nullopt};
    }
    reject_unknown(g, {"kind", "n", "omega", "seed"}, "generator");
    const double n = require_number(g, "n", "generator");
    if (n < 1 || n != std::floor(n)) fail_field("generator.n", "expected a positive integer");
    const double omega = require_number(g, "omega", "generator");
    const double seed = require_number(g, "seed", "generator");
    if (seed < 0 || seed != std::floor(seed))
      fail_field("generator.seed", "expected a nonnegative integer");
    const auto s = static_cast<std::uint64_t>(seed);
    return {random_skew_dissipative(static_cast<std::size_t>(n), omega, s), std::nullopt,
            s};
  }
  fail_field("generator.kind", "unknown kind '" + kind + "'");
}

json diagonal_spec(const std::vector<double>& entries) {
  json g;
  g["kind"] = "diagonal";
  g["entries"] = entries;
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

Generator dirichlet_laplacian(std::size_t n, double h) {
  if (n == 0) throw std::invalid_argument("dirichlet_laplacian: n must be positive");
  if (!(h > 0.0)) throw std::invalid_argument("dirichlet_laplacian: h must be > 0");
  const double s = 1.0 / (h * h);
  std::vector<Complex> band(n > 1 ? n - 1 : 0, Complex(s, 0.0));
  std::vector<Complex> diag(n, Complex(-2.0 * s, 0.0));
  if (n == 1) return Generator::diagonal(diag);
  return Generator::tridiagonal(band, diag, band);
}

double dirichlet_laplacian_decay_rate(std::size_t n, double h) {
  return (2.0 / (h * h)) * (1.0 - std::cos(std::numbers::pi / (n + 1)));
}

StateVector dirichlet_laplacian_mode(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw std::invalid_argument("dirichlet_laplacian_mode: 1 <= k <= n");
  std::vector<double> v(n);
  double nrm = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    v[j - 1] = std::sin(j * k * std::numbers::pi / (n + 1));
    nrm += v[j - 1] * v[j - 1];
  }
  nrm = std::sqrt(nrm);
  for (auto& x : v) x /= nrm;
  return StateVector::from_real(v);
}

Generator random_skew_dissipative(std::size_t n, double omega, std::uint64_t seed) {
  UniformBits bits(seed);
  std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n, Complex(0.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = bits.next();
      rows[i][j] = Complex(s, 0.0);
      rows[j][i] = Complex(-s, 0.0);
    }
  return Generator::skew_dissipative(omega, rows);
}

StateVector random_state(std::size_t n, std::uint64_t seed) {
  UniformBits bits(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = bits.next();
  double nrm = 0.0;
  for (double x : v) nrm += x * x;
  if (nrm == 0.0) v[0] = 1.0;
  return StateVector::from_real(v);
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

std::vector<Scenario> catalog() {
  std::vector<Scenario> list;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  {
    Scenario s;
    s.name = "identity-decay";
    s.generator = Generator::diagonal({Complex(-1.0), Complex(-1.0)});
    s.generator_spec = diagonal_spec({-1.0, -1.0});
    s.f = StateVector::from_real({1.0, 0.0});
    s.omega = 1.0;
    s.phi_name = "exp";
    s.expected = "pass";
    list.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "diagonal-two-rates";
    s.generator = Generator::diagonal({Complex(-1.0), Complex(-2.0)});
    s.generator_spec = diagonal_spec({-1.0, -2.0});
    s.f = StateVector::from_real({inv_sqrt2, inv_sqrt2});
    s.omega = 1.0;
    s.phi_name = "exp";
    s.expected = "pass";
    list.push_back(std::move(s));
  }
  {
    Scenario s;
    s.name = "rotation-decay-2d";
    s.generator = Generator::skew_dissipative(
        1.0, {{Complex(0.0), Complex(1.0)}, {Complex(-1.0), Complex(0.0)}});
    s.generator_spec = {{"kind", "skew-dissipative"},
                        {"omega", 1.0},
                        {"skew", nlohmann::json::array({{0.0, 1.0}, {-1.0, 0.0}})}};
    s.f = StateVector::from_real({1.0, 0.0});
    s.omega = 1.0;
    s.phi_name = "exp";
    s.expected = "pass";
    list.push_back(std::move(s));
  }
  {
    constexpr std::uint64_t kSeed = 20240801;
    Scenario s;
    s.name = "rotation-decay-random-6d";
    s.generator = random_skew_dissipative(6, 1.0, kSeed);
    s.generator_spec = {
        {"kind", "skew-dissipative"}, {"n", 6}, {"omega", 1.0}, {"seed", kSeed}};
    s.f = random_state(6, kSeed + 1);
    s.omega = 1.0;
    s.phi_name = "exp";
    s.expected = "pass";
    s.seed = kSeed;
    list.push_back(std::move(s));
  }
  {
    // Low-mode content keeps ||A^k f|| moderate, which the integral
    // representation check needs at realistic panel counts.
    Scenario s;
    s.name = "laplacian-16";
    s.generator = dirichlet_laplacian(16, 1.0);
    s.generator_spec = {{"kind", "laplacian"}, {"n", 16}, {"h", 1.0}};
    const StateVector m1 = dirichlet_laplacian_mode(16, 1);
    const StateVector m2 = dirichlet_laplacian_mode(16, 2);
    std::vector<double> mix(16);
    double nrm = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      mix[i] = m1.entries[i].real() + 0.5 * m2.entries[i].real();
      nrm += mix[i] * mix[i];
    }
    nrm = std::sqrt(nrm);
    for (auto& x : mix) x /= nrm;
    s.f = StateVector::from_real(mix);
    s.omega = dirichlet_laplacian_decay_rate(16, 1.0);
    s.phi_name = "exp";
    s.expected = "pass";
    list.push_back(std::move(s));
  }
  {
    // Designed failure: the nilpotent part defeats the tight rate omega = mu,
    // since ||e^{t(A+mu)}f|| grows polynomially from t = 0.
    Scenario s;
    s.name = "shift-mix-tight";
    s.generator = Generator::shift(3, Complex(-1.0), Complex(1.5));
    s.generator_spec = {{"kind", "shift"}, {"n", 3}, {"alpha", -1.0}, {"beta", 1.5}};
    s.f = StateVector::from_real({0.0, 0.0, 1.0});
    s.omega = 1.0;
    s.phi_name = "exp";
    s.expected = "fail";
    list.push_back(std::move(s));
  }
  {
    // Designed failure: the slow mode alone decays like e^{-2t}, which beats
    // phi but not phi'' for the quadratic-rational candidate.
    Scenario s;
    s.name = "quad-phi-second-orbit-fail";
    s.generator = Generator::diagonal({Complex(-2.0), Complex(-4.0)});
    s.generator_spec = diagonal_spec({-2.0, -4.0});
    s.f = StateVector::from_real({1.0, 0.0});
    s.omega = 2.0;
    s.phi_name = "quad";
    s.expected = "fail";
    list.push_back(std::move(s));
  }
  {
    // Mixing in the fast mode weakens the second orbit enough to stay below
    // the quadratic-rational phi'' envelope.
    Scenario s;
    s.name = "quad-phi-certified";
    s.generator = Generator::diagonal({Complex(-1.0), Complex(-2.0)});
    s.generator_spec = diagonal_spec({-1.0, -2.0});
    s.f = StateVector::from_real({inv_sqrt2, inv_sqrt2});
    s.omega = 1.0;
    s.phi_name = "quad";
    s.expected = "pass";
    list.push_back(std::move(s));
  }
  return list;
}

Scenario catalog_scenario(std::string_view name) {
  for (auto& s : catalog())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown catalog scenario: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("scenario: expected a JSON object");
  reject_unknown(doc, {"name", "generator", "f", "omega", "phi", "norm", "expected"},
                 "scenario");
  Scenario s;
  if (!doc.contains("name") || !doc["name"].is_string())
    fail_field("name", "missing or not a string");
  s.name = doc["name"].get<std::string>();
  if (!doc.contains("generator")) fail_field("generator", "missing");
  ParsedGenerator pg = parse_generator(doc["generator"]);
  s.generator = std::move(pg.generator);
  s.generator_spec = doc["generator"];
  s.seed = pg.seed;

  if (!doc.contains("f")) fail_field("f", "missing");
  s.f = StateVector(parse_complex_vector(doc["f"], "f"));
  if (s.f.dim() != s.generator.dim())
    fail_field("f", "dimension does not match the generator");
  if (s.f.is_zero()) fail_field("f", "must be nonzero");

  if (doc.contains("omega")) {
    if (!doc["omega"].is_number()) fail_field("omega", "expected a number");
    s.omega = doc["omega"].get<double>();
  } else if (pg.derived_omega) {
    s.omega = *pg.derived_omega;
  } else {
    fail_field("omega", "missing");
  }
  if (!(s.omega > 0.0)) fail_field("omega", "must be > 0");

  if (!doc.contains("phi") || !doc["phi"].is_string())
    fail_field("phi", "missing or not a string");
  s.phi_name = doc["phi"].get<std::string>();

  if (doc.contains("norm")) {
    if (!doc["norm"].is_string()) fail_field("norm", "expected a string");
    s.norm = norm_kind_from_string(doc["norm"].get<std::string>());
  }
  if (doc.contains("expected")) {
    if (!doc["expected"].is_string()) fail_field("expected", "expected a string");
    s.expected = doc["expected"].get<std::string>();
    if (s.expected != "pass" && s.expected != "fail" && s.expected != "exploratory")
      fail_field("expected", "must be pass, fail, or exploratory");
  }
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario: cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario: " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  if (!s.generator_spec.is_null()) {
    doc["generator"] = s.generator_spec;
  } else {
    json g;
    g["kind"] = "dense";
    json rows = json::array();
    for (std::size_t i = 0; i < s.generator.dim(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < s.generator.dim(); ++j)
        row.push_back(complex_to_json(s.generator.at(i, j)));
      rows.push_back(row);
    }
    g["matrix"] = rows;
    doc["generator"] = g;
  }
  doc["f"] = vector_to_json(s.f);
  doc["omega"] = s.omega;
  doc["phi"] = s.phi_name;
  doc["norm"] = std::string(to_string(s.norm));
  doc["expected"] = s.expected;
  return doc;
}

}  // namespace orbitlab
