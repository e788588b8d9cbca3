#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "orbitlab/operators.hpp"
#include "oracles.hpp"

using namespace orbitlab;

namespace {

StateVector rv(std::vector<double> e) { return StateVector::from_real(std::move(e)); }

Generator rotation_decay_2d() {
  // [[-1, 1], [-1, -1]] = -I + S with S the canonical 2x2 rotation generator.
  return Generator::skew_dissipative(
      1.0, {{Complex(0.0), Complex(1.0)}, {Complex(-1.0), Complex(0.0)}});
}

Generator random_dissipative(std::size_t n, oracle::Rng& rng) {
  // Skew part plus a strictly negative diagonal: Re(Av|v) <= 0 for all v.
  std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n, Complex(0.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = rng.sym();
      rows[i][j] = Complex(s, 0.0);
      rows[j][i] = Complex(-s, 0.0);
    }
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = Complex(-rng.in(0.1, 2.0), 0.0);
  return Generator::dense(rows);
}

StateVector random_vector(std::size_t n, oracle::Rng& rng) {
  std::vector<Complex> e(n);
  for (auto& z : e) z = rng.complex_sym();
  return StateVector(e);
}

}  // namespace

TEST_CASE("operators: apply") {
  const auto neg_identity = Generator::diagonal({Complex(-1.0), Complex(-1.0)});
  const auto v = apply(neg_identity, rv({1.0, 0.0}));
  CHECK(v.entries[0] == Complex(-1.0));
  CHECK(v.entries[1] == Complex(0.0));

  const auto diag = Generator::diagonal({Complex(-1.0), Complex(-2.0)});
  const auto w = apply(diag, rv({1.0, 1.0}));
  CHECK(w.entries[0] == Complex(-1.0));
  CHECK(w.entries[1] == Complex(-2.0));

  const auto rot = rotation_decay_2d();
  const auto u = apply(rot, rv({1.0, 0.0}));
  CHECK(u.entries[0] == Complex(-1.0));
  CHECK(u.entries[1] == Complex(-1.0));

  CHECK_THROWS_AS(apply(diag, rv({1.0, 2.0, 3.0})), std::invalid_argument);
}

TEST_CASE("operators: structure tags validated") {
  CHECK_THROWS_AS(Generator(2, {Complex(1.0), Complex(1.0), Complex(0.0), Complex(1.0)},
                            StructureTag::diagonal),
                  std::invalid_argument);
  CHECK_THROWS_AS(Generator::dense({{Complex(1.0), Complex(0.0)}}), std::invalid_argument);
  CHECK_THROWS_AS(Generator::skew_dissipative(
                      1.0, {{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(0.0)}}),
                  std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(Generator::diagonal({Complex(nan)}), std::invalid_argument);
}

TEST_CASE("operators: expm_apply closed forms") {
  const auto diag = Generator::diagonal({Complex(-1.0), Complex(-2.0)});
  const auto f = rv({1.0, 1.0});

  const auto id0 = expm_apply(diag, 0.0, f);
  CHECK(id0.entries[0] == Complex(1.0));
  CHECK(id0.entries[1] == Complex(1.0));

  const auto w = expm_apply(diag, 1.0, f);
  CHECK(w.entries[0].real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(w.entries[1].real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

  // Nilpotent shift: the series truncates, (I + tN)v exactly.
  const auto shift = Generator::shift(2, Complex(0.0), Complex(1.0));
  const auto sv = expm_apply(shift, 0.7, rv({2.0, 3.0}));
  CHECK(sv.entries[0] == Complex(2.0 + 0.7 * 3.0));
  CHECK(sv.entries[1] == Complex(3.0));

  CHECK_THROWS_AS(expm_apply(diag, -1.0, f), std::domain_error);
  const auto growing = Generator::diagonal({Complex(1.0)});
  CHECK_THROWS_AS(expm_apply(growing, 1000.0, rv({1.0})), std::overflow_error);
}

TEST_CASE("operators: dense path matches closed forms") {
  // Same diagonal matrix routed through the Pade path via the dense tag.
  const auto dense = Generator::dense({{Complex(-1.0), Complex(0.0)},
                                       {Complex(0.0), Complex(-2.0)}});
  for (double t : {0.1, 1.0, 7.3, 40.0}) {
    const auto w = expm_apply(dense, t, rv({1.0, 1.0}));
    CHECK(w.entries[0].real() == doctest::Approx(std::exp(-t)).epsilon(1e-12));
    CHECK(w.entries[1].real() == doctest::Approx(std::exp(-2.0 * t)).epsilon(1e-12));
  }

  // Rotation-decay has the closed form e^{-t} (cos t, -sin t) from (1, 0).
  const auto rot = rotation_decay_2d();
  for (double t : {0.3, 1.0, 4.0, 12.0}) {
    const auto w = expm_apply(rot, t, rv({1.0, 0.0}));
    CHECK(w.entries[0].real() == doctest::Approx(std::exp(-t) * std::cos(t)).epsilon(1e-11));
    CHECK(w.entries[1].real() ==
          doctest::Approx(-std::exp(-t) * std::sin(t)).epsilon(1e-11));
  }
}

namespace {

// Independent expm oracle: scaled Taylor series summed to convergence, then
// repeated squaring. Shares no code with the library's Pade path.
std::vector<Complex> taylor_expm(std::size_t n, std::vector<Complex> a) {
  double nrm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
    nrm = std::max(nrm, col);
  }
  int squarings = 0;
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& z : a) z *= scale;

  auto mul = [&](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    std::vector<Complex> out(n * n, Complex(0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
          out[i * n + j] += x[i * n + k] * y[k * n + j];
    return out;
  };

  std::vector<Complex> sum(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) sum[i * n + i] = Complex(1.0);
  std::vector<Complex> term = sum;
  for (int k = 1; k <= 40; ++k) {
    term = mul(term, a);
    for (auto& z : term) z /= static_cast<double>(k);
    for (std::size_t i = 0; i < n * n; ++i) sum[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
  return sum;
}

}  // namespace

TEST_CASE("operators: dense path agrees with a scaled Taylor oracle") {
  oracle::Rng rng(80808);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.bits() % 5);  // up to 6
    const auto a = random_dissipative(n, rng);
    const auto v = random_vector(n, rng);
    for (double t : {0.5, 3.0, 17.0}) {
      std::vector<Complex> ta(a.entries().begin(), a.entries().end());
      for (auto& z : ta) z *= t;
      const auto reference = taylor_expm(n, ta);
      StateVector want;
      want.entries.assign(n, Complex(0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          want.entries[i] += reference[i * n + j] * v.entries[j];

      const auto got = expm_apply(a, t, v);
      StateVector diff;
      diff.entries.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        diff.entries[i] = got.entries[i] - want.entries[i];
      // Both routes are ~1e-13 accurate on contraction semigroups.
      CHECK(norm(diff, NormKind::l2) <= 1e-11 * std::max(1.0, norm(v, NormKind::l2)));
    }
  }
}

TEST_CASE("operators: semigroup law on random dissipative generators") {
  oracle::Rng rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.bits() % 7);  // up to 8
    const auto a = random_dissipative(n, rng);
    const auto v = random_vector(n, rng);
    const double s = rng.in(0.0, 5.0);
    const double t = rng.in(0.0, 5.0);
    const auto one_step = expm_apply(a, s + t, v);
    const auto two_step = expm_apply(a, s, expm_apply(a, t, v));
    StateVector diff;
    diff.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      diff.entries[i] = one_step.entries[i] - two_step.entries[i];
    CHECK(norm(diff, NormKind::l2) <= 1e-10 * norm(v, NormKind::l2));
  }
}

TEST_CASE("operators: skew-dissipative flow preserves shape, decays exactly") {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.bits() % 7);
    std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n, Complex(0.0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double s = rng.sym();
        rows[i][j] = Complex(s, 0.0);
        rows[j][i] = Complex(-s, 0.0);
      }
    const double omega = rng.in(0.2, 2.0);
    const auto a = Generator::skew_dissipative(omega, rows);
    const auto v = random_vector(n, rng);
    for (double t : {0.4, 1.9, 6.2}) {
      const double got = norm(expm_apply(a, t, v), NormKind::l2);
      const double want = std::exp(-omega * t) * norm(v, NormKind::l2);
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("operators: norms") {
  const auto v = rv({3.0, 4.0});
  CHECK(norm(v, NormKind::l2) == doctest::Approx(5.0));
  CHECK(norm(v, NormKind::linf) == doctest::Approx(4.0));
  CHECK(norm(v, NormKind::l1) == doctest::Approx(7.0));
  const double inv = 1.0 / std::sqrt(2.0);
  CHECK(norm(rv({inv, inv}), NormKind::l2) == doctest::Approx(1.0));
  CHECK(norm(rv({0.0, 0.0}), NormKind::l2) == 0.0);
}

TEST_CASE("operators: norm axioms on random vectors") {
  oracle::Rng rng(991);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.bits() % 8);
    const auto u = random_vector(n, rng);
    const auto v = random_vector(n, rng);
    const double lam = rng.in(-3.0, 3.0);
    for (NormKind kind : {NormKind::l1, NormKind::l2, NormKind::linf}) {
      StateVector sum, scaled;
      sum.entries.resize(n);
      scaled.entries.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        sum.entries[i] = u.entries[i] + v.entries[i];
        scaled.entries[i] = lam * u.entries[i];
      }
      CHECK(norm(sum, kind) <= norm(u, kind) + norm(v, kind) + 1e-12);
      CHECK(norm(scaled, kind) ==
            doctest::Approx(std::abs(lam) * norm(u, kind)).epsilon(1e-12));
    }
  }
}

TEST_CASE("operators: inner product convention") {
  CHECK(inner(rv({1.0, 0.0}), rv({0.0, 1.0})) == Complex(0.0));
  CHECK(inner(rv({1.0, 0.0}), rv({1.0, 0.0})) == Complex(1.0));
  // Linear in the first slot, conjugate in the second:
  // ((1, i) | (1, -i)) = 1*1 + i*conj(-i) = 1 + i*i = 0.
  const StateVector u({Complex(1.0), Complex(0.0, 1.0)});
  const StateVector v({Complex(1.0), Complex(0.0, -1.0)});
  CHECK(inner(u, v) == Complex(0.0));
  CHECK(inner(u, u).real() == doctest::Approx(2.0));
  CHECK_THROWS_AS(inner(rv({1.0}), rv({1.0, 2.0})), std::invalid_argument);
}

TEST_CASE("operators: integral representation residual") {
  // t = 0: every term vanishes.
  const auto diag = Generator::diagonal({Complex(-1.0), Complex(-2.0)});
  CHECK(verify_integral_representation(diag, rv({1.0, 1.0}), 0.0, 64) <= 1e-14);

  // Scalar identity e^{-t} = 1 - t + int_0^t (t - tau) e^{-tau} dtau.
  const auto scalar = Generator::diagonal({Complex(-1.0)});
  CHECK(verify_integral_representation(scalar, rv({1.0}), 1.0, 64) <= 1e-8);

  CHECK_THROWS_AS(verify_integral_representation(scalar, rv({1.0}), 1.0, 63),
                  std::invalid_argument);
}

TEST_CASE("operators: integral representation converges at 4th order") {
  const auto rot = rotation_decay_2d();
  const auto f = rv({1.0, 0.0});
  const double coarse = verify_integral_representation(rot, f, 1.0, 256);
  const double fine = verify_integral_representation(rot, f, 1.0, 512);
  REQUIRE(coarse > 1e-12);  // stay above the expm accuracy floor
  const double ratio = coarse / fine;
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 40.0);
}
