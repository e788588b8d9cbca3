/**
 * @file operators.hpp
 * @brief Finite-dimensional generators, state vectors, norms, and the
 *        semigroup action e^{tA}v.
 *
 * Everything here is a pure value type: a Generator is an immutable square
 * matrix with a structure tag that unlocks exact fast paths (diagonal,
 * shift) or a factored path (skew-dissipative). The dense path is
 * scaling-and-squaring with a degree-13 Pade approximant, accurate to
 * ~1e-12 relative for ||tA|| <= 100.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace orbitlab {

using Complex = std::complex<double>;

enum class NormKind { l1, l2, linf };

enum class StructureTag { dense, diagonal, tridiagonal, shift, skew_dissipative };

std::string_view to_string(NormKind kind);
std::string_view to_string(StructureTag tag);
NormKind norm_kind_from_string(std::string_view name);
StructureTag structure_tag_from_string(std::string_view name);

/// Element of the state space. Complex-capable; real inputs stay real.
struct StateVector {
  std::vector<Complex> entries;

  StateVector() = default;
  explicit StateVector(std::vector<Complex> e) : entries(std::move(e)) {}
  static StateVector from_real(const std::vector<double>& e);

  std::size_t dim() const { return entries.size(); }
  bool is_zero() const;
};

/// Square matrix playing the role of the semigroup generator A.
///
/// The structure tag must be consistent with the entries; constructors
/// throw std::invalid_argument otherwise. Tags:
///   diagonal          off-diagonal entries exactly zero
///   tridiagonal       entries outside |i-j| <= 1 exactly zero
///   shift             constant diagonal alpha and constant superdiagonal
///                     beta, zero elsewhere (alpha*I + beta*N, N nilpotent)
///   skew_dissipative  A = -omega*I + S with S skew-Hermitian, omega >= 0
class Generator {
 public:
  Generator(std::size_t dim, std::vector<Complex> row_major,
            StructureTag tag = StructureTag::dense);

  static Generator dense(const std::vector<std::vector<Complex>>& rows);
  static Generator diagonal(std::vector<Complex> diag);
  static Generator tridiagonal(const std::vector<Complex>& sub,
                               const std::vector<Complex>& diag,
                               const std::vector<Complex>& super);
  /// alpha*I + beta*N where N is the upper shift (ones above the diagonal).
  static Generator shift(std::size_t dim, Complex alpha, Complex beta);
  /// -omega*I + S; S must be skew-Hermitian (within roundoff).
  static Generator skew_dissipative(double omega,
                                    const std::vector<std::vector<Complex>>& skew_rows);

  std::size_t dim() const { return dim_; }
  StructureTag structure() const { return tag_; }
  Complex at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const Complex> entries() const { return entries_; }

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;  // row-major
  StructureTag tag_;
};

/// Matrix-vector product A v.
StateVector apply(const Generator& a, const StateVector& v);

/// Semigroup action e^{tA} v, t >= 0.
///
/// Exact closed forms for diagonal and shift tags; the skew-dissipative tag
/// factors e^{tA} = e^{-omega t} e^{tS}; everything else goes through the
/// dense Pade path. Throws std::domain_error for t < 0 and
/// std::overflow_error if the result is not finite.
StateVector expm_apply(const Generator& a, double t, const StateVector& v);

double norm(const StateVector& v, NormKind kind);

/// Inner product, linear in the first argument, conjugated in the second.
Complex inner(const StateVector& u, const StateVector& v);

/// Residual of e^{tA}f = f + tAf + int_0^t (t-tau) e^{tau A} A^2 f dtau,
/// with the integral approximated by composite Simpson on `panels` even
/// subintervals. Returns the l2 norm of the defect; decays at 4th order in
/// the panel width until the expm accuracy floor.
double verify_integral_representation(const Generator& a, const StateVector& f,
                                      double t, int panels);

}  // namespace orbitlab
