#include "orbitlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orbitlab {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// Dense complex matrix helpers (row-major, internal only)
// ---------------------------------------------------------------------------

using Mat = std::vector<Complex>;

Mat identity(std::size_t n) {
  Mat m(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = Complex(1.0);
  return m;
}

Mat mat_mul(std::size_t n, const Mat& a, const Mat& b) {
  Mat c(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a[i * n + k];
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
  return c;
}

void mat_axpy(Mat& y, Complex alpha, const Mat& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double norm1(std::size_t n, const Mat& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
    best = std::max(best, col);
  }
  return best;
}

// Solves A X = B in place (X overwrites B) by LU with partial pivoting.
void lu_solve(std::size_t n, Mat a, Mat& b) {
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(a[i * n + k]);
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("matrix exponential: singular Pade denominator");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      for (std::size_t j = 0; j < n; ++j) std::swap(b[k * n + j], b[p * n + j]);
    }
    const Complex pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = a[i * n + k] / pivot;
      a[i * n + k] = m;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
      for (std::size_t j = 0; j < n; ++j) b[i * n + j] -= m * b[k * n + j];
    }
  }
  // Back substitution.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t ii = n; ii-- > 0;) {
      Complex sum = b[ii * n + j];
      for (std::size_t k2 = ii + 1; k2 < n; ++k2) sum -= a[ii * n + k2] * b[k2 * n + j];
      b[ii * n + j] = sum / a[ii * n + ii];
    }
  }
}

// Scaling-and-squaring with the degree-13 diagonal Pade approximant.
// Fixed order and threshold; generators here are small, so robustness wins
// over the multi-order scheme.
Mat expm_dense(std::size_t n, Mat b) {
  static constexpr double kTheta13 = 5.371920351148152;
  static constexpr double kPade13[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  const double nrm = norm1(n, b);
  if (!std::isfinite(nrm)) throw std::overflow_error("matrix exponential: ||tA|| overflow");
  int squarings = 0;
  if (nrm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& e : b) e *= scale;
  }

  const Mat b2 = mat_mul(n, b, b);
  const Mat b4 = mat_mul(n, b2, b2);
  const Mat b6 = mat_mul(n, b2, b4);

  // U = B (B6 (c13 B6 + c11 B4 + c9 B2) + c7 B6 + c5 B4 + c3 B2 + c1 I)
  Mat w(n * n, Complex(0.0));
  mat_axpy(w, kPade13[13], b6);
  mat_axpy(w, kPade13[11], b4);
  mat_axpy(w, kPade13[9], b2);
  Mat u = mat_mul(n, b6, w);
  mat_axpy(u, kPade13[7], b6);
  mat_axpy(u, kPade13[5], b4);
  mat_axpy(u, kPade13[3], b2);
  mat_axpy(u, kPade13[1], identity(n));
  u = mat_mul(n, b, u);

  // V = B6 (c12 B6 + c10 B4 + c8 B2) + c6 B6 + c4 B4 + c2 B2 + c0 I
  Mat z(n * n, Complex(0.0));
  mat_axpy(z, kPade13[12], b6);
  mat_axpy(z, kPade13[10], b4);
  mat_axpy(z, kPade13[8], b2);
  Mat v = mat_mul(n, b6, z);
  mat_axpy(v, kPade13[6], b6);
  mat_axpy(v, kPade13[4], b4);
  mat_axpy(v, kPade13[2], b2);
  mat_axpy(v, kPade13[0], identity(n));

  Mat p = v;  // V + U
  mat_axpy(p, Complex(1.0), u);
  Mat q = v;  // V - U
  mat_axpy(q, Complex(-1.0), u);
  lu_solve(n, std::move(q), p);

  for (int s = 0; s < squarings; ++s) p = mat_mul(n, p, p);
  return p;
}

StateVector mat_apply(std::size_t n, const Mat& m, const StateVector& v) {
  StateVector out;
  out.entries.assign(n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum(0.0);
    for (std::size_t j = 0; j < n; ++j) sum += m[i * n + j] * v.entries[j];
    out.entries[i] = sum;
  }
  return out;
}

// Full matrix e^{tA} for the structures without an entrywise closed form.
Mat exp_matrix(const Generator& a, double t) {
  const std::size_t n = a.dim();
  if (a.structure() == StructureTag::skew_dissipative) {
    const double omega = -a.at(0, 0).real();
    Mat s(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < n; ++i) s[i * n + i] += Complex(omega, 0.0);
    for (auto& z : s) z *= t;
    Mat rot = expm_dense(n, std::move(s));
    const double factor = std::exp(-omega * t);
    for (auto& z : rot) z *= factor;
    return rot;
  }
  Mat b(a.entries().begin(), a.entries().end());
  for (auto& z : b) z *= t;
  return expm_dense(n, std::move(b));
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Structure-tag consistency. Zero-pattern checks are exact; the
// skew-dissipative factorization allows roundoff in user-supplied entries.
void validate_structure(std::size_t n, const std::vector<Complex>& e, StructureTag tag) {
  for (const auto& z : e) {
    if (!is_finite(z)) throw std::invalid_argument("generator: entries must be finite");
  }
  auto at = [&](std::size_t i, std::size_t j) { return e[i * n + j]; };
  switch (tag) {
    case StructureTag::dense:
      break;
    case StructureTag::diagonal:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && at(i, j) != Complex(0.0))
            throw std::invalid_argument("generator: diagonal tag with off-diagonal entries");
      break;
    case StructureTag::tridiagonal:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if ((i > j ? i - j : j - i) > 1 && at(i, j) != Complex(0.0))
            throw std::invalid_argument("generator: tridiagonal tag with far entries");
      break;
    case StructureTag::shift: {
      const Complex alpha = at(0, 0);
      const Complex beta = n > 1 ? at(0, 1) : Complex(0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Complex want = i == j ? alpha : (j == i + 1 ? beta : Complex(0.0));
          if (at(i, j) != want)
            throw std::invalid_argument("generator: shift tag requires alpha*I + beta*N form");
        }
      break;
    }
    case StructureTag::skew_dissipative: {
      double scale = 0.0;
      for (const auto& z : e) scale = std::max(scale, std::abs(z));
      const double tol = 1e-12 * std::max(1.0, scale);
      const double omega = -at(0, 0).real();
      if (omega < -tol)
        throw std::invalid_argument("generator: skew_dissipative tag requires Re(a00) <= 0");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          // A + A^H must equal -2 omega I.
          const Complex sym = at(i, j) + std::conj(at(j, i));
          const Complex want = i == j ? Complex(-2.0 * omega, 0.0) : Complex(0.0);
          if (std::abs(sym - want) > tol)
            throw std::invalid_argument(
                "generator: skew_dissipative tag requires A = -omega*I + S with S skew-Hermitian");
        }
      break;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
    case NormKind::linf: return "linf";
  }
  return "l2";
}

std::string_view to_string(StructureTag tag) {
  switch (tag) {
    case StructureTag::dense: return "dense";
    case StructureTag::diagonal: return "diagonal";
    case StructureTag::tridiagonal: return "tridiagonal";
    case StructureTag::shift: return "shift";
    case StructureTag::skew_dissipative: return "skew-dissipative";
  }
  return "dense";
}

NormKind norm_kind_from_string(std::string_view name) {
  if (name == "l1") return NormKind::l1;
  if (name == "l2") return NormKind::l2;
  if (name == "linf") return NormKind::linf;
  throw std::invalid_argument("unknown norm kind: " + std::string(name));
}

StructureTag structure_tag_from_string(std::string_view name) {
  if (name == "dense") return StructureTag::dense;
  if (name == "diagonal") return StructureTag::diagonal;
  if (name == "tridiagonal") return StructureTag::tridiagonal;
  if (name == "shift") return StructureTag::shift;
  if (name == "skew-dissipative") return StructureTag::skew_dissipative;
  throw std::invalid_argument("unknown structure tag: " + std::string(name));
}

// ---------------------------------------------------------------------------
// StateVector / Generator
// ---------------------------------------------------------------------------

StateVector StateVector::from_real(const std::vector<double>& e) {
  StateVector v;
  v.entries.reserve(e.size());
  for (double x : e) v.entries.emplace_back(x, 0.0);
  return v;
}

bool StateVector::is_zero() const {
  for (const auto& z : entries)
    if (z != Complex(0.0)) return false;
  return true;
}

Generator::Generator(std::size_t dim, std::vector<Complex> row_major, StructureTag tag)
    : dim_(dim), entries_(std::move(row_major)), tag_(tag) {
  if (dim_ == 0) throw std::invalid_argument("generator: dimension must be positive");
  if (entries_.size() != dim_ * dim_)
    throw std::invalid_argument("generator: entry count does not match a square matrix");
  validate_structure(dim_, entries_, tag_);
}

Generator Generator::dense(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Complex> e;
  e.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("generator: matrix must be square");
    e.insert(e.end(), row.begin(), row.end());
  }
  return Generator(n, std::move(e), StructureTag::dense);
}

Generator Generator::diagonal(std::vector<Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return Generator(n, std::move(e), StructureTag::diagonal);
}

Generator Generator::tridiagonal(const std::vector<Complex>& sub,
                                 const std::vector<Complex>& diag,
                                 const std::vector<Complex>& super) {
  const std::size_t n = diag.size();
  if (n == 0 || sub.size() != n - 1 || super.size() != n - 1)
    throw std::invalid_argument("generator: tridiagonal band lengths inconsistent");
  std::vector<Complex> e(n * n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = diag[i];
    if (i + 1 < n) {
      e[i * n + i + 1] = super[i];
      e[(i + 1) * n + i] = sub[i];
    }
  }
  return Generator(n, std::move(e), StructureTag::tridiagonal);
}

Generator Generator::shift(std::size_t dim, Complex alpha, Complex beta) {
  std::vector<Complex> e(dim * dim, Complex(0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    e[i * dim + i] = alpha;
    if (i + 1 < dim) e[i * dim + i + 1] = beta;
  }
  return Generator(dim, std::move(e), StructureTag::shift);
}

Generator Generator::skew_dissipative(double omega,
                                      const std::vector<std::vector<Complex>>& skew_rows) {
  if (omega < 0.0) throw std::invalid_argument("generator: omega must be >= 0");
  const std::size_t n = skew_rows.size();
  std::vector<Complex> e;
  e.reserve(n * n);
  for (const auto& row : skew_rows) {
    if (row.size() != n) throw std::invalid_argument("generator: matrix must be square");
    e.insert(e.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] -= Complex(omega, 0.0);
  return Generator(n, std::move(e), StructureTag::skew_dissipative);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

StateVector apply(const Generator& a, const StateVector& v) {
  require_same_dim(a.dim(), v.dim(), "apply");
  StateVector out;
  out.entries.assign(a.dim(), Complex(0.0));
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum(0.0);
    for (std::size_t j = 0; j < n; ++j) sum += a.at(i, j) * v.entries[j];
    out.entries[i] = sum;
  }
  return out;
}

StateVector expm_apply(const Generator& a, double t, const StateVector& v) {
  require_same_dim(a.dim(), v.dim(), "expm_apply");
  if (!(t >= 0.0)) throw std::domain_error("expm_apply: t must be >= 0");
  const std::size_t n = a.dim();
  if (t == 0.0) return v;

  StateVector out;
  switch (a.structure()) {
    case StructureTag::diagonal: {
      out.entries.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        out.entries[i] = std::exp(t * a.at(i, i)) * v.entries[i];
      break;
    }
    case StructureTag::shift: {
      // e^{t(alpha I + beta N)} = e^{alpha t} sum_{k<n} (beta t)^k/k! N^k,
      // exact because N^n = 0.
      const Complex alpha = a.at(0, 0);
      const Complex beta = n > 1 ? a.at(0, 1) : Complex(0.0);
      std::vector<Complex> shifted = v.entries;  // N^k v
      std::vector<Complex> acc = v.entries;
      Complex coeff(1.0);
      for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i + 1 < n; ++i) shifted[i] = shifted[i + 1];
        shifted[n - 1] = Complex(0.0);
        coeff *= beta * t / static_cast<double>(k);
        for (std::size_t i = 0; i < n; ++i) acc[i] += coeff * shifted[i];
      }
      const Complex factor = std::exp(alpha * t);
      for (auto& z : acc) z *= factor;
      out.entries = std::move(acc);
      break;
    }
    case StructureTag::skew_dissipative:
    case StructureTag::dense:
    case StructureTag::tridiagonal:
      // Skew-dissipative generators factor as e^{tA} = e^{-omega t} e^{tS}
      // inside exp_matrix, keeping the Pade argument unitary and the decay
      // factor exact; the other tags go through the plain dense path.
      out = mat_apply(n, exp_matrix(a, t), v);
      break;
  }
  for (const auto& z : out.entries)
    if (!is_finite(z)) throw std::overflow_error("expm_apply: non-finite result");
  return out;
}

double norm(const StateVector& v, NormKind kind) {
  switch (kind) {
    case NormKind::l1: {
      double sum = 0.0;
      for (const auto& z : v.entries) sum += std::abs(z);
      return sum;
    }
    case NormKind::l2: {
      double sum = 0.0;
      for (const auto& z : v.entries) sum += std::norm(z);
      return std::sqrt(sum);
    }
    case NormKind::linf: {
      double best = 0.0;
      for (const auto& z : v.entries) best = std::max(best, std::abs(z));
      return best;
    }
  }
  return 0.0;
}

Complex inner(const StateVector& u, const StateVector& v) {
  require_same_dim(u.dim(), v.dim(), "inner");
  Complex sum(0.0);
  for (std::size_t i = 0; i < u.dim(); ++i) sum += u.entries[i] * std::conj(v.entries[i]);
  return sum;
}

double verify_integral_representation(const Generator& a, const StateVector& f,
                                      double t, int panels) {
  require_same_dim(a.dim(), f.dim(), "verify_integral_representation");
  if (!(t >= 0.0)) throw std::domain_error("verify_integral_representation: t must be >= 0");
  if (panels <= 0 || panels % 2 != 0)
    throw std::invalid_argument("verify_integral_representation: panel count must be even");

  const std::size_t n = a.dim();
  const StateVector af = apply(a, f);
  const StateVector a2f = apply(a, af);

  // Composite Simpson of (t - tau) e^{tau A} A^2 f over [0, t]. On the
  // uniform node set the orbit advances by one fixed step matrix
  // e^{hA}, which avoids a fresh Pade solve per node; diagonal and shift
  // structures keep their exact per-node forms instead.
  std::vector<Complex> quad(n, Complex(0.0));
  if (t > 0.0) {
    const double h = t / panels;
    const bool stepping = a.structure() != StructureTag::diagonal &&
                          a.structure() != StructureTag::shift;
    Mat step;
    if (stepping) step = exp_matrix(a, h);
    StateVector orbit = a2f;
    for (int j = 0; j <= panels; ++j) {
      const double tau = j * h;
      if (j > 0) orbit = stepping ? mat_apply(n, step, orbit) : expm_apply(a, tau, a2f);
      const double weight = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      const double factor = weight * (t - tau);
      for (std::size_t i = 0; i < n; ++i) quad[i] += factor * orbit.entries[i];
    }
    const double scale = h / 3.0;
    for (auto& z : quad) z *= scale;
  }

  const StateVector lhs = expm_apply(a, t, f);
  StateVector defect;
  defect.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    defect.entries[i] = lhs.entries[i] - f.entries[i] - t * af.entries[i] - quad[i];
  return norm(defect, NormKind::l2);
}

}  // namespace orbitlab
