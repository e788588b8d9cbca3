/**
 * @file kato.hpp
 * @brief Hilbert-space certification chain: the three-vector norm identity,
 *        restricted dissipativity, the orbital contractivity family, the
 *        lambda inequality, and the resulting certificate for
 *        ||Af||^2 <= 2 ||f|| ||A^2 f||.
 *
 * Everything here is l2-only; the chain needs an inner product.
 */
#pragma once

#include <span>
#include <vector>

#include "orbitlab/landau.hpp"
#include "orbitlab/operators.hpp"

namespace orbitlab {

/// | ||f1+f2+f3||^2 + ||f2||^2 - ||f1||^2 - ||f3||^2 - 2 Re(f1+f2 | f2+f3) |.
/// Exact algebraic identity; the residual is pure roundoff, bounded by
/// 1e-12 (||f1||^2 + ||f2||^2 + ||f3||^2 + 1).
double lemma_identity_residual(const StateVector& f1, const StateVector& f2,
                               const StateVector& f3);

/// Re(A(A + lambda)f | (A + lambda)f). Nonpositive (within roundoff) on
/// instances whose contractivity family passes.
double restricted_dissipativity(const Generator& a, const StateVector& f,
                                double lambda);

struct ContractivityCheck {
  double max_ratio = 0.0;
  double argmax_t = 0.0;
  bool degenerate = false;  // (A + lambda) f = 0: eigenvector, vacuous pass
};

/// max over the grid of ||e^{tA}(A+lambda)f|| / ||(A+lambda)f|| in l2.
ContractivityCheck orbital_contractivity(const Generator& a, const StateVector& f,
                                         double lambda, std::span<const double> t_grid);

/// ||A^2 f||^2 + lambda^4 ||f||^2 - lambda^2 ||Af||^2. Nonnegative (within
/// roundoff) whenever restricted dissipativity holds at this lambda.
double lambda_inequality_margin(const Generator& a, const StateVector& f,
                                double lambda);

struct KatoProbe {
  Generator generator;
  StateVector f;                 // nonzero
  std::vector<double> lambdas;   // empty: default grid around lambda*
  double t_max = 50.0;           // contractivity horizon
  int grid_points = 2000;
  double t_min = 1e-4;
  double tolerance = 1e-10;
};

struct KatoLambdaRow {
  double lambda = 0.0;
  double max_ratio = 0.0;
  double argmax_t = 0.0;
  bool degenerate = false;
  double dissipativity = 0.0;
  double margin = 0.0;  // lambda-inequality margin
};

struct KatoCertificate {
  std::vector<KatoLambdaRow> rows;
  double lambda_star = 0.0;      // sqrt(||A^2 f|| / ||f||)
  double kato_margin = 0.0;      // 2 ||f|| ||A^2 f|| - ||Af||^2
  double scale = 0.0;            // 2 ||f|| ||A^2 f|| + ||Af||^2
  bool contractivity_pass = false;
  bool margin_pass = false;
  bool certified = false;
  double tolerance = 1e-10;
  std::vector<double> t_grid;
};

/// Geometric grid of 25 lambdas on [lambda_star/10, 10 lambda_star] with
/// lambda_star pinned at the center.
std::vector<double> default_lambda_grid(double lambda_star);

/// Runs the contractivity family over the lambda grid, records restricted
/// dissipativity and lambda-inequality margins per lambda, and checks the
/// final margin at lambda*. When A^2 f = 0 the certificate degenerates to
/// requiring Af = 0 (within roundoff scale), and a fixed fallback lambda
/// grid is used.
KatoCertificate kato_certificate(const KatoProbe& probe);

}  // namespace orbitlab
