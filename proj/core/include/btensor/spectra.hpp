#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "btensor/sym_tensor.hpp"

namespace btensor {

/// Candidate solution of A x^{m-1} = lambda x^{[m-1]} with x on the m-norm
/// unit sphere (sum |x_i|^m = 1); residual is the max-norm defect.
struct HEigenPair {
  double lambda = 0.0;
  std::vector<double> x;
  double residual = 0.0;
};

/// Max-norm of A x^{m-1} - lambda x^{[m-1]} after m-norm normalization of x.
/// Throws std::invalid_argument for the zero vector.
double h_residual(const SymTensor& a, double lambda, std::span<const double> x);

struct SpectrumReport {
  std::optional<double> min_h_estimate;  // absent when no restart converged
  std::optional<HEigenPair> best_pair;
  std::vector<HEigenPair> pairs;  // converged pairs, sorted by (lambda, lex x)
  int restarts = 0;
  int converged_count = 0;
  int max_iters = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  long total_iterations = 0;
  bool conclusive() const { return converged_count > 0; }
};

/// Smallest H-eigenvalue estimate by multi-start projected gradient descent
/// of A x^m on the m-norm unit sphere (even order only: critical points there
/// satisfy the eigenvalue equation, and the critical value equals lambda).
/// Backtracking step halving; initial step 1/(m * max|entry| * n^{m-1}).
/// Deterministic for fixed (seed, restarts, max_iters).
SpectrumReport min_h_eigenvalue(const SymTensor& a, int restarts, int max_iters,
                                std::uint64_t seed, double tol = 1e-10);

/// Power-iteration estimate of the spectral radius of a nonnegative tensor,
/// with Collatz-style bracketing bounds refined each sweep. `converged` is
/// false on stagnation; the bounds still bracket rho for positive iterates.
struct RadiusEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
};
RadiusEstimate spectral_radius_nonneg(const SymTensor& b, double tol = 1e-10,
                                      int max_iters = 10000);

/// Brute-force minimum of A x^m over an angular grid on the Euclidean unit
/// sphere; n <= 3 only. A negative minimum certifies "not PSD"; a positive
/// one is evidence, not proof. `resolution` is the number of grid steps per
/// pi radians.
struct SphereScan {
  double min_value = 0.0;
  std::vector<double> argmin;
};
SphereScan sphere_min_oracle(const SymTensor& a, int resolution = 180);

}  // namespace btensor
