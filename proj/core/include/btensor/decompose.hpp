#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btensor/sym_tensor.hpp"

namespace btensor {

/// Thrown when an input tensor fails the class membership a routine requires;
/// carries the first violated row for diagnostics.
class NotInClassError : public std::runtime_error {
 public:
  NotInClassError(const std::string& what, int row)
      : std::runtime_error(what), violated_row_(row) {}
  int violated_row() const noexcept { return violated_row_; }

 private:
  int violated_row_;
};

/// One extraction step: subtract h * E^J from the working tensor.
struct DecompStep {
  std::vector<int> J;  // sorted index set
  double h = 0.0;      // positive multiple
};

/// Witness of the decomposition input = residual + sum_k h_k * E^{J_k},
/// with the residual a (strictly, when `strict`) diagonally dominated
/// symmetric Z tensor. Step sets are strictly nested: J_{k+1} is a proper
/// subset of J_k.
struct DecompCert {
  std::vector<DecompStep> steps;
  SymTensor residual;
  bool strict = false;
  std::string input_digest;
  double recon_error = 0.0;
  double tol = 0.0;
};

/// Rows holding at least one positive off-diagonal entry; equivalently, the
/// indices appearing in any positive off-diagonal canonical entry.
std::vector<int> j_hat(const SymTensor& a);

/// Peels positive multiples of partially all one tensors off a B0 (or, with
/// `strict`, a B) tensor until no positive off-diagonal entry remains.
/// Each step uses J_k = j_hat(B_k) and h_k = min over rows in J_k of the
/// largest off-diagonal row entry; after each subtraction entries of
/// magnitude <= tol * max|initial entry| are snapped to zero. Terminates in
/// at most n steps.
/// Throws NotInClassError if the input fails is_B0 (is_B when strict).
DecompCert decompose_B0(const SymTensor& a, double tol, bool strict = false);

/// Re-checks a certificate against the tensor it claims to decompose.
struct VerifyReport {
  bool valid = false;
  std::string first_violation;  // empty when valid
  double max_deviation = 0.0;   // entrywise reconstruction error
};

/// Recomputes residual + sum h_k E^{J_k} and re-runs the residual class
/// checks. Throws std::invalid_argument if the digest shows `a` is not the
/// certificate's input.
VerifyReport verify_cert(const SymTensor& a, const DecompCert& cert, double tol);

enum class Definiteness { PD, PSD, NotCertified };

struct CertifyResult {
  Definiteness verdict = Definiteness::NotCertified;
  std::optional<DecompCert> cert;
};

/// Sufficient positivity certificate for even-order symmetric tensors:
/// B gives PD, B0 gives PSD, anything else is NotCertified (no claim).
/// Throws std::invalid_argument for odd order.
CertifyResult certify_definiteness(const SymTensor& a, double tol);

const char* to_string(Definiteness d);

}  // namespace btensor
