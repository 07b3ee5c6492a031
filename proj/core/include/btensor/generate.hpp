#pragma once

#include <cstdint>
#include <string>

#include "btensor/sym_tensor.hpp"

namespace btensor {

/// Tensor classes the generator can produce with provable membership.
enum class TensorKind {
  B,                   // strict row conditions, margin in (0.01, 0.1]
  B0,                  // boundary row conditions (margin 0)
  ZDiagDom,            // Z tensor with diag = R_i per row
  ZStrictDiagDom,      // Z tensor with diag = R_i + margin
  SymmetricArbitrary,  // unconstrained entries in [-1, 1]
  Nonnegative          // all entries in [0, 1]
};

TensorKind tensor_kind_from_string(const std::string& s);
const char* to_string(TensorKind k);

/// Reproducible recipe: identical GenSpec yields the identical tensor on
/// every platform (splitmix64 stream, fixed canonical traversal order).
struct GenSpec {
  TensorKind kind = TensorKind::SymmetricArbitrary;
  int order = 2;
  int dim = 1;
  std::uint64_t seed = 0;
  double density = 1.0;  // fraction of off-diagonal canonical entries sampled
};

/// Samples off-diagonal canonical entries uniform in [-1,1] at the given
/// density, then sets each diagonal so the requested class holds with tol 0
/// (diagonal lift; Z kinds first flip positive off-diagonals negative).
SymTensor generate(const GenSpec& spec);

}  // namespace btensor
