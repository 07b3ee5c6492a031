#pragma once

#include <cstdint>
#include <vector>

#include "btensor/sym_tensor.hpp"

namespace btensor {

/// Aggregates of the i-th row a_{i i2...im}. Off-diagonal means every entry
/// of the row except (i,...,i); absent entries count as zeros, so for n >= 2
/// a sparse row has max_offdiag >= 0. For n = 1 there are no off-diagonal
/// entries and max_offdiag is -infinity.
struct RowStats {
  int row = 0;
  double diag = 0.0;
  double row_sum = 0.0;
  double max_offdiag = 0.0;
  double abs_offdiag_sum = 0.0;  // Gershgorin radius R_i
};

std::vector<RowStats> row_stats(const SymTensor& a);

/// B tensor: every row sum positive and the row average strictly above every
/// off-diagonal entry of that row. B0 is the weak-inequality variant.
bool is_B(const SymTensor& a, double tol);
bool is_B0(const SymTensor& a, double tol);

/// First row (1-based) violating the B (strict) or B0 condition; 0 if none.
int first_violating_row(const SymTensor& a, double tol, bool strict);

/// Z tensor: all off-diagonal entries non-positive (within tol).
bool is_Z(const SymTensor& a, double tol);

/// Diagonal dominance per row: diag >= R_i (dd), diag > R_i (sdd).
bool is_dd(const SymTensor& a, double tol);
bool is_sdd(const SymTensor& a, double tol);

/// Sufficient M-tensor certificate: a diagonally dominated Z tensor is an
/// M tensor; strictly diagonally dominated gives a strong M tensor.
struct MCertificate {
  bool is_M = false;
  bool is_strong_M = false;
};
MCertificate certify_M_via_dd(const SymTensor& a, double tol);

/// Per-row eigenvalue localization intervals [diag - R_i, diag + R_i].
struct GershgorinIntervals {
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
  };
  std::vector<Interval> rows;

  bool contains(double lambda, double inflate) const {
    for (const auto& r : rows)
      if (lambda >= r.lo - inflate && lambda <= r.hi + inflate) return true;
    return false;
  }
};
GershgorinIntervals gershgorin(const SymTensor& a);

/// All membership verdicts under one tolerance; self-describing.
struct Classification {
  bool is_B = false;
  bool is_B0 = false;
  bool is_Z = false;
  bool is_dd = false;
  bool is_sdd = false;
  bool is_M_certified = false;
  double tol = 0.0;
};
Classification classify(const SymTensor& a, double tol);

namespace detail {

/// Row aggregation state. The off-diagonal sums are kept as two-sum cascades
/// (hi + lo) so that class predicates at tol = 0 are decided by the exact
/// values of the stored entries, and so the generator can pick diagonals
/// with the classifier's own arithmetic.
struct RowAccum {
  double diag = 0.0;  // stored diagonal entry, 0 when absent
  double signed_hi = 0.0, signed_lo = 0.0;
  double abs_hi = 0.0, abs_lo = 0.0;
  double max_stored_off;          // -inf when the row stores no off-diagonal
  std::uint64_t covered_off = 0;  // dense off-diagonal slots with stored entries
};

std::vector<RowAccum> row_accumulate(const SymTensor& a);
double row_sum_with(const RowAccum& r, double diag);
double row_margin_with(const RowAccum& r, double diag);  // diag - R_i
double row_max_offdiag(const RowAccum& r, int dim, int order);

}  // namespace detail

}  // namespace btensor
