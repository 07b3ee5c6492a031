#include "btensor/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "accum.hpp"

namespace btensor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RowAccum {
  double diag = 0.0;
  detail::Accum signed_off;  // sum of off-diagonal row entries
  detail::Accum abs_off;     // sum of their absolute values (R_i)
  double max_stored_off = -kInf;
  std::uint64_t covered_off = 0;  // dense off-diagonal slots with stored entries
};

// n^{m-1}, saturating; only compared against covered_off.
std::uint64_t row_slot_count(int dim, int order) {
  std::uint64_t r = 1;
  for (int k = 0; k < order - 1; ++k) {
    if (r > UINT64_MAX / static_cast<std::uint64_t>(dim)) return UINT64_MAX;
    r *= static_cast<std::uint64_t>(dim);
  }
  return r;
}

bool is_diagonal(const MultiIndex& idx) {
  for (int v : idx)
    if (v != idx.front()) return false;
  return true;
}

std::vector<RowAccum> accumulate_rows(const SymTensor& a) {
  std::vector<RowAccum> rows(static_cast<std::size_t>(a.dim()));
  for (const auto& [idx, v] : a.entries()) {
    if (is_diagonal(idx)) {
      rows[static_cast<std::size_t>(idx.front() - 1)].diag = v;
      continue;
    }
    int prev = 0;
    for (int i : idx) {
      if (i == prev) continue;
      prev = i;
      auto& r = rows[static_cast<std::size_t>(i - 1)];
      const double w = static_cast<double>(perm_count_first(idx, i));
      r.signed_off.add(v * w);
      r.abs_off.add(std::abs(v) * w);
      r.max_stored_off = std::max(r.max_stored_off, v);
      r.covered_off += perm_count_first(idx, i);
    }
  }
  return rows;
}

// margin = diag - R_i, carried through the cascade so the comparison against
// zero reflects the exact sum of stored entries.
double row_margin(const RowAccum& r) {
  detail::Accum m{-r.abs_off.hi, -r.abs_off.lo};
  m.add(r.diag);
  return m.value();
}

double row_sum_value(const RowAccum& r) {
  detail::Accum s = r.signed_off;
  s.add(r.diag);
  return s.value();
}

double dense_max_offdiag(const RowAccum& r, std::uint64_t slots) {
  if (slots <= 1) return -kInf;  // n = 1: no off-diagonal positions
  if (r.covered_off < slots - 1) return std::max(r.max_stored_off, 0.0);
  return r.max_stored_off;
}

}  // namespace

std::vector<RowStats> row_stats(const SymTensor& a) {
  const auto rows = accumulate_rows(a);
  const std::uint64_t slots = row_slot_count(a.dim(), a.order());
  std::vector<RowStats> out;
  out.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    RowStats s;
    s.row = static_cast<int>(k) + 1;
    s.diag = rows[k].diag;
    s.row_sum = row_sum_value(rows[k]);
    s.max_offdiag = dense_max_offdiag(rows[k], slots);
    s.abs_offdiag_sum = rows[k].abs_off.value();
    out.push_back(s);
  }
  return out;
}

int first_violating_row(const SymTensor& a, double tol, bool strict) {
  const auto rows = accumulate_rows(a);
  const std::uint64_t slots = row_slot_count(a.dim(), a.order());
  const double npow = std::pow(static_cast<double>(a.dim()), a.order() - 1);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double sum = row_sum_value(rows[k]);
    const double avg = sum / npow;
    const double moff = dense_max_offdiag(rows[k], slots);
    if (strict) {
      if (!(sum > tol && avg > moff + tol)) return static_cast<int>(k) + 1;
    } else {
      if (!(sum >= -tol && avg >= moff - tol)) return static_cast<int>(k) + 1;
    }
  }
  return 0;
}

bool is_B(const SymTensor& a, double tol) {
  return first_violating_row(a, tol, /*strict=*/true) == 0;
}

bool is_B0(const SymTensor& a, double tol) {
  return first_violating_row(a, tol, /*strict=*/false) == 0;
}

bool is_Z(const SymTensor& a, double tol) {
  for (const auto& [idx, v] : a.entries())
    if (!is_diagonal(idx) && v > tol) return false;
  return true;
}

bool is_dd(const SymTensor& a, double tol) {
  for (const auto& r : accumulate_rows(a))
    if (!(row_margin(r) >= -tol)) return false;
  return true;
}

bool is_sdd(const SymTensor& a, double tol) {
  for (const auto& r : accumulate_rows(a))
    if (!(row_margin(r) > tol)) return false;
  return true;
}

MCertificate certify_M_via_dd(const SymTensor& a, double tol) {
  MCertificate c;
  const bool z = is_Z(a, tol);
  c.is_M = z && is_dd(a, tol);
  c.is_strong_M = z && is_sdd(a, tol);
  return c;
}

GershgorinIntervals gershgorin(const SymTensor& a) {
  GershgorinIntervals g;
  for (const auto& s : row_stats(a))
    g.rows.push_back({s.diag - s.abs_offdiag_sum, s.diag + s.abs_offdiag_sum});
  return g;
}

Classification classify(const SymTensor& a, double tol) {
  Classification c;
  c.tol = tol;
  c.is_B = is_B(a, tol);
  c.is_B0 = is_B0(a, tol);
  c.is_Z = is_Z(a, tol);
  c.is_dd = is_dd(a, tol);
  c.is_sdd = is_sdd(a, tol);
  c.is_M_certified = c.is_Z && c.is_dd;
  return c;
}

}  // namespace btensor
