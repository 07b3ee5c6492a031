#include "btensor/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "btensor/classify.hpp"

namespace btensor {

namespace {

bool is_diagonal(const MultiIndex& idx) {
  for (int v : idx)
    if (v != idx.front()) return false;
  return true;
}

// Largest off-diagonal stored entry per row, -inf when a row has none.
// Absent (zero) entries are irrelevant here: only strictly positive values
// drive the construction.
std::vector<double> max_positive_off(const SymTensor& a) {
  std::vector<double> d(static_cast<std::size_t>(a.dim()),
                        -std::numeric_limits<double>::infinity());
  for (const auto& [idx, v] : a.entries()) {
    if (is_diagonal(idx)) continue;
    int prev = 0;
    for (int i : idx) {
      if (i == prev) continue;
      prev = i;
      auto& di = d[static_cast<std::size_t>(i - 1)];
      di = std::max(di, v);
    }
  }
  return d;
}

void snap_small_entries(SymTensor& a, double threshold) {
  if (threshold <= 0.0) return;
  std::vector<MultiIndex> doomed;
  for (const auto& [idx, v] : a.entries())
    if (std::abs(v) <= threshold) doomed.push_back(idx);
  for (const auto& idx : doomed) a.set(idx, 0.0);
}

double reconstruction_error(const SymTensor& a, const DecompCert& cert) {
  SymTensor r = cert.residual;
  for (const auto& step : cert.steps)
    r = axpy(r, step.h, partial_all_one(a.order(), a.dim(), step.J));
  double dev = 0.0;
  for (const auto& [idx, v] : r.entries())
    dev = std::max(dev, std::abs(v - a.at(idx)));
  for (const auto& [idx, v] : a.entries())
    dev = std::max(dev, std::abs(v - r.at(idx)));
  return dev;
}

}  // namespace

std::vector<int> j_hat(const SymTensor& a) {
  std::set<int> rows;
  for (const auto& [idx, v] : a.entries()) {
    if (v <= 0.0 || is_diagonal(idx)) continue;
    for (int i : idx) rows.insert(i);
  }
  return std::vector<int>(rows.begin(), rows.end());
}

DecompCert decompose_B0(const SymTensor& a, double tol, bool strict) {
  if (const int row = first_violating_row(a, tol, strict)) {
    throw NotInClassError(std::string("input is not a ") + (strict ? "B" : "B0") +
                              " tensor within tol: row " + std::to_string(row) +
                              " violates the row condition",
                          row);
  }

  DecompCert cert{.steps = {},
                  .residual = a,
                  .strict = strict,
                  .input_digest = content_digest(a),
                  .recon_error = 0.0,
                  .tol = tol};
  const double snap = tol * a.max_abs_entry();

  SymTensor work = a;
  std::size_t prev_size = static_cast<std::size_t>(a.dim()) + 1;
  for (int step = 0; step <= a.dim(); ++step) {
    const std::vector<int> jk = j_hat(work);
    if (jk.empty()) break;
    if (jk.size() >= prev_size)
      throw std::logic_error("decompose_B0: j_hat did not shrink");
    prev_size = jk.size();
    if (step == a.dim())
      throw std::logic_error("decompose_B0: did not terminate within n steps");

    const auto d = max_positive_off(work);
    double h = std::numeric_limits<double>::infinity();
    for (int i : jk) h = std::min(h, d[static_cast<std::size_t>(i - 1)]);
    if (!(h > 0.0))
      throw std::logic_error("decompose_B0: extraction multiple is not positive");

    work = axpy(work, -h, partial_all_one(a.order(), a.dim(), jk));
    snap_small_entries(work, snap);
    cert.steps.push_back({jk, h});
  }

  cert.residual = work;
  cert.recon_error = reconstruction_error(a, cert);
  return cert;
}

VerifyReport verify_cert(const SymTensor& a, const DecompCert& cert, double tol) {
  if (!a.same_shape(cert.residual))
    throw std::invalid_argument("certificate residual shape does not match tensor");
  if (content_digest(a) != cert.input_digest)
    throw std::invalid_argument(
        "certificate was issued for a different tensor (digest mismatch)");

  VerifyReport rep;
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    if (!(cert.steps[k].h > 0.0)) {
      rep.first_violation = "step " + std::to_string(k + 1) + ": h must be positive";
      return rep;
    }
  }
  for (std::size_t k = 1; k < cert.steps.size(); ++k) {
    const auto& outer = cert.steps[k - 1].J;
    const auto& inner = cert.steps[k].J;
    const bool proper_subset =
        inner.size() < outer.size() &&
        std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
    if (!proper_subset) {
      rep.first_violation = "step " + std::to_string(k + 1) +
                            ": J is not a proper subset of the previous step";
      return rep;
    }
  }
  if (!is_Z(cert.residual, tol)) {
    rep.first_violation = "residual is not a Z tensor";
    return rep;
  }
  if (cert.strict ? !is_sdd(cert.residual, tol) : !is_dd(cert.residual, tol)) {
    rep.first_violation = cert.strict
                              ? "residual is not strictly diagonally dominated"
                              : "residual is not diagonally dominated";
    return rep;
  }

  rep.max_deviation = reconstruction_error(a, cert);
  const double bound = std::max(tol, 1e-10) * std::max(1.0, a.max_abs_entry());
  if (rep.max_deviation > bound) {
    rep.first_violation = "reconstruction deviates by " +
                          std::to_string(rep.max_deviation) + " (allowed " +
                          std::to_string(bound) + ")";
    return rep;
  }
  rep.valid = true;
  return rep;
}

CertifyResult certify_definiteness(const SymTensor& a, double tol) {
  if (a.order() % 2 != 0)
    throw std::invalid_argument(
        "positive definiteness certification requires even order (no nonzero "
        "odd-order tensor is positive semi-definite)");
  CertifyResult res;
  if (is_B(a, tol)) {
    res.verdict = Definiteness::PD;
    res.cert = decompose_B0(a, tol, /*strict=*/true);
  } else if (is_B0(a, tol)) {
    res.verdict = Definiteness::PSD;
    res.cert = decompose_B0(a, tol, /*strict=*/false);
  } else {
    res.verdict = Definiteness::NotCertified;
  }
  return res;
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PD:
      return "PD";
    case Definiteness::PSD:
      return "PSD";
    default:
      return "NOT_CERTIFIED";
  }
}

}  // namespace btensor
