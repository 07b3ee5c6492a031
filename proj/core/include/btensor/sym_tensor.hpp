#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace btensor {

/// A multi-index (i1,...,im) with 1-based components. Canonical form is the
/// non-decreasing sort; one canonical index stands for all its permutations.
using MultiIndex = std::vector<int>;

struct CanonicalIndex {
  MultiIndex idx;             // sorted non-decreasing
  std::uint64_t multiplicity; // number of distinct permutations
};

/// Sorts `idx` and computes its permutation count m!/prod(count_j!).
/// Throws std::invalid_argument if any component is outside [1, dim].
CanonicalIndex canonicalize(const MultiIndex& idx, int dim);

/// Permutation count of the canonical index `idx`.
std::uint64_t multiplicity(const MultiIndex& canonical);

/// Number of permutations of canonical `idx` whose first position holds `i`,
/// i.e. multiplicity * count_i / m. Zero if `i` does not occur.
std::uint64_t perm_count_first(const MultiIndex& canonical, int i);

/// Order-m, dimension-n real symmetric tensor in multinomial-compressed form:
/// only canonical (sorted) multi-indices are stored, absent entries are zero.
/// Immutable in practice: operations build new tensors; `set`/`add` are for
/// construction by a single owner.
class SymTensor {
 public:
  SymTensor(int order, int dim);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }

  /// Entry value under symmetry; `idx` may be in any permutation order.
  double at(const MultiIndex& idx) const;
  /// Stores the entry for the canonical form of `idx`; exact zero erases.
  void set(const MultiIndex& idx, double value);
  /// In-place add to the canonical entry; exact-zero results are pruned.
  void add(const MultiIndex& idx, double value);

  const std::map<MultiIndex, double>& entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  double max_abs_entry() const noexcept;
  bool same_shape(const SymTensor& other) const noexcept {
    return order_ == other.order_ && dim_ == other.dim_;
  }
  bool operator==(const SymTensor& other) const noexcept = default;

 private:
  int order_;
  int dim_;
  std::map<MultiIndex, double> entries_;
};

/// Identity tensor: 1 on (i,...,i), 0 elsewhere.
SymTensor identity(int order, int dim);

/// Partially all one tensor E^J: 1 exactly when all indices lie in J.
/// J = [n] gives the all one tensor.
SymTensor partial_all_one(int order, int dim, const std::vector<int>& index_set);

/// Builds a SymTensor from a dense row-major array (last index fastest).
/// With `symmetrize`, each canonical entry is the mean over its permutations;
/// otherwise permutations must agree within `tol` or the offending index pair
/// is reported.
SymTensor from_dense(int order, int dim, std::span<const double> values,
                     bool symmetrize = false, double tol = 0.0);

/// Dense row-major materialization; guarded to n^m <= 10^7 elements.
std::vector<double> to_dense(const SymTensor& a);

/// The homogeneous form A x^m = sum a_{i1..im} x_{i1}...x_{im}.
double eval_xm(const SymTensor& a, std::span<const double> x);

/// The vector A x^{m-1}, component i = sum over the i-th row.
std::vector<double> apply(const SymTensor& a, std::span<const double> x);

/// Componentwise signed p-th power, x^{[p]}.
std::vector<double> power_vec(std::span<const double> x, int p);

/// Principal sub-tensor on `index_set`, re-indexed by the sorted order of J.
SymTensor principal_subtensor(const SymTensor& a, const std::vector<int>& index_set);

/// Entrywise A + c*B. Exact-zero results are pruned; no tolerance pruning.
SymTensor axpy(const SymTensor& a, double c, const SymTensor& b);

/// Content hash (64-bit FNV-1a over shape and canonical entries), hex string.
/// Identical tensors hash identically on every platform.
std::string content_digest(const SymTensor& a);

namespace detail {
/// Validates and normalizes an index set: sorted, unique, within [1, dim],
/// non-empty. Throws std::invalid_argument otherwise.
std::vector<int> checked_index_set(const std::vector<int>& index_set, int dim);
/// Visits all canonical multi-indices of shape (order, dim) in
/// lexicographic order.
void for_each_canonical(int order, int dim,
                        const std::function<void(const MultiIndex&)>& fn);
}  // namespace detail

}  // namespace btensor
