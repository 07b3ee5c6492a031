#include "btensor/sym_tensor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace btensor {

namespace {

constexpr int kMaxOrder = 20;  // 20! is the largest factorial fitting in 64 bits

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void check_shape(int order, int dim) {
  if (order < 2) throw std::invalid_argument("tensor order must be >= 2");
  if (order > kMaxOrder) throw std::invalid_argument("tensor order must be <= 20");
  if (dim < 1) throw std::invalid_argument("tensor dimension must be >= 1");
}

std::string index_to_string(const MultiIndex& idx) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (j) os << ',';
    os << idx[j];
  }
  os << ')';
  return os.str();
}

}  // namespace

CanonicalIndex canonicalize(const MultiIndex& idx, int dim) {
  if (idx.size() < 2)
    throw std::invalid_argument("multi-index must have length >= 2");
  if (idx.size() > static_cast<std::size_t>(kMaxOrder))
    throw std::invalid_argument("multi-index length must be <= 20");
  CanonicalIndex c;
  c.idx = idx;
  for (int i : c.idx) {
    if (i < 1 || i > dim)
      throw std::invalid_argument("multi-index component " + std::to_string(i) +
                                  " out of range [1, " + std::to_string(dim) + "]");
  }
  std::sort(c.idx.begin(), c.idx.end());
  c.multiplicity = multiplicity(c.idx);
  return c;
}

std::uint64_t multiplicity(const MultiIndex& canonical) {
  const int m = static_cast<int>(canonical.size());
  std::uint64_t denom = 1;
  int run = 1;
  for (std::size_t j = 1; j < canonical.size(); ++j) {
    if (canonical[j] == canonical[j - 1]) {
      ++run;
      denom *= static_cast<std::uint64_t>(run);
    } else {
      run = 1;
    }
  }
  return factorial(m) / denom;
}

std::uint64_t perm_count_first(const MultiIndex& canonical, int i) {
  const int m = static_cast<int>(canonical.size());
  int count_i = 0;
  for (int v : canonical)
    if (v == i) ++count_i;
  if (count_i == 0) return 0;
  // multiplicity * count_i / m, computed as the multinomial over m-1 slots
  // with one copy of i removed (stays exact in 64 bits).
  std::uint64_t denom = 1;
  int run = 1;
  MultiIndex rest;
  rest.reserve(canonical.size() - 1);
  bool removed = false;
  for (int v : canonical) {
    if (!removed && v == i) {
      removed = true;
      continue;
    }
    rest.push_back(v);
  }
  for (std::size_t j = 1; j < rest.size(); ++j) {
    if (rest[j] == rest[j - 1]) {
      ++run;
      denom *= static_cast<std::uint64_t>(run);
    } else {
      run = 1;
    }
  }
  return factorial(m - 1) / denom;
}

SymTensor::SymTensor(int order, int dim) : order_(order), dim_(dim) {
  check_shape(order, dim);
}

double SymTensor::at(const MultiIndex& idx) const {
  if (idx.size() != static_cast<std::size_t>(order_))
    throw std::invalid_argument("multi-index length does not match tensor order");
  CanonicalIndex c = canonicalize(idx, dim_);
  auto it = entries_.find(c.idx);
  return it == entries_.end() ? 0.0 : it->second;
}

void SymTensor::set(const MultiIndex& idx, double value) {
  if (idx.size() != static_cast<std::size_t>(order_))
    throw std::invalid_argument("multi-index length does not match tensor order");
  CanonicalIndex c = canonicalize(idx, dim_);
  if (value == 0.0) {
    entries_.erase(c.idx);
  } else {
    entries_[std::move(c.idx)] = value;
  }
}

void SymTensor::add(const MultiIndex& idx, double value) {
  if (idx.size() != static_cast<std::size_t>(order_))
    throw std::invalid_argument("multi-index length does not match tensor order");
  CanonicalIndex c = canonicalize(idx, dim_);
  auto it = entries_.find(c.idx);
  double v = (it == entries_.end() ? 0.0 : it->second) + value;
  if (v == 0.0) {
    if (it != entries_.end()) entries_.erase(it);
  } else if (it != entries_.end()) {
    it->second = v;
  } else {
    entries_[std::move(c.idx)] = v;
  }
}

double SymTensor::max_abs_entry() const noexcept {
  double m = 0.0;
  for (const auto& [idx, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

SymTensor identity(int order, int dim) {
  SymTensor t(order, dim);
  for (int i = 1; i <= dim; ++i) {
    t.set(MultiIndex(static_cast<std::size_t>(order), i), 1.0);
  }
  return t;
}

namespace detail {

std::vector<int> checked_index_set(const std::vector<int>& index_set, int dim) {
  if (index_set.empty()) throw std::invalid_argument("index set must be non-empty");
  std::vector<int> j = index_set;
  std::sort(j.begin(), j.end());
  if (j.front() < 1 || j.back() > dim)
    throw std::invalid_argument("index set component out of range [1, " +
                                std::to_string(dim) + "]");
  if (std::adjacent_find(j.begin(), j.end()) != j.end())
    throw std::invalid_argument("index set contains a duplicate index");
  return j;
}

void for_each_canonical(int order, int dim,
                        const std::function<void(const MultiIndex&)>& fn) {
  MultiIndex idx(static_cast<std::size_t>(order), 1);
  while (true) {
    fn(idx);
    // next non-decreasing tuple over [1, dim]
    int pos = order - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim) --pos;
    if (pos < 0) break;
    int v = idx[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < order; ++q) idx[static_cast<std::size_t>(q)] = v;
  }
}

}  // namespace detail

SymTensor partial_all_one(int order, int dim, const std::vector<int>& index_set) {
  std::vector<int> j = detail::checked_index_set(index_set, dim);
  SymTensor t(order, dim);
  // canonical indices over J = canonical indices over [|J|] mapped through J
  const int r = static_cast<int>(j.size());
  detail::for_each_canonical(order, r, [&](const MultiIndex& local) {
    MultiIndex global(local.size());
    for (std::size_t q = 0; q < local.size(); ++q)
      global[q] = j[static_cast<std::size_t>(local[q] - 1)];
    t.set(global, 1.0);
  });
  return t;
}

namespace {

std::uint64_t checked_pow_u64(int base, int exp) {
  std::uint64_t r = 1;
  for (int k = 0; k < exp; ++k) {
    if (r > UINT64_MAX / static_cast<std::uint64_t>(base))
      throw std::invalid_argument("n^m does not fit in 64 bits");
    r *= static_cast<std::uint64_t>(base);
  }
  return r;
}

}  // namespace

SymTensor from_dense(int order, int dim, std::span<const double> values,
                     bool symmetrize, double tol) {
  check_shape(order, dim);
  const std::uint64_t total = checked_pow_u64(dim, order);
  if (values.size() != total)
    throw std::invalid_argument("dense value count " + std::to_string(values.size()) +
                                " does not equal n^m = " + std::to_string(total));

  struct Slot {
    double value;      // first seen (or running sum when symmetrizing)
    MultiIndex first;  // tuple that produced it, for diagnostics
    std::uint64_t count;
  };
  std::map<MultiIndex, Slot> slots;

  MultiIndex tuple(static_cast<std::size_t>(order), 1);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    const double v = values[flat];
    MultiIndex key = tuple;
    std::sort(key.begin(), key.end());
    auto it = slots.find(key);
    if (it == slots.end()) {
      slots.emplace(std::move(key), Slot{v, tuple, 1});
    } else if (symmetrize) {
      it->second.value += v;
      it->second.count += 1;
    } else if (std::abs(v - it->second.value) > tol) {
      throw std::invalid_argument(
          "dense input not symmetric within tol: entry " + index_to_string(tuple) +
          " = " + std::to_string(v) + " vs entry " +
          index_to_string(it->second.first) + " = " +
          std::to_string(it->second.value) + "; offending pair (" +
          index_to_string(it->second.first) + "," + index_to_string(tuple) + ")");
    }
    // advance row-major with the last index fastest
    for (int pos = order - 1; pos >= 0; --pos) {
      auto& c = tuple[static_cast<std::size_t>(pos)];
      if (c < dim) {
        ++c;
        break;
      }
      c = 1;
    }
  }

  SymTensor t(order, dim);
  for (auto& [key, slot] : slots) {
    const double v = symmetrize ? slot.value / static_cast<double>(slot.count)
                                : slot.value;
    t.set(key, v);
  }
  return t;
}

std::vector<double> to_dense(const SymTensor& a) {
  const std::uint64_t total = checked_pow_u64(a.dim(), a.order());
  if (total > 10'000'000ull)
    throw std::invalid_argument("dense materialization refused: n^m > 10^7");
  std::vector<double> out(total, 0.0);
  MultiIndex tuple(static_cast<std::size_t>(a.order()), 1);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    MultiIndex key = tuple;
    std::sort(key.begin(), key.end());
    auto it = a.entries().find(key);
    if (it != a.entries().end()) out[flat] = it->second;
    for (int pos = a.order() - 1; pos >= 0; --pos) {
      auto& c = tuple[static_cast<std::size_t>(pos)];
      if (c < a.dim()) {
        ++c;
        break;
      }
      c = 1;
    }
  }
  return out;
}

double eval_xm(const SymTensor& a, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(a.dim()))
    throw std::invalid_argument("vector length does not match tensor dimension");
  double sum = 0.0;
  for (const auto& [idx, v] : a.entries()) {
    double prod = v * static_cast<double>(multiplicity(idx));
    for (int i : idx) prod *= x[static_cast<std::size_t>(i - 1)];
    sum += prod;
  }
  return sum;
}

std::vector<double> apply(const SymTensor& a, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(a.dim()))
    throw std::invalid_argument("vector length does not match tensor dimension");
  std::vector<double> out(static_cast<std::size_t>(a.dim()), 0.0);
  for (const auto& [idx, v] : a.entries()) {
    int prev = 0;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const int i = idx[pos];
      if (i == prev) continue;  // each distinct row index once
      prev = i;
      // product over idx with one occurrence of i removed
      double prod = v * static_cast<double>(perm_count_first(idx, i));
      bool skipped = false;
      for (int q : idx) {
        if (!skipped && q == i) {
          skipped = true;
          continue;
        }
        prod *= x[static_cast<std::size_t>(q - 1)];
      }
      out[static_cast<std::size_t>(i - 1)] += prod;
    }
  }
  return out;
}

std::vector<double> power_vec(std::span<const double> x, int p) {
  if (p < 1) throw std::invalid_argument("power_vec exponent must be >= 1");
  std::vector<double> out(x.begin(), x.end());
  for (auto& c : out) {
    double r = c;
    for (int k = 1; k < p; ++k) r *= c;
    c = r;
  }
  return out;
}

SymTensor principal_subtensor(const SymTensor& a, const std::vector<int>& index_set) {
  std::vector<int> j = detail::checked_index_set(index_set, a.dim());
  // global index -> 1-based position within sorted J
  std::vector<int> pos(static_cast<std::size_t>(a.dim()) + 1, 0);
  for (std::size_t q = 0; q < j.size(); ++q)
    pos[static_cast<std::size_t>(j[q])] = static_cast<int>(q) + 1;

  SymTensor t(a.order(), static_cast<int>(j.size()));
  for (const auto& [idx, v] : a.entries()) {
    MultiIndex local(idx.size());
    bool inside = true;
    for (std::size_t q = 0; q < idx.size(); ++q) {
      const int p = pos[static_cast<std::size_t>(idx[q])];
      if (p == 0) {
        inside = false;
        break;
      }
      local[q] = p;
    }
    if (inside) t.set(local, v);
  }
  return t;
}

SymTensor axpy(const SymTensor& a, double c, const SymTensor& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("axpy operands must share order and dimension");
  SymTensor t = a;
  for (const auto& [idx, v] : b.entries()) t.add(idx, c * v);
  return t;
}

std::string content_digest(const SymTensor& a) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  auto feed = [&h](std::uint64_t word) {
    for (int k = 0; k < 8; ++k) {
      h ^= (word >> (8 * k)) & 0xffull;
      h *= 1099511628211ull;
    }
  };
  feed(static_cast<std::uint64_t>(a.order()));
  feed(static_cast<std::uint64_t>(a.dim()));
  for (const auto& [idx, v] : a.entries()) {
    for (int i : idx) feed(static_cast<std::uint64_t>(i));
    feed(std::bit_cast<std::uint64_t>(v));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace btensor
