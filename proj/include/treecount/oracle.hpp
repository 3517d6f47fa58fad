#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treecount/graph.hpp"
#include "treecount/interval.hpp"

namespace treecount {

/// Nonnegative arbitrary-precision spanning-tree count.
class BigCount {
 public:
  BigCount() = default;
  explicit BigCount(mpz_class value);
  explicit BigCount(unsigned long value) : BigCount(mpz_class(value)) {}

  const mpz_class& value() const { return value_; }
  std::string to_string() const { return value_.get_str(); }
  std::size_t bit_length() const;
  std::size_t decimal_digits() const;

  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend bool operator==(const BigCount& a, unsigned long b) { return a.value_ == b; }

 private:
  mpz_class value_;
};

/// Dense square matrix of big integers, row-major.
class IntegerMatrix {
 public:
  explicit IntegerMatrix(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  mpz_class& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  bool is_symmetric() const;

 private:
  std::size_t dim_;
  std::vector<mpz_class> entries_;
};

/// Combinatorial Laplacian with loops stripped and parallel edges summed.
IntegerMatrix laplacian(const EdgeMultiset& graph);
/// Laplacian with row and column `removed` deleted.
IntegerMatrix reduced_laplacian(const EdgeMultiset& graph, std::uint64_t removed = 0);

/// Exact determinant by fraction-free Bareiss elimination with row pivoting.
mpz_class bareiss_determinant(IntegerMatrix m);

/// Matrix-tree count; 0 for a disconnected graph. Rejects the empty graph.
BigCount count_spanning_trees_oracle(const EdgeMultiset& graph);

/// (1/n) · product of the nonzero eigenvalues, as an enclosure. Zeros are
/// detected from the exact angles; throws DisconnectedGraph unless there is
/// exactly one.
Interval eigenproduct_estimate(std::span<const SpectrumPoint> spectrum, std::uint64_t n);

/// ln of the same quantity, for spectra whose product is too large to form.
Interval log_eigenproduct(std::span<const SpectrumPoint> spectrum, std::uint64_t n);

}  // namespace treecount
