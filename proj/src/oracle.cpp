#include "treecount/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "treecount/errors.hpp"

namespace treecount {

BigCount::BigCount(mpz_class value) : value_(std::move(value)) {
  if (value_ < 0) throw InvalidInput("spanning-tree counts are nonnegative");
}

std::size_t BigCount::bit_length() const {
  return value_ == 0 ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::size_t BigCount::decimal_digits() const { return value_.get_str().size(); }

IntegerMatrix::IntegerMatrix(std::size_t dimension) : dim_(dimension), entries_(dimension * dimension) {}

bool IntegerMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

IntegerMatrix laplacian(const EdgeMultiset& graph) {
  IntegerMatrix m(graph.vertex_count());
  for (const Edge& e : graph.edges()) {
    if (e.u == e.v) continue;
    const mpz_class w(static_cast<unsigned long>(e.multiplicity));
    m.at(e.u, e.u) += w;
    m.at(e.v, e.v) += w;
    m.at(e.u, e.v) -= w;
    m.at(e.v, e.u) -= w;
  }
  return m;
}

IntegerMatrix reduced_laplacian(const EdgeMultiset& graph, std::uint64_t removed) {
  const std::uint64_t n = graph.vertex_count();
  if (removed >= n) throw InvalidInput("removed vertex out of range");
  const IntegerMatrix full = laplacian(graph);
  IntegerMatrix m(n - 1);
  for (std::uint64_t i = 0, ri = 0; i < n; ++i) {
    if (i == removed) continue;
    for (std::uint64_t j = 0, rj = 0; j < n; ++j) {
      if (j == removed) continue;
      m.at(ri, rj) = full.at(i, j);
      ++rj;
    }
    ++ri;
  }
  return m;
}

mpz_class bareiss_determinant(IntegerMatrix m) {
  const std::size_t n = m.dimension();
  if (n == 0) return 1;
  mpz_class previous = 1;
  int sign = 1;
  mpz_class t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m.at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    const mpz_class& p = m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpz_class& lead = m.at(i, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        // m[i][j] = (m[i][j] p - m[i][k] m[k][j]) / previous, exact by Sylvester's identity.
        mpz_mul(t.get_mpz_t(), m.at(i, j).get_mpz_t(), p.get_mpz_t());
        mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), m.at(k, j).get_mpz_t());
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) m.at(i, k) = 0;
    previous = p;
  }
  return sign * m.at(n - 1, n - 1);
}

BigCount count_spanning_trees_oracle(const EdgeMultiset& graph) {
  if (graph.vertex_count() == 0) throw InvalidInput("graph has no vertices");
  mpz_class det = bareiss_determinant(reduced_laplacian(graph, 0));
  // The reduced Laplacian is positive semidefinite, so det >= 0.
  return BigCount(std::move(det));
}

namespace {

void require_single_zero(std::span<const SpectrumPoint> spectrum) {
  const auto zeros = std::count_if(spectrum.begin(), spectrum.end(), [](const SpectrumPoint& p) { return p.is_zero(); });
  if (zeros != 1)
    throw DisconnectedGraph("spectrum has " + std::to_string(zeros) + " zero eigenvalues; use the exact oracle");
}

Interval::Precision spectrum_precision(std::span<const SpectrumPoint> spectrum) {
  Interval::Precision p = 53;
  for (const SpectrumPoint& s : spectrum) p = std::max(p, s.value.precision());
  return p;
}

}  // namespace

Interval eigenproduct_estimate(std::span<const SpectrumPoint> spectrum, std::uint64_t n) {
  require_single_zero(spectrum);
  if (n == 0) throw InvalidInput("vertex count must be positive");
  Interval product(1L, spectrum_precision(spectrum));
  for (const SpectrumPoint& s : spectrum)
    if (!s.is_zero()) product *= s.value;
  return product / static_cast<long>(n);
}

Interval log_eigenproduct(std::span<const SpectrumPoint> spectrum, std::uint64_t n) {
  require_single_zero(spectrum);
  if (n == 0) throw InvalidInput("vertex count must be positive");
  const Interval::Precision prec = spectrum_precision(spectrum);
  Interval sum(prec);
  for (const SpectrumPoint& s : spectrum)
    if (!s.is_zero()) sum += log(s.value);
  return sum - log(Interval(static_cast<long>(n), prec));
}

}  // namespace treecount
