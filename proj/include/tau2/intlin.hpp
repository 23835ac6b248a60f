#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, ranks,
// kernel lattices and lattice membership. Entries are GMP integers; nothing
// in this module ever rounds.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tau2 {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

IntVector make_vector(std::initializer_list<long> values);
std::string to_string(std::span<const Integer> v);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Stacks the given vectors as rows. All vectors must have length `cols`.
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, std::span<const Integer> v);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Exact determinant (Bareiss elimination). Requires a square matrix.
Integer determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

struct HermiteDecomposition {
  IntMatrix H;  ///< row-style HNF of M
  IntMatrix U;  ///< unimodular, U * M == H
};

/// Row-style Hermite normal form: nonzero rows first, pivots strictly
/// increasing and positive, entries above each pivot reduced into [0, pivot).
HermiteDecomposition hnf(const IntMatrix& m);

struct SmithDecomposition {
  IntMatrix S;  ///< diagonal, d1 | d2 | ... , all d_i >= 0
  IntMatrix U;  ///< unimodular (rows x rows)
  IntMatrix V;  ///< unimodular (cols x cols), U * M * V == S
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithDecomposition snf(const IntMatrix& m);

/// Rank over Q (number of nonzero rows of the HNF).
std::size_t rank(const IntMatrix& m);

/// A sublattice of Z^dim, stored in canonical form (the nonzero
/// rows of the HNF of its generators), so equal lattices have equal bases.
class LatticeBasis {
 public:
  explicit LatticeBasis(std::size_t dim = 0) : dim_(dim) {}

  /// Lattice spanned by arbitrary (possibly dependent) generators.
  static LatticeBasis from_generators(std::span<const IntVector> generators,
                                      std::size_t dim);
  static LatticeBasis full(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return basis_.size(); }
  bool empty() const noexcept { return basis_.empty(); }
  const std::vector<IntVector>& vectors() const noexcept { return basis_; }

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  std::size_t dim_;
  std::vector<IntVector> basis_;
};

/// Basis of {v in Z^cols : M v = 0}. Kernels of integer matrices are saturated.
LatticeBasis kernel_basis(const IntMatrix& m);

bool lattice_contains(const LatticeBasis& lattice, std::span<const Integer> v);
bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b);

/// True iff some nonzero multiple of v is an integer combination of `rows`.
bool in_rational_span(std::span<const IntVector> rows, std::span<const Integer> v);

}  // namespace tau2
