#pragma once

// tau_2-presentations
//
//   G = < a_1..a_n, c_1..c_m | [a_i, a_j] = prod_t c_t^{lambda(t,i,j)}, C central >
//
// and exact arithmetic on Malcev coordinates: every element is uniquely
// a_1^{alpha_1} ... a_n^{alpha_n} c_1^{gamma_1} ... c_m^{gamma_m}.
//
// Index convention: the C++ and Python APIs are 0-based throughout
// (generator a_{i+1} is index i, c_{t+1} is index t). Text formats (presentation
// files, equation files, CLI arguments, Diophantine variable names) are 1-based.
// The translation happens only in textio.cpp and dioph.cpp's variable naming.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tau2/intlin.hpp"

namespace tau2 {

/// One exponent record lambda(t, i, j) = value with i < j (0-based).
struct LambdaEntry {
  int t;
  int i;
  int j;
  Integer value;
};

class Tau2Presentation {
 public:
  /// Trivial group (n = m = 0).
  Tau2Presentation();

  /// Dense table: `table[t][p]` is lambda(t, i, j) for the p-th pair i < j in
  /// lexicographic order. Throws InvalidArgument on a wrongly sized table.
  static Tau2Presentation from_table(int n, int m, std::vector<IntVector> table);

  /// Sparse records; omitted entries are zero. Duplicate or out-of-range
  /// records and records with i >= j are errors.
  static Tau2Presentation from_entries(int n, int m, std::span<const LambdaEntry> entries);

  /// Discrete Heisenberg group: n = 2, m = 1, [a_1, a_2] = c_1.
  static Tau2Presentation heisenberg();

  int n() const noexcept { return data_->n; }
  int m() const noexcept { return data_->m; }
  std::size_t pair_count() const noexcept { return data_->pairs; }

  /// lambda(t, i, j) for any i, j, extended antisymmetrically (zero on i == j).
  Integer lambda(int t, int i, int j) const;
  /// The stored vector (lambda(0,i,j), ..., lambda(m-1,i,j)) for i < j.
  IntVector lambda_vector(int i, int j) const;
  /// Position of the pair (i, j), i < j, in lexicographic order.
  static std::size_t pair_index(int n, int i, int j);
  const std::vector<IntVector>& table() const noexcept { return data_->table; }

  bool is_abelian() const;

  /// Same group data (shared storage or equal tables).
  friend bool operator==(const Tau2Presentation& a, const Tau2Presentation& b);

 private:
  struct Data {
    int n = 0;
    int m = 0;
    std::size_t pairs = 0;
    std::vector<IntVector> table;  // [t][pair]
  };
  explicit Tau2Presentation(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

class MalcevElement {
 public:
  /// Throws DimensionMismatch when coordinate lengths differ from (n, m).
  MalcevElement(Tau2Presentation p, IntVector alpha, IntVector gamma);

  static MalcevElement identity(const Tau2Presentation& p);
  static MalcevElement a(const Tau2Presentation& p, int i);
  static MalcevElement c(const Tau2Presentation& p, int t);

  const Tau2Presentation& presentation() const noexcept { return pres_; }
  const IntVector& alpha() const noexcept { return alpha_; }
  const IntVector& gamma() const noexcept { return gamma_; }
  bool is_identity() const;
  bool is_central_word() const;  ///< alpha == 0, i.e. lies in <C>
  std::string to_string() const;

  /// Coordinate equality; throws PresentationMismatch across presentations.
  friend bool operator==(const MalcevElement& x, const MalcevElement& y);

 private:
  Tau2Presentation pres_;
  IntVector alpha_;
  IntVector gamma_;
};

MalcevElement multiply(const MalcevElement& x, const MalcevElement& y);
MalcevElement inverse(const MalcevElement& x);
MalcevElement power(const MalcevElement& x, const Integer& k);
/// [x, y] = x^-1 y^-1 x y, computed from the bilinear coordinate formula.
MalcevElement commutator(const MalcevElement& x, const MalcevElement& y);

inline MalcevElement operator*(const MalcevElement& x, const MalcevElement& y) {
  return multiply(x, y);
}

/// gamma-part of [x, y] for raw alpha vectors: sum_{i,j} lambda(t,i,j) x_i y_j.
IntVector commutator_gamma(const Tau2Presentation& p, std::span<const Integer> x_alpha,
                           std::span<const Integer> y_alpha);

struct Letter {
  enum class Kind { A, C };
  Kind kind;
  int index;     ///< 0-based generator index
  int exponent;  ///< +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

using GeneratorWord = std::vector<Letter>;

/// Left fold of multiply over the letters.
MalcevElement from_word(const Tau2Presentation& p, const GeneratorWord& w);

/// Normal form by literal rewriting: C-letters are pulled out (they are
/// central), adjacent inverse A-letters cancel, and out-of-order adjacent
/// A-letters are swapped via u v = v u [u, v], emitting the central
/// commutator letters given by the presentation. Used as a test oracle.
MalcevElement rewrite_oracle(const Tau2Presentation& p, const GeneratorWord& w);

/// The (m*n) x n matrix whose row (t, k) reads sum_i lambda(t, i, k) alpha_i;
/// its integer kernel is the set of alpha-parts of central elements.
IntMatrix center_equations(const Tau2Presentation& p);

/// The n(n-1)/2 x m matrix whose rows are lambda(., i, j), i < j, in
/// lexicographic order. Its row lattice is G' inside <C>.
IntMatrix derived_matrix(const Tau2Presentation& p);

struct InvariantReport {
  std::size_t rank_center = 0;
  std::size_t rank_G_mod_center = 0;
  std::size_t rank_derived = 0;
  std::size_t rank_G_mod_C = 0;
  bool span_identity_holds = false;  ///< rank(G/Z) + rank(Z) == n + m
  bool sandwich_holds = false;       ///< rank(G') <= m <= rank(Z)
};

/// rank(Z) is m plus the size of the kernel basis of center_equations;
/// rank(G/Z) is the rank of center_equations. The two are computed
/// separately so the span identity is a real check.
InvariantReport invariant_report(const Tau2Presentation& p);

}  // namespace tau2
