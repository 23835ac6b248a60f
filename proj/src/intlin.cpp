#include "tau2/intlin.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "tau2/errors.hpp"

namespace tau2 {

IntVector make_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

std::string to_string(std::span<const Integer> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product dimension mismatch");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector dimension mismatch");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ",";
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ",";
      os << m(r, c);
    }
    os << "]";
  }
  return os << "]";
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Integer d = abs(determinant(m));
  return d == 1;
}

namespace {

// Replaces rows (r1, r2) of `m` by (s*r1 + t*r2, u*r1 + v*r2).
void combine_rows(IntMatrix& m, std::size_t r1, std::size_t r2, const Integer& s,
                  const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer x = m(r1, c), y = m(r2, c);
    m(r1, c) = s * x + t * y;
    m(r2, c) = u * x + v * y;
  }
}

void combine_cols(IntMatrix& m, std::size_t c1, std::size_t c2, const Integer& s,
                  const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer x = m(r, c1), y = m(r, c2);
    m(r, c1) = s * x + t * y;
    m(r, c2) = u * x + v * y;
  }
}

// In-place HNF of `h`; mirrors every row operation on `u` when given.
// Returns the number of nonzero rows.
std::size_t hermite_in_place(IntMatrix& h, IntMatrix* u) {
  const std::size_t rows = h.rows();
  std::size_t pr = 0;
  Integer g, s, t, ua, ub;
  for (std::size_t c = 0; c < h.cols() && pr < rows; ++c) {
    for (std::size_t i = pr + 1; i < rows; ++i) {
      if (sgn(h(i, c)) == 0) continue;
      if (sgn(h(pr, c)) == 0) {
        h.swap_rows(pr, i);
        if (u) u->swap_rows(pr, i);
        continue;
      }
      const Integer a = h(pr, c), b = h(i, c);
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_divexact(ua.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(ub.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
      Integer neg_ub = -ub;
      combine_rows(h, pr, i, s, t, neg_ub, ua);
      if (u) combine_rows(*u, pr, i, s, t, neg_ub, ua);
    }
    if (sgn(h(pr, c)) == 0) continue;
    if (sgn(h(pr, c)) < 0) {
      h.negate_row(pr);
      if (u) u->negate_row(pr);
    }
    const Integer pivot = h(pr, c);
    for (std::size_t k = 0; k < pr; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(k, c).get_mpz_t(), pivot.get_mpz_t());
      if (sgn(q) == 0) continue;
      Integer neg_q = -q;
      h.add_row_multiple(k, pr, neg_q);
      if (u) u->add_row_multiple(k, pr, neg_q);
    }
    ++pr;
  }
  return pr;
}

}  // namespace

HermiteDecomposition hnf(const IntMatrix& m) {
  HermiteDecomposition d{m, IntMatrix::identity(m.rows())};
  hermite_in_place(d.H, &d.U);
  return d;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix h = m;
  return hermite_in_place(h, nullptr);
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (sgn(S(i, i)) != 0) ++r;
  return r;
}

namespace {

// Bezout step with s = 1, t = 0 whenever x | y, so the pivot never moves
// without shrinking.
void gcd_step(const Integer& x, const Integer& y, Integer& g, Integer& s, Integer& t, Integer& ua,
              Integer& ub) {
  if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
    g = x;
    s = 1;
    t = 0;
  } else {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  }
  mpz_divexact(ua.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(ub.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

SmithDecomposition snf(const IntMatrix& m) {
  SmithDecomposition d{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& a = d.S;
  const std::size_t rows = a.rows(), cols = a.cols();
  Integer g, s, t, ua, ub;

  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (sgn(a(i, j)) != 0 &&
            (!best || mpz_cmpabs(a(i, j).get_mpz_t(), a(best->first, best->second).get_mpz_t()) < 0))
          best = {i, j};
    if (!best) break;
    a.swap_rows(k, best->first);
    d.U.swap_rows(k, best->first);
    a.swap_cols(k, best->second);
    d.V.swap_cols(k, best->second);

    for (;;) {
      // Clear column k below the pivot, then row k right of it, with
      // unimodular 2x2 gcd transforms.
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (sgn(a(i, k)) == 0) continue;
        const Integer x = a(k, k), y = a(i, k);
        gcd_step(x, y, g, s, t, ua, ub);
        Integer neg_ub = -ub;
        combine_rows(a, k, i, s, t, neg_ub, ua);
        combine_rows(d.U, k, i, s, t, neg_ub, ua);
      }
      bool row_dirty = false;
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (sgn(a(k, j)) == 0) continue;
        row_dirty = true;
        const Integer x = a(k, k), y = a(k, j);
        gcd_step(x, y, g, s, t, ua, ub);
        Integer neg_ub = -ub;
        combine_cols(a, k, j, s, t, neg_ub, ua);
        combine_cols(d.V, k, j, s, t, neg_ub, ua);
      }
      if (row_dirty) {
        bool col_clean = true;
        for (std::size_t i = k + 1; i < rows; ++i)
          if (sgn(a(i, k)) != 0) col_clean = false;
        if (!col_clean) continue;
      }
      // Divisibility: fold any offending row into row k and repeat.
      std::optional<std::size_t> offender;
      for (std::size_t i = k + 1; i < rows && !offender; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(k, k).get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      a.add_row_multiple(k, *offender, Integer(1));
      d.U.add_row_multiple(k, *offender, Integer(1));
    }
    if (sgn(a(k, k)) < 0) {
      a.negate_row(k);
      d.U.negate_row(k);
    }
  }
  return d;
}

LatticeBasis LatticeBasis::from_generators(std::span<const IntVector> generators,
                                           std::size_t dim) {
  IntMatrix h = IntMatrix::from_rows(generators, dim);
  const std::size_t r = hermite_in_place(h, nullptr);
  LatticeBasis lb(dim);
  lb.basis_.reserve(r);
  for (std::size_t i = 0; i < r; ++i) lb.basis_.push_back(h.row(i));
  return lb;
}

LatticeBasis LatticeBasis::full(std::size_t dim) {
  IntMatrix id = IntMatrix::identity(dim);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < dim; ++i) rows.push_back(id.row(i));
  return from_generators(rows, dim);
}

LatticeBasis kernel_basis(const IntMatrix& m) {
  // U * M^T = H; the rows of U facing zero rows of H span the kernel of M.
  IntMatrix h = m.transpose();
  IntMatrix u = IntMatrix::identity(m.cols());
  const std::size_t r = hermite_in_place(h, &u);
  std::vector<IntVector> gens;
  for (std::size_t i = r; i < m.cols(); ++i) gens.push_back(u.row(i));
  return LatticeBasis::from_generators(gens, m.cols());
}

bool lattice_contains(const LatticeBasis& lattice, std::span<const Integer> v) {
  if (v.size() != lattice.dim()) throw DimensionMismatch("vector/lattice dimension mismatch");
  IntVector w(v.begin(), v.end());
  for (const IntVector& b : lattice.vectors()) {
    std::size_t p = 0;
    while (sgn(b[p]) == 0) ++p;
    if (!mpz_divisible_p(w[p].get_mpz_t(), b[p].get_mpz_t())) return false;
    Integer q;
    mpz_divexact(q.get_mpz_t(), w[p].get_mpz_t(), b[p].get_mpz_t());
    for (std::size_t c = p; c < w.size(); ++c) w[c] -= q * b[c];
  }
  return std::all_of(w.begin(), w.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("lattices live in different dimensions");
  return a.vectors() == b.vectors();
}

bool in_rational_span(std::span<const IntVector> rows, std::span<const Integer> v) {
  for (const IntVector& r : rows)
    if (r.size() != v.size()) throw DimensionMismatch("row/vector dimension mismatch");
  std::vector<IntVector> extended(rows.begin(), rows.end());
  extended.emplace_back(v.begin(), v.end());
  return rank(IntMatrix::from_rows(rows, v.size())) ==
         rank(IntMatrix::from_rows(extended, v.size()));
}

}  // namespace tau2
