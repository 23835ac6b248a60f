#include "tau2/group.hpp"

#include <algorithm>
#include <list>
#include <set>
#include <tuple>

#include "tau2/errors.hpp"

namespace tau2 {

Tau2Presentation::Tau2Presentation() : data_(std::make_shared<const Data>()) {}

std::size_t Tau2Presentation::pair_index(int n, int i, int j) {
  // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  const auto un = static_cast<std::size_t>(n);
  return ui * un - ui * (ui + 1) / 2 + (uj - ui - 1);
}

Tau2Presentation Tau2Presentation::from_table(int n, int m, std::vector<IntVector> table) {
  if (n < 0 || m < 0) throw InvalidArgument("n and m must be nonnegative");
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (table.size() != static_cast<std::size_t>(m))
    throw InvalidArgument("lambda table must have m = " + std::to_string(m) + " rows, got " +
                          std::to_string(table.size()));
  for (const IntVector& row : table)
    if (row.size() != pairs)
      throw InvalidArgument("lambda table row must have n(n-1)/2 = " + std::to_string(pairs) +
                            " entries, got " + std::to_string(row.size()));
  auto d = std::make_shared<Data>();
  d->n = n;
  d->m = m;
  d->pairs = pairs;
  d->table = std::move(table);
  return Tau2Presentation(std::move(d));
}

Tau2Presentation Tau2Presentation::from_entries(int n, int m,
                                                std::span<const LambdaEntry> entries) {
  if (n < 0 || m < 0) throw InvalidArgument("n and m must be nonnegative");
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<IntVector> table(static_cast<std::size_t>(m), IntVector(pairs));
  std::set<std::tuple<int, int, int>> seen;
  for (const LambdaEntry& e : entries) {
    if (e.t < 0 || e.t >= m) throw InvalidArgument("lambda record t out of range");
    if (e.i < 0 || e.j >= n || e.i >= e.j)
      throw InvalidArgument("lambda record needs 0 <= i < j < n");
    if (!seen.emplace(e.t, e.i, e.j).second)
      throw InvalidArgument("duplicate lambda record (t=" + std::to_string(e.t + 1) +
                            ", i=" + std::to_string(e.i + 1) + ", j=" + std::to_string(e.j + 1) +
                            ")");
    table[static_cast<std::size_t>(e.t)][pair_index(n, e.i, e.j)] = e.value;
  }
  return from_table(n, m, std::move(table));
}

Tau2Presentation Tau2Presentation::heisenberg() {
  return from_table(2, 1, {make_vector({1})});
}

Integer Tau2Presentation::lambda(int t, int i, int j) const {
  if (i == j) return 0;
  if (i < j) return data_->table[static_cast<std::size_t>(t)][pair_index(n(), i, j)];
  return -data_->table[static_cast<std::size_t>(t)][pair_index(n(), j, i)];
}

IntVector Tau2Presentation::lambda_vector(int i, int j) const {
  IntVector v(static_cast<std::size_t>(m()));
  for (int t = 0; t < m(); ++t) v[static_cast<std::size_t>(t)] = lambda(t, i, j);
  return v;
}

bool Tau2Presentation::is_abelian() const {
  for (const IntVector& row : data_->table)
    for (const Integer& x : row)
      if (sgn(x) != 0) return false;
  return true;
}

bool operator==(const Tau2Presentation& a, const Tau2Presentation& b) {
  if (a.data_ == b.data_) return true;
  return a.n() == b.n() && a.m() == b.m() && a.table() == b.table();
}

MalcevElement::MalcevElement(Tau2Presentation p, IntVector alpha, IntVector gamma)
    : pres_(std::move(p)), alpha_(std::move(alpha)), gamma_(std::move(gamma)) {
  if (alpha_.size() != static_cast<std::size_t>(pres_.n()) ||
      gamma_.size() != static_cast<std::size_t>(pres_.m()))
    throw DimensionMismatch("Malcev coordinates must have lengths (n, m)");
}

MalcevElement MalcevElement::identity(const Tau2Presentation& p) {
  return {p, IntVector(static_cast<std::size_t>(p.n())), IntVector(static_cast<std::size_t>(p.m()))};
}

MalcevElement MalcevElement::a(const Tau2Presentation& p, int i) {
  if (i < 0 || i >= p.n()) throw InvalidArgument("A-generator index out of range");
  MalcevElement e = identity(p);
  e.alpha_[static_cast<std::size_t>(i)] = 1;
  return e;
}

MalcevElement MalcevElement::c(const Tau2Presentation& p, int t) {
  if (t < 0 || t >= p.m()) throw InvalidArgument("C-generator index out of range");
  MalcevElement e = identity(p);
  e.gamma_[static_cast<std::size_t>(t)] = 1;
  return e;
}

bool MalcevElement::is_central_word() const {
  return std::all_of(alpha_.begin(), alpha_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool MalcevElement::is_identity() const {
  return is_central_word() &&
         std::all_of(gamma_.begin(), gamma_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

std::string MalcevElement::to_string() const {
  return "alpha=" + tau2::to_string(alpha_) + " gamma=" + tau2::to_string(gamma_);
}

namespace {

void require_same(const MalcevElement& x, const MalcevElement& y) {
  if (!(x.presentation() == y.presentation()))
    throw PresentationMismatch("elements belong to different presentations");
}

// sum_{j<i} lambda(t, j, i) * u_i * v_j : the central correction produced when
// the A-letters of v are collected past those of u.
IntVector collection_correction(const Tau2Presentation& p, std::span<const Integer> u,
                                std::span<const Integer> v) {
  IntVector out(static_cast<std::size_t>(p.m()));
  for (int j = 0; j < p.n(); ++j) {
    if (sgn(v[static_cast<std::size_t>(j)]) == 0) continue;
    for (int i = j + 1; i < p.n(); ++i) {
      if (sgn(u[static_cast<std::size_t>(i)]) == 0) continue;
      Integer uv = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      const std::size_t pi = Tau2Presentation::pair_index(p.n(), j, i);
      for (int t = 0; t < p.m(); ++t)
        out[static_cast<std::size_t>(t)] += p.table()[static_cast<std::size_t>(t)][pi] * uv;
    }
  }
  return out;
}

}  // namespace

bool operator==(const MalcevElement& x, const MalcevElement& y) {
  require_same(x, y);
  return x.alpha_ == y.alpha_ && x.gamma_ == y.gamma_;
}

MalcevElement multiply(const MalcevElement& x, const MalcevElement& y) {
  require_same(x, y);
  const Tau2Presentation& p = x.presentation();
  IntVector alpha = x.alpha(), gamma = x.gamma();
  for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] += y.alpha()[i];
  const IntVector corr = collection_correction(p, x.alpha(), y.alpha());
  for (std::size_t t = 0; t < gamma.size(); ++t) gamma[t] += y.gamma()[t] - corr[t];
  return {p, std::move(alpha), std::move(gamma)};
}

MalcevElement power(const MalcevElement& x, const Integer& k) {
  // x^k has alpha = k*alpha and gamma = k*gamma - k(k-1)/2 * corr(alpha, alpha);
  // the same expression covers negative k (k = -1 gives the inverse).
  const Tau2Presentation& p = x.presentation();
  IntVector alpha = x.alpha(), gamma = x.gamma();
  for (Integer& a : alpha) a *= k;
  Integer tri = k * (k - 1);
  mpz_divexact_ui(tri.get_mpz_t(), tri.get_mpz_t(), 2);
  const IntVector corr = collection_correction(p, x.alpha(), x.alpha());
  for (std::size_t t = 0; t < gamma.size(); ++t) gamma[t] = k * gamma[t] - tri * corr[t];
  return {p, std::move(alpha), std::move(gamma)};
}

MalcevElement inverse(const MalcevElement& x) { return power(x, Integer(-1)); }

IntVector commutator_gamma(const Tau2Presentation& p, std::span<const Integer> x_alpha,
                           std::span<const Integer> y_alpha) {
  IntVector out(static_cast<std::size_t>(p.m()));
  for (int i = 0; i < p.n(); ++i)
    for (int j = i + 1; j < p.n(); ++j) {
      Integer w = x_alpha[static_cast<std::size_t>(i)] * y_alpha[static_cast<std::size_t>(j)] -
                  x_alpha[static_cast<std::size_t>(j)] * y_alpha[static_cast<std::size_t>(i)];
      if (sgn(w) == 0) continue;
      const std::size_t pi = Tau2Presentation::pair_index(p.n(), i, j);
      for (int t = 0; t < p.m(); ++t)
        out[static_cast<std::size_t>(t)] += p.table()[static_cast<std::size_t>(t)][pi] * w;
    }
  return out;
}

MalcevElement commutator(const MalcevElement& x, const MalcevElement& y) {
  require_same(x, y);
  const Tau2Presentation& p = x.presentation();
  return {p, IntVector(static_cast<std::size_t>(p.n())), commutator_gamma(p, x.alpha(), y.alpha())};
}

namespace {

void check_letter(const Tau2Presentation& p, const Letter& l) {
  const int bound = l.kind == Letter::Kind::A ? p.n() : p.m();
  if (l.index < 0 || l.index >= bound) throw InvalidArgument("word letter index out of range");
  if (l.exponent != 1 && l.exponent != -1) throw InvalidArgument("word letter exponent must be +-1");
}

}  // namespace

MalcevElement from_word(const Tau2Presentation& p, const GeneratorWord& w) {
  MalcevElement acc = MalcevElement::identity(p);
  for (const Letter& l : w) {
    check_letter(p, l);
    MalcevElement g = l.kind == Letter::Kind::A ? MalcevElement::a(p, l.index)
                                                : MalcevElement::c(p, l.index);
    acc = multiply(acc, l.exponent > 0 ? g : inverse(g));
  }
  return acc;
}

MalcevElement rewrite_oracle(const Tau2Presentation& p, const GeneratorWord& w) {
  IntVector gamma(static_cast<std::size_t>(p.m()));
  std::list<Letter> a_letters;
  for (const Letter& l : w) {
    check_letter(p, l);
    if (l.kind == Letter::Kind::C)
      gamma[static_cast<std::size_t>(l.index)] += l.exponent;
    else
      a_letters.push_back(l);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = a_letters.begin(); it != a_letters.end();) {
      auto next = std::next(it);
      if (next == a_letters.end()) break;
      if (it->index == next->index && it->exponent == -next->exponent) {
        it = a_letters.erase(it, std::next(next));
        if (it != a_letters.begin()) --it;
        changed = true;
        continue;
      }
      if (it->index > next->index) {
        // u = a_j^e, v = a_i^f with i < j:  u v = v u [u, v],
        // [a_j^e, a_i^f] = [a_i, a_j]^(-e f) = prod_t c_t^(-e f lambda(t,i,j)).
        const int ef = it->exponent * next->exponent;
        for (int t = 0; t < p.m(); ++t)
          gamma[static_cast<std::size_t>(t)] -= ef * p.lambda(t, next->index, it->index);
        std::iter_swap(it, next);
        changed = true;
      }
      ++it;
    }
  }
  IntVector alpha(static_cast<std::size_t>(p.n()));
  for (const Letter& l : a_letters) alpha[static_cast<std::size_t>(l.index)] += l.exponent;
  return {p, std::move(alpha), std::move(gamma)};
}

IntMatrix center_equations(const Tau2Presentation& p) {
  const auto n = static_cast<std::size_t>(p.n()), m = static_cast<std::size_t>(p.m());
  IntMatrix eq(m * n, n);
  for (int t = 0; t < p.m(); ++t)
    for (int k = 0; k < p.n(); ++k)
      for (int i = 0; i < p.n(); ++i)
        eq(static_cast<std::size_t>(t) * n + static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
            p.lambda(t, i, k);
  return eq;
}

IntMatrix derived_matrix(const Tau2Presentation& p) {
  IntMatrix mp(p.pair_count(), static_cast<std::size_t>(p.m()));
  for (std::size_t r = 0; r < p.pair_count(); ++r)
    for (int t = 0; t < p.m(); ++t)
      mp(r, static_cast<std::size_t>(t)) = p.table()[static_cast<std::size_t>(t)][r];
  return mp;
}

InvariantReport invariant_report(const Tau2Presentation& p) {
  const IntMatrix eq = center_equations(p);
  InvariantReport r;
  r.rank_center = static_cast<std::size_t>(p.m()) + kernel_basis(eq).size();
  r.rank_G_mod_center = rank(eq);
  r.rank_derived = rank(derived_matrix(p));
  r.rank_G_mod_C = static_cast<std::size_t>(p.n());
  const auto nm = static_cast<std::size_t>(p.n() + p.m());
  r.span_identity_holds = r.rank_G_mod_center + r.rank_center == nm;
  r.sandwich_holds = r.rank_derived <= static_cast<std::size_t>(p.m()) &&
                     static_cast<std::size_t>(p.m()) <= r.rank_center;
  return r;
}

}  // namespace tau2
