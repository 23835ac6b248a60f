#include "tau2/structure.hpp"

#include "tau2/errors.hpp"

namespace tau2 {

IntMatrix commutation_matrix(const MalcevElement& g) {
  const Tau2Presentation& p = g.presentation();
  const auto n = static_cast<std::size_t>(p.n()), m = static_cast<std::size_t>(p.m());
  IntMatrix lam(m, n);
  for (int t = 0; t < p.m(); ++t)
    for (int j = 0; j < p.n(); ++j) {
      Integer s;
      for (int i = 0; i < p.n(); ++i)
        if (sgn(g.alpha()[static_cast<std::size_t>(i)]) != 0)
          s += p.lambda(t, i, j) * g.alpha()[static_cast<std::size_t>(i)];
      lam(static_cast<std::size_t>(t), static_cast<std::size_t>(j)) = s;
    }
  return lam;
}

IntMatrix generator_matrix(const Tau2Presentation& p, int k) {
  if (p.n() < 2) throw InvalidArgument("generator_matrix needs n >= 2");
  if (k < 0 || k >= p.n()) throw InvalidArgument("generator index out of range");
  // Columns: -lambda_{1,k}, ..., -lambda_{k-1,k}, lambda_{k,k+1}, ..., lambda_{k,n},
  // which is lambda(t, k, j) for j != k.
  IntMatrix mk(static_cast<std::size_t>(p.m()), static_cast<std::size_t>(p.n() - 1));
  for (int t = 0; t < p.m(); ++t) {
    std::size_t col = 0;
    for (int j = 0; j < p.n(); ++j) {
      if (j == k) continue;
      mk(static_cast<std::size_t>(t), col++) = p.lambda(t, k, j);
    }
  }
  return mk;
}

CentralizerDescription centralizer(const MalcevElement& g) {
  return {kernel_basis(commutation_matrix(g))};
}

CenterDescription center(const Tau2Presentation& p) {
  return {kernel_basis(center_equations(p))};
}

bool is_C_c_small(const MalcevElement& g) {
  const std::size_t n = static_cast<std::size_t>(g.presentation().n());
  const LatticeBasis cent = centralizer(g).alpha_lattice;
  if (cent.size() > 1) return false;
  const std::vector<IntVector> gens{g.alpha()};
  return lattice_equal(cent, LatticeBasis::from_generators(gens, n));
}

bool is_c_small(const MalcevElement& g, const CenterDescription& z) {
  const std::size_t n = static_cast<std::size_t>(g.presentation().n());
  const LatticeBasis cent = centralizer(g).alpha_lattice;
  if (cent.size() > z.d_basis.size() + 1) return false;
  std::vector<IntVector> gens = z.d_basis.vectors();
  gens.push_back(g.alpha());
  return lattice_equal(cent, LatticeBasis::from_generators(gens, n));
}

bool is_c_small(const MalcevElement& g) { return is_c_small(g, center(g.presentation())); }

bool csmall_by_rank_criterion(const Tau2Presentation& p, int k) {
  const IntMatrix mk = generator_matrix(p, k);
  if (rank(mk) != static_cast<std::size_t>(p.n() - 1)) return false;
  return !mk.is_zero();
}

DerivedReport derived_report(const Tau2Presentation& p) {
  DerivedReport r;
  r.derived_rank = rank(derived_matrix(p));
  r.derived_finite_index = r.derived_rank == static_cast<std::size_t>(p.m());
  r.commutators_form_basis = r.derived_rank == p.pair_count();
  return r;
}

bool isolator_contains_derived(const MalcevElement& g) {
  if (!g.is_central_word()) return false;
  const IntMatrix mp = derived_matrix(g.presentation());
  std::vector<IntVector> rows;
  rows.reserve(mp.rows());
  for (std::size_t r = 0; r < mp.rows(); ++r) rows.push_back(mp.row(r));
  return in_rational_span(rows, g.gamma());
}

bool is_regular(const Tau2Presentation& p) {
  return center(p).d_basis.empty() && derived_report(p).derived_finite_index;
}

bool scalar_ring_is_Z_certificate(const Tau2Presentation& p) {
  if (p.n() < 2) throw InvalidArgument("scalar ring certificate needs n >= 2");
  for (std::size_t pi = 0; pi < p.pair_count(); ++pi) {
    bool nonzero = false;
    for (const IntVector& row : p.table()) nonzero = nonzero || sgn(row[pi]) != 0;
    if (!nonzero) return false;
  }
  const CenterDescription z = center(p);
  for (int i = 0; i < p.n(); ++i)
    if (!is_c_small(MalcevElement::a(p, i), z)) return false;
  return true;
}

NoCsmallPairResult no_csmall_pair_search(const Tau2Presentation& p, int box) {
  if (box < 1) throw InvalidArgument("box radius must be >= 1");
  const auto n = static_cast<std::size_t>(p.n());
  NoCsmallPairResult result;
  std::vector<IntVector> small;
  auto consider = [&](const IntVector& alpha) {
    MalcevElement g(p, alpha, IntVector(static_cast<std::size_t>(p.m())));
    if (!g.is_identity() && is_C_c_small(g)) small.push_back(alpha);
  };
  // The generators go first, so a violating generator pair is the reported witness.
  auto is_unit = [](const IntVector& v) {
    int ones = 0;
    for (const Integer& x : v) {
      if (x == 1) ++ones;
      else if (sgn(x) != 0) return false;
    }
    return ones == 1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    consider(e);
  }
  IntVector alpha(n, Integer(-box));
  for (;;) {
    if (!is_unit(alpha)) consider(alpha);
    std::size_t d = 0;
    while (d < n && alpha[d] == box) alpha[d++] = -box;
    if (d == n) break;
    ++alpha[d];
  }
  result.csmall_count = small.size();
  for (std::size_t a = 0; a < small.size() && result.holds; ++a)
    for (std::size_t b = a + 1; b < small.size(); ++b) {
      const IntVector cg = commutator_gamma(p, small[a], small[b]);
      bool commute = true;
      for (const Integer& x : cg) commute = commute && sgn(x) == 0;
      if (!commute) {
        const IntVector zero(static_cast<std::size_t>(p.m()));
        result.holds = false;
        result.witness.emplace(MalcevElement(p, small[a], zero), MalcevElement(p, small[b], zero));
        break;
      }
    }
  return result;
}

bool no_csmall_pair_check(const Tau2Presentation& p, int box) {
  return no_csmall_pair_search(p, box).holds;
}

StructureReport analyze(const Tau2Presentation& p) {
  StructureReport r;
  r.center = center(p);
  r.invariants = invariant_report(p);
  r.derived = derived_report(p);
  r.all_commutators_nonzero = true;
  for (std::size_t pi = 0; pi < p.pair_count(); ++pi) {
    bool nonzero = false;
    for (const IntVector& row : p.table()) nonzero = nonzero || sgn(row[pi]) != 0;
    r.all_commutators_nonzero = r.all_commutators_nonzero && nonzero;
  }
  for (int i = 0; i < p.n(); ++i) {
    r.csmall_flags.push_back(is_c_small(MalcevElement::a(p, i), r.center));
    r.csmall_criterion_flags.push_back(p.n() >= 2 && csmall_by_rank_criterion(p, i));
  }
  r.is_regular = r.center.d_basis.empty() && r.derived.derived_finite_index;
  r.scalar_ring_is_Z_certified = p.n() >= 2 && scalar_ring_is_Z_certificate(p);

  if (r.invariants.rank_center != r.center.rank(p.m()))
    throw InvariantViolation("center rank disagrees between invariant report and center()");
  if (!r.invariants.span_identity_holds)
    throw InvariantViolation("rank(G/Z) + rank(Z) != n + m");
  if (!r.invariants.sandwich_holds) throw InvariantViolation("rank(G') <= m <= rank(Z) fails");
  for (int i = 0; i < p.n(); ++i)
    if (r.csmall_criterion_flags[static_cast<std::size_t>(i)] &&
        (!r.csmall_flags[static_cast<std::size_t>(i)] || !r.center.d_basis.empty()))
      throw InvariantViolation("rank criterion holds for a_" + std::to_string(i + 1) +
                               " but exact c-smallness / Z(G) = <C> does not");
  return r;
}

}  // namespace tau2
