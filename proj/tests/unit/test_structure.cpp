#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "tau2/errors.hpp"
#include "tau2/structure.hpp"

using namespace tau2;

namespace {

Tau2Presentation n3m1_single() { return Tau2Presentation::from_table(3, 1, {make_vector({1, 0, 0})}); }
Tau2Presentation n2m2_first() { return Tau2Presentation::from_table(2, 2, {make_vector({1}), make_vector({0})}); }
Tau2Presentation abelian(int n, int m) {
  return Tau2Presentation::from_table(n, m, std::vector<IntVector>(static_cast<std::size_t>(m),
                                                                   IntVector(static_cast<std::size_t>(n * (n - 1) / 2))));
}

// Exact centralizer check by scanning alpha(y) over [-b, b]^n.
void check_centralizer_by_scan(const MalcevElement& g, long b) {
  const auto cent = centralizer(g).alpha_lattice;
  const auto& p = g.presentation();
  oracle::for_each_in_box(static_cast<std::size_t>(p.n()), b, [&](const IntVector& a) {
    const bool commutes = oracle::is_zero(commutator_gamma(p, g.alpha(), a));
    CHECK(commutes == lattice_contains(cent, a));
  });
}

}  // namespace

TEST_CASE("commutation matrix") {
  const auto h = Tau2Presentation::heisenberg();
  CHECK(commutation_matrix(MalcevElement::a(h, 0)) == IntMatrix{{0, 1}});
  CHECK(commutation_matrix(MalcevElement::identity(h)).is_zero());
  CHECK(commutation_matrix(MalcevElement::c(h, 0)).is_zero());
  check_centralizer_by_scan(MalcevElement::a(h, 0), 3);
}

TEST_CASE("generator matrix is the commutation matrix minus column k") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = oracle::random_presentation(rng, 4, 3, 3);
    for (int k = 0; k < p.n(); ++k) {
      const IntMatrix full = commutation_matrix(MalcevElement::a(p, k));
      const IntMatrix mk = generator_matrix(p, k);
      for (std::size_t t = 0; t < full.rows(); ++t) {
        std::size_t col = 0;
        for (std::size_t j = 0; j < full.cols(); ++j)
          if (j != static_cast<std::size_t>(k)) CHECK(mk(t, col++) == full(t, j));
      }
    }
  }
  CHECK_THROWS_AS(generator_matrix(Tau2Presentation::heisenberg(), 2), InvalidArgument);
}

TEST_CASE("center examples") {
  CHECK(center(Tau2Presentation::heisenberg()).d_basis.empty());
  const auto z = center(n3m1_single());
  REQUIRE(z.d_basis.size() == 1);
  CHECK(z.d_basis.vectors()[0] == make_vector({0, 0, 1}));
  CHECK(z.rank(1) == 2);
}

TEST_CASE("c-smallness") {
  const auto h = Tau2Presentation::heisenberg();
  CHECK(is_c_small(MalcevElement::a(h, 0)));
  CHECK(is_C_c_small(MalcevElement::a(h, 0)));
  CHECK_FALSE(is_c_small(MalcevElement::identity(h)));
  CHECK_FALSE(is_c_small(MalcevElement::c(h, 0)));

  // n = 3, m = 2 with rank(M_{P,1}) = 2
  const auto p = Tau2Presentation::from_table(3, 2, {make_vector({1, 0, 2}), make_vector({0, 1, 3})});
  CHECK(rank(generator_matrix(p, 0)) == 2);
  CHECK(is_c_small(MalcevElement::a(p, 0)));

  CHECK(csmall_by_rank_criterion(h, 0));
  CHECK_FALSE(csmall_by_rank_criterion(abelian(3, 2), 0));
  CHECK_FALSE(csmall_by_rank_criterion(n3m1_single(), 0));
}

TEST_CASE("rank criterion implies exact c-smallness and Z = <C>") {
  std::mt19937_64 rng(17);
  int hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = oracle::random_presentation(rng, 3, 2 + trial % 2, 2);
    const auto z = center(p);
    for (int k = 0; k < p.n(); ++k)
      if (csmall_by_rank_criterion(p, k)) {
        ++hits;
        CHECK(is_c_small(MalcevElement::a(p, k), z));
        CHECK(z.d_basis.empty());
      }
  }
  CHECK(hits > 0);
}

TEST_CASE("c-small elements have the expected centralizer shape on a box") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = oracle::random_presentation(rng, 3, 2, 2);
    const auto z = center(p);
    const auto g = oracle::random_element(rng, p, 2);
    if (!is_c_small(g, z)) continue;
    std::vector<IntVector> gens = z.d_basis.vectors();
    gens.push_back(g.alpha());
    const auto shape = LatticeBasis::from_generators(gens, 3);
    oracle::for_each_in_box(3, 3, [&](const IntVector& a) {
      if (oracle::is_zero(commutator_gamma(p, g.alpha(), a))) CHECK(lattice_contains(shape, a));
    });
  }
}

TEST_CASE("centralizers agree with a brute-force scan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_presentation(rng, 3, 1 + trial % 3, 2);
    check_centralizer_by_scan(oracle::random_element(rng, p, 2), 3);
  }
}

TEST_CASE("derived subgroup, isolator, regularity") {
  const auto h = Tau2Presentation::heisenberg();
  const auto dh = derived_report(h);
  CHECK(dh.derived_rank == 1);
  CHECK(dh.derived_finite_index);
  CHECK(dh.commutators_form_basis);
  CHECK(is_regular(h));

  const auto q = n2m2_first();
  const auto dq = derived_report(q);
  CHECK(dq.derived_rank == 1);
  CHECK_FALSE(dq.derived_finite_index);
  CHECK(dq.commutators_form_basis);
  CHECK_FALSE(is_regular(q));

  CHECK(derived_report(abelian(3, 2)).derived_rank == 0);
  CHECK_FALSE(is_regular(abelian(2, 1)));
  CHECK_FALSE(is_regular(abelian(3, 2)));

  CHECK(isolator_contains_derived(MalcevElement::c(h, 0)));
  CHECK_FALSE(isolator_contains_derived(MalcevElement::c(q, 1)));
  CHECK_FALSE(isolator_contains_derived(MalcevElement::a(h, 0)));
  // Is(G') is bigger than G': c^1 where G' = <c^2>
  const auto h2 = Tau2Presentation::from_table(2, 1, {make_vector({2})});
  CHECK(isolator_contains_derived(MalcevElement::c(h2, 0)));
}

TEST_CASE("m > n(n-1)/2 is never regular") {
  for (int m : {2, 3})
    for (const auto& p : oracle::all_presentations(2, m, 1)) {
      CHECK_FALSE(is_regular(p));
      CHECK_FALSE(derived_report(p).derived_finite_index);
    }
}

TEST_CASE("scalar ring certificate") {
  CHECK(scalar_ring_is_Z_certificate(Tau2Presentation::heisenberg()));
  CHECK_FALSE(scalar_ring_is_Z_certificate(abelian(2, 1)));
  const auto p = Tau2Presentation::from_table(3, 2, {make_vector({1, 0, 1}), make_vector({0, 1, 1})});
  for (int k = 0; k < 3; ++k) CHECK(rank(generator_matrix(p, k)) == 2);
  CHECK(scalar_ring_is_Z_certificate(p));
  CHECK_THROWS_AS(scalar_ring_is_Z_certificate(Tau2Presentation::from_table(1, 1, {IntVector{}})), InvalidArgument);
}

TEST_CASE("no c-small pair search") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3; ++trial)
    CHECK(no_csmall_pair_check(oracle::random_presentation(rng, 5, 2, 2), 2));

  const auto h = Tau2Presentation::heisenberg();
  const auto r = no_csmall_pair_search(h, 1);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK_FALSE(commutator(r.witness->first, r.witness->second).is_identity());
  CHECK(no_csmall_pair_check(abelian(3, 1), 1));
}

TEST_CASE("analyze cross-checks") {
  const auto r = analyze(Tau2Presentation::heisenberg());
  CHECK(r.is_regular);
  CHECK(r.scalar_ring_is_Z_certified);
  CHECK(r.csmall_flags == std::vector<bool>{true, true});
  const auto a = analyze(abelian(2, 1));
  CHECK_FALSE(a.is_regular);
  CHECK_FALSE(a.scalar_ring_is_Z_certified);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) CHECK_NOTHROW(analyze(oracle::random_presentation(rng, 4, 3, 2)));
}
