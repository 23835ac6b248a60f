#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "../oracles.hpp"
#include "tau2/errors.hpp"
#include "tau2/randmodel.hpp"

using namespace tau2;

TEST_CASE("sampling") {
  std::mt19937_64 rng(1);
  CHECK(sample_tau2({3, 2, 0}, rng).is_abelian());

  std::map<long, int> freq;
  for (int k = 0; k < 10000; ++k) freq[sample_tau2({2, 1, 1}, rng).lambda(0, 0, 1).get_si()]++;
  REQUIRE(freq.size() == 3);
  double chi2 = 0;
  for (const auto& [value, count] : freq) chi2 += (count - 10000.0 / 3) * (count - 10000.0 / 3) / (10000.0 / 3);
  CHECK(chi2 < 13.8);  // chi-square, 2 dof, p = 0.001

  auto r1 = trial_rng(9, 4), r2 = trial_rng(9, 4);
  CHECK(sample_tau2({3, 2, 5}, r1) == sample_tau2({3, 2, 5}, r2));
  CHECK_THROWS_AS(sample_tau2({1, 1, 1}, rng), InvalidArgument);
}

TEST_CASE("enumeration") {
  CHECK(enumerate_tau2({2, 1, 1}).size() == 3);
  CHECK(enumerate_tau2({2, 2, 1}).size() == 9);
  const auto all = enumerate_tau2({3, 2, 1});
  CHECK(all.size() == 729);
  std::set<std::vector<IntVector>> distinct;
  for (const auto& p : all) distinct.insert(p.table());
  CHECK(distinct.size() == 729);
  CHECK_THROWS_AS(enumerate_tau2({3, 2, 1}, 100), BudgetExceeded);
  CHECK(sample_space_size({3, 2, 1}) == 729);
}

TEST_CASE("count bound") {
  for (int ell = 1; ell <= 4; ++ell) {
    const auto b = count_bound_p(2, 1, ell, BoundVariant::MainThm, LConvention::TwoEll);
    CHECK(b.p == b.L - 2);
  }
  const auto two = count_bound_p(3, 2, 1, BoundVariant::MainThm, LConvention::TwoEll);
  CHECK(two.L == 2);
  CHECK(two.p == 0);  // (4-2)(4-3)(4-4)
  CHECK(two.denominator == 729);
  const auto three = count_bound_p(3, 2, 1, BoundVariant::MainThm, LConvention::TwoEllPlusOne);
  CHECK(three.p == 105);  // (9-2)(9-4)(9-6)
  CHECK(three.probability == mpq_class(35, 243));

  const auto big = count_bound_p(3, 2, 200, BoundVariant::MainThm, LConvention::TwoEllPlusOne);
  CHECK(big.probability.get_d() > 0.98);

  const auto reg = count_bound_p(2, 1, 1, BoundVariant::Regularity, LConvention::TwoEllPlusOne);
  CHECK(reg.p == 2);  // L^1 - 1, the two nonzero choices
  CHECK_THROWS_AS(count_bound_p(4, 2, 1, BoundVariant::MainThm, LConvention::TwoEll), InvalidArgument);
}

TEST_CASE("linear dependence counting") {
  const IntVector I3 = make_vector({-1, 0, 1});
  const std::vector<IntVector> v1{make_vector({1, 0})};
  const auto r = lindep_count_check(I3, 2, v1);
  CHECK(r.dependent_count == 3);
  CHECK(r.bound == 3);
  CHECK(r.within_bound);

  const auto e = lindep_count_check(I3, 2, std::vector<IntVector>{});
  CHECK(e.dependent_count == 1);
  CHECK(e.bound == 1);

  const IntVector I2 = make_vector({0, 1});
  const std::vector<IntVector> v2{make_vector({1, 0, 0}), make_vector({0, 1, 0})};
  const auto q = lindep_count_check(I2, 3, v2);
  CHECK(q.dependent_count <= 4);
  CHECK(q.within_bound);

  const std::vector<IntVector> dep{make_vector({1, 0}), make_vector({2, 0})};
  CHECK_THROWS_AS(lindep_count_check(I3, 2, dep), InvalidArgument);
}

TEST_CASE("polycyclic and nilpotent presentations") {
  std::mt19937_64 rng(4);
  const auto nil = sample_polycyclic(3, {}, 0, Flavor::Nilpotent, rng);
  CHECK(relation_matrix(nil).rows() == 6);  // conjugacy relations only
  CHECK(relation_matrix(nil).is_zero());
  const auto ab0 = abelianization(nil);
  CHECK_FALSE(ab0.is_finite);
  CHECK(ab0.invariant_factors == make_vector({0, 0, 0}));
  CHECK_THROWS_AS(sample_polycyclic(2, {}, 1, Flavor::Nilpotent, rng), InvalidArgument);

  auto r1 = trial_rng(3, 0), r2 = trial_rng(3, 0);
  const auto p1 = sample_polycyclic(4, {}, 5, Flavor::Polycyclic, r1);
  const auto p2 = sample_polycyclic(4, {}, 5, Flavor::Polycyclic, r2);
  CHECK(relation_matrix(p1) == relation_matrix(p2));

  // polycyclic n = 2 with b_{1,2,2} = 2, c_{1,2,2} = 5: rows (0, -1), (0, -4)
  PolycyclicPresentation pc;
  pc.n = 2;
  pc.flavor = Flavor::Polycyclic;
  pc.S = {std::nullopt, std::nullopt};
  pc.a.assign(2, IntVector(2));
  pc.b.assign(2, std::vector<IntVector>(2, IntVector(2)));
  pc.c = pc.b;
  pc.b[0][1][1] = 2;
  pc.c[0][1][1] = 5;
  const IntMatrix rel = relation_matrix(pc);
  CHECK(rel == IntMatrix{{0, -1}, {0, -4}});
  const auto abel = abelianization(pc);
  CHECK(abel.invariant_factors == make_vector({0}));
  CHECK_FALSE(abel.is_finite);

  // with a finite power relation on x_1 the group becomes finite
  pc.S[0] = Integer(6);
  pc.a[0][1] = 1;
  const auto fin = abelianization(pc);
  CHECK(fin.is_finite);
  CHECK(fin.invariant_factors == make_vector({6}));

  // nilpotent n = 3: x_1^-1 x_2 x_1 = x_2 x_3^b forces b * ab(x_3) = 0
  PolycyclicPresentation np;
  np.n = 3;
  np.flavor = Flavor::Nilpotent;
  np.S.assign(3, std::nullopt);
  np.a.assign(3, IntVector(3));
  np.b.assign(3, std::vector<IntVector>(3, IntVector(3)));
  np.c = np.b;
  np.b[0][1][2] = 4;
  CHECK(abelianization(np).invariant_factors == make_vector({4, 0, 0}));
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(8, 9);
  CHECK(lo < 8.0 / 9);
  CHECK(hi > 8.0 / 9);
  const auto [l0, h0] = wilson_interval(0, 1);
  CHECK(l0 == 0);
  CHECK(h0 > 0);
  const auto [l1, h1] = wilson_interval(50, 100);
  CHECK(l1 == doctest::Approx(0.4038).epsilon(0.001));
  CHECK(h1 == doctest::Approx(0.5962).epsilon(0.001));
}

TEST_CASE("exact fractions and Monte Carlo") {
  const ModelSpec model{ModelKind::Tau2, 2, 2, {}};
  const std::vector<std::string> props{"mainthm_conjunction", "regular", "derived_rank_is_r"};
  const auto exact = exact_fractions(model, 1, props, 2);
  CHECK(exact[0].fraction == mpq_class(8, 9));
  CHECK(exact[1].successes == 0);
  CHECK(exact[2].fraction == mpq_class(8, 9));

  const auto mc1 = montecarlo(model, 1, props, 2000, 77, 1);
  const auto mc4 = montecarlo(model, 1, props, 2000, 77, 4);
  CHECK(mc1 == mc4);
  CHECK(mc1[0].ci_low <= 8.0 / 9);
  CHECK(mc1[0].ci_high >= 8.0 / 9);

  const auto one = montecarlo(model, 1, "center_is_C", 1, 5);
  CHECK((one.estimate == 0 || one.estimate == 1));

  CHECK_THROWS_AS(montecarlo(model, 1, "no_such_property", 10, 1), InvalidArgument);
  CHECK_THROWS_AS(montecarlo(model, 1, "abelianization_finite", 10, 1), InvalidArgument);
  CHECK_THROWS_AS(montecarlo(model, 1, "regular", 0, 1), InvalidArgument);

  const ModelSpec nil{ModelKind::Nilpotent, 3, 0, {}};
  CHECK(montecarlo(nil, 0, "abelianization_finite", 100, 1).successes == 0);
  CHECK_THROWS_AS(montecarlo(nil, 1, "regular", 10, 1), InvalidArgument);
}

TEST_CASE("regularity is impossible when m > n(n-1)/2") {
  for (int m : {2, 3, 4}) {
    const ModelSpec model{ModelKind::Tau2, 2, m, {}};
    const auto r = montecarlo(model, 3, "regular", 300, 11);
    CHECK(r.successes == 0);
  }
}
