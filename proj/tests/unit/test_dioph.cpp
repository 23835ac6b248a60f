#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "tau2/dioph.hpp"
#include "tau2/errors.hpp"
#include "tau2/structure.hpp"

using namespace tau2;

namespace {

FactorWord v(const char* name, int e = 1) { return {Variable{name, e}}; }
FactorWord k(const MalcevElement& x) { return {x}; }
FactorWord cat(FactorWord a, const FactorWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("commutator equation on the Heisenberg group") {
  const auto h = Tau2Presentation::heisenberg();
  const auto d = encode_commutator_equation(h, MalcevElement::c(h, 0));
  CHECK(d.to_text() == "vars: X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 1\n");
  CHECK(check_solution(d, make_vector({1, 0, 0, 1})));
  CHECK_FALSE(check_solution(d, make_vector({1, 0, 1, 0})));

  const auto hom = encode_commutator_equation(h, MalcevElement::identity(h));
  CHECK(check_solution(hom, make_vector({0, 0, 0, 0})));
  CHECK_THROWS_AS(encode_commutator_equation(h, MalcevElement::a(h, 0)), PreconditionError);
}

TEST_CASE("box solve counts unimodular 2x2 matrices") {
  const auto h = Tau2Presentation::heisenberg();
  const auto d = encode_commutator_equation(h, MalcevElement::c(h, 0));
  std::size_t expected = 0;
  oracle::for_each_in_box(4, 1, [&](const IntVector& a) {
    if (a[0] * a[3] - a[1] * a[2] == 1) ++expected;
  });
  const auto sols = box_solve(d, 1);
  CHECK(sols.size() == expected);
  CHECK(sols.size() == 20);
  CHECK(std::is_sorted(sols.begin(), sols.end()));
  CHECK_THROWS_AS(box_solve(d, 100, 1000), BudgetExceeded);

  const DiophantineSystem empty;
  CHECK(check_solution(empty, IntVector{}));
  CHECK(box_solve(empty, 3).size() == 1);
}

TEST_CASE("commutator equation with x = a_l reproduces M_{P,l}") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_presentation(rng, 4, 3, 3);
    const auto d = encode_commutator_equation(p, MalcevElement::identity(p));
    if (d.constraints().size() != static_cast<std::size_t>(p.m())) continue;  // a lambda_t vanished
    const auto n = static_cast<std::size_t>(p.n());
    for (std::size_t l = 0; l < n; ++l) {
      // substituting X = e_l leaves the coefficients of X_l * Y_j
      IntMatrix got(static_cast<std::size_t>(p.m()), n - 1);
      for (std::size_t t = 0; t < got.rows(); ++t)
        for (const Term& term : d.constraints()[t].terms) {
          if (term.vars[0] != l) continue;
          const std::size_t j = term.vars[1] - n;
          if (j != l) got(t, j < l ? j : j - 1) = term.coeff;
        }
      CHECK(got == generator_matrix(p, static_cast<int>(l)));
    }
  }
}

TEST_CASE("encode_system examples") {
  const auto h = Tau2Presentation::heisenberg();
  const GroupEquationSystem comm{h, {{cat(v("x"), v("y")), cat(v("y"), v("x"))}}};
  const auto d = encode_system(comm);
  CHECK(d.variables() == std::vector<std::string>{"X1", "X2", "Y1", "Y2"});
  REQUIRE(d.constraints().size() == 1);
  CHECK(d.to_text() == "vars: X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 0\n");

  const GroupEquationSystem fix{h, {{v("x"), k(MalcevElement::a(h, 0))}}};
  const auto f = encode_system(fix);
  CHECK(f.to_text() == "vars: X1 X2 Xg1\n1*X1 = 1\n1*X2 = 0\n1*Xg1 = 0\n");

  // x^2 = c1 has no solution: c1 is not a square
  const GroupEquationSystem sq{h, {{cat(v("x"), v("x")), k(MalcevElement::c(h, 0))}}};
  const auto s = encode_system(sq);
  CHECK(box_solve(s, 5).empty());
  // but x^2 = c1^2 does (x = c1)
  const GroupEquationSystem sq2{h, {{cat(v("x"), v("x")), k(power(MalcevElement::c(h, 0), 2))}}};
  CHECK_FALSE(box_solve(encode_system(sq2), 2).empty());

  const auto other = Tau2Presentation::from_table(2, 1, {make_vector({3})});
  const GroupEquationSystem mixed{h, {{v("x"), k(MalcevElement::a(other, 0))}}};
  CHECK_THROWS_AS(encode_system(mixed), PresentationMismatch);
}

TEST_CASE("unknown names") {
  CHECK(alpha_unknown_name("x", 0) == "X1");
  CHECK(alpha_unknown_name("x1", 1) == "X1_2");
  CHECK(gamma_unknown_name("y2", 0) == "Y2g1");
  const auto u = decode_unknown_name("X1_2");
  REQUIRE(u);
  CHECK(u->group_variable == "x1");
  CHECK(u->index == 1);
  CHECK_FALSE(u->is_gamma);
  const auto g = decode_unknown_name("Y2g1");
  REQUIRE(g);
  CHECK(g->group_variable == "y2");
  CHECK(g->is_gamma);
  CHECK_FALSE(decode_unknown_name("X0"));
  CHECK(is_valid_variable_name("x"));
  CHECK(is_valid_variable_name("ab"));
  CHECK_FALSE(is_valid_variable_name("a1"));
  CHECK_FALSE(is_valid_variable_name("c12"));
  CHECK_FALSE(is_valid_variable_name("X"));
}

TEST_CASE("text round trip") {
  const std::string text = "vars: X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 1\n3*X1 + -2*Y2 = -4\n0 = 0\n";
  const auto d = DiophantineSystem::parse(text);
  CHECK(d.to_text() == text);
  CHECK(DiophantineSystem::parse(d.to_text()) == d);
  CHECK_THROWS_AS(DiophantineSystem::parse("X1 = 1\n"), ParseError);
  CHECK_THROWS_AS(DiophantineSystem::parse("vars: X1\n1*Z = 1\n"), ParseError);
  try {
    DiophantineSystem::parse("vars: X1\n1*X1 = 1\n1*X1 = q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  const std::map<std::string, Integer> named{{"X1", 1}, {"X2", 0}, {"Y1", 0}};
  CHECK_THROWS_AS(check_solution(d, named), InvalidArgument);
}

TEST_CASE("encoded solutions correspond to group solutions") {
  // For small systems on random groups, every box assignment of group
  // coordinates solves the group equations iff it solves the encoding.
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2, m = 1 + trial % 2;
    const auto p = oracle::random_presentation(rng, n, m, 2);
    const auto w = oracle::random_element(rng, p, 2);
    const auto g = MalcevElement::a(p, trial % 2);
    std::vector<GroupEquationSystem> systems{
        {p, {{cat(cat(v("x"), k(g)), v("x", -1)), cat(k(w), k(g))}}},
        {p, {{commutator_word(v("x"), v("y")), k(MalcevElement(p, IntVector(2), w.gamma()))}}},
        {p, {{cat(v("x"), v("y", -1)), k(w)}, {commutator_word(v("x"), k(g)), {}}}},
    };
    for (const auto& sys : systems) {
      const auto d = encode_system(sys);
      const bool two_vars = d.index_of("Y1").has_value();
      const std::size_t dim = static_cast<std::size_t>((n + m) * (two_vars ? 2 : 1));
      oracle::for_each_in_box(dim, 2, [&](const IntVector& flat) {
        const auto take = [&](std::size_t off) {
          IntVector a(flat.begin() + static_cast<long>(off), flat.begin() + static_cast<long>(off) + n);
          IntVector c(flat.begin() + static_cast<long>(off) + n, flat.begin() + static_cast<long>(off) + n + m);
          return MalcevElement(p, a, c);
        };
        std::map<std::string, MalcevElement> vals{{"x", take(0)}};
        if (two_vars) vals.emplace("y", take(static_cast<std::size_t>(n + m)));
        bool group_ok = true;
        for (const auto& eq : sys.equations) {
          auto eval = [&](const FactorWord& fw) {
            MalcevElement acc = MalcevElement::identity(p);
            for (const Factor& f : fw) {
              if (const auto* e = std::get_if<MalcevElement>(&f)) acc = acc * *e;
              else {
                const auto& var = std::get<Variable>(f);
                const auto& x = vals.at(var.name);
                acc = acc * (var.exponent > 0 ? x : inverse(x));
              }
            }
            return acc;
          };
          group_ok = group_ok && eval(eq.lhs) == eval(eq.rhs);
        }
        CHECK(group_ok == check_solution(d, assignment_from_elements(d, vals)));
      });
    }
  }
}

TEST_CASE("ring window") {
  const auto h = Tau2Presentation::heisenberg();
  const auto a = MalcevElement::a(h, 0), b = MalcevElement::a(h, 1);
  const auto rep = verify_ring_window_report(h, a, b, 5);
  CHECK(rep.ok);
  CHECK(rep.multiplication_checks == 121);
  CHECK(rep.addition_checks == 121);
  CHECK(rep.negation_checks == 11);
  CHECK(verify_ring_window(h, a, b, 0));
  CHECK_THROWS_AS(verify_ring_window(h, a, a, 2), PreconditionError);

  const auto sys = build_odot_system(h, a, b);
  CHECK(sys.group.equations.size() == 5);

  // witnesses from a mutated group must break the encoded systems
  const auto mutated = Tau2Presentation::from_table(2, 1, {make_vector({2})});
  const auto bad = check_ring_window(build_ring_systems(h, a, b), MalcevElement::a(mutated, 0),
                                     MalcevElement::a(mutated, 1), 3);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.failures.empty());
}
