#pragma once

// Encoding equations over a tau_2-group as integer polynomial systems of
// degree <= 2, plus the ring-of-integers construction inside the group.
//
// Every group variable `x` contributes integer unknowns for its Malcev
// coordinates. Naming (1-based indices, NAME = upper-cased variable name):
//
//   alpha_i(x) -> NAME<i>      e.g. X1, Y2   (NAME_<i> when NAME ends in a digit: X1_2)
//   gamma_t(x) -> NAME g<t>    e.g. Xg1      (X1g1)
//
// All alpha unknowns are declared; a gamma unknown is declared only when it
// occurs in some constraint. Gamma unknowns that never occur are the free
// central parts: solutions are reported modulo them.
//
// Text format, one record per line:
//
//   vars: X1 X2 Y1 Y2
//   1*X1*Y2 + -1*X2*Y1 = 1
//
// Terms are printed in canonical order (quadratic before linear, then by
// variable position), an empty left side prints as `0`.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tau2/group.hpp"
#include "tau2/intlin.hpp"

namespace tau2 {

struct Term {
  Integer coeff;
  std::vector<std::size_t> vars;  ///< one or two variable positions, sorted
  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::vector<Term> terms;
  Integer rhs;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class DiophantineSystem {
 public:
  DiophantineSystem() = default;
  /// Validates that every term references a declared variable and has degree
  /// 1 or 2; terms are brought to canonical order.
  DiophantineSystem(std::vector<std::string> variables, std::vector<Constraint> constraints);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  std::string to_text() const;
  static DiophantineSystem parse(std::string_view text);

  friend bool operator==(const DiophantineSystem&, const DiophantineSystem&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<Constraint> constraints_;
};

/// Origin of an unknown, recovered from its name.
struct UnknownName {
  std::string group_variable;  ///< lower-case variable name
  bool is_gamma = false;
  int index = 0;  ///< 0-based coordinate index
};
std::string alpha_unknown_name(std::string_view var, int i);
std::string gamma_unknown_name(std::string_view var, int t);
std::optional<UnknownName> decode_unknown_name(std::string_view name);

// ---------------------------------------------------------------------------
// Group equations

struct Variable {
  std::string name;
  int exponent = 1;  ///< +1 or -1
};

using Factor = std::variant<MalcevElement, Variable>;
using FactorWord = std::vector<Factor>;

FactorWord inverse_word(const FactorWord& w);
/// [u, v] = u^-1 v^-1 u v
FactorWord commutator_word(const FactorWord& u, const FactorWord& v);

struct GroupEquation {
  FactorWord lhs;
  FactorWord rhs;
};

struct GroupEquationSystem {
  Tau2Presentation presentation;
  std::vector<GroupEquation> equations;
};

/// Variable names must be [a-z][a-z0-9]* and must not look like a generator
/// (a<k> or c<k>).
bool is_valid_variable_name(std::string_view name);

/// Collects both sides symbolically to Malcev normal form (alpha-parts linear,
/// gamma-parts at most quadratic) and equates coordinates. Integer solutions
/// correspond exactly to group solutions, modulo undeclared central parts.
DiophantineSystem encode_system(const GroupEquationSystem& s);

/// [x, y] = w with w in <C>: m constraints sum_{i,j} lambda(t,i,j) X_i Y_j = gamma_t(w).
DiophantineSystem encode_commutator_equation(const Tau2Presentation& p, const MalcevElement& w,
                                             std::string_view x = "x", std::string_view y = "y");

/// Positional assignment (one value per declared variable).
bool check_solution(const DiophantineSystem& d, std::span<const Integer> assignment);
/// Named assignment; throws InvalidArgument when a declared variable is missing.
bool check_solution(const DiophantineSystem& d, const std::map<std::string, Integer>& assignment);

/// Assignment of the declared unknowns read off concrete group elements.
IntVector assignment_from_elements(const DiophantineSystem& d,
                                   const std::map<std::string, MalcevElement>& values);

inline constexpr std::uint64_t kDefaultBoxBudget = 10'000'000;

/// All solutions in [-B, B]^#vars in lexicographic order of the assignment.
/// Throws BudgetExceeded when (2B+1)^#vars exceeds `budget`.
std::vector<IntVector> box_solve(const DiophantineSystem& d, int box,
                                 std::uint64_t budget = kDefaultBoxBudget);

// ---------------------------------------------------------------------------
// Z inside G

struct EncodedSystem {
  GroupEquationSystem group;
  DiophantineSystem encoded;
};

/// x1 = [y1, b], [y1, a] = 1, x2 = [a, y2], [y2, b] = 1, x3 = [y1, y2]
/// (y1, y2 play the role of x1', x2'). Requires [a, b] != 1.
EncodedSystem build_odot_system(const Tau2Presentation& p, const MalcevElement& a,
                                const MalcevElement& b);

/// x = [a, u], [u, b] = 1 for x, y, z (witnesses u, v, w) and x y = z.
EncodedSystem build_oplus_system(const Tau2Presentation& p, const MalcevElement& a,
                                 const MalcevElement& b);

/// x = [a, u], [u, b] = 1, y = [a, v], [v, b] = 1, x y = 1.
EncodedSystem build_ominus_system(const Tau2Presentation& p, const MalcevElement& a,
                                  const MalcevElement& b);

struct RingSystems {
  EncodedSystem odot;
  EncodedSystem oplus;
  EncodedSystem ominus;
};

RingSystems build_ring_systems(const Tau2Presentation& p, const MalcevElement& a,
                               const MalcevElement& b);

struct RingWindowReport {
  bool ok = true;
  std::size_t multiplication_checks = 0;
  std::size_t addition_checks = 0;
  std::size_t negation_checks = 0;
  std::vector<std::string> failures;  ///< one line per failing window point
};

/// Window check against prebuilt systems. `a`, `b` supply the group arithmetic
/// used to build witnesses; they may come from a different presentation than
/// the systems (the mutation control relies on that). For |t1|, |t2| <= T it
/// plugs x1' = a^t1, x2' = b^t2 (and the analogous witnesses for + and -)
/// into the encoded systems and compares against c^(t1 t2), c^(t1 + t2),
/// c^(-t1) with c = [a, b].
RingWindowReport check_ring_window(const RingSystems& systems, const MalcevElement& a,
                                   const MalcevElement& b, int window);

/// Requires a, b c-small and [a, b] != 1 (PreconditionError otherwise).
RingWindowReport verify_ring_window_report(const Tau2Presentation& p, const MalcevElement& a,
                                           const MalcevElement& b, int window);
bool verify_ring_window(const Tau2Presentation& p, const MalcevElement& a,
                        const MalcevElement& b, int window);

}  // namespace tau2
