#include "tau2/dioph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

#include "tau2/errors.hpp"
#include "tau2/structure.hpp"

namespace tau2 {

namespace {

bool term_less(const Term& a, const Term& b) {
  if (a.vars.size() != b.vars.size()) return a.vars.size() > b.vars.size();
  return a.vars < b.vars;
}

void canonicalize(Constraint& c, std::size_t nvars) {
  for (Term& t : c.terms) {
    if (t.vars.empty() || t.vars.size() > 2)
      throw InvalidArgument("constraint terms must have degree 1 or 2");
    for (std::size_t v : t.vars)
      if (v >= nvars) throw InvalidArgument("constraint references an undeclared variable");
    std::sort(t.vars.begin(), t.vars.end());
  }
  std::sort(c.terms.begin(), c.terms.end(), term_less);
  std::vector<Term> merged;
  for (Term& t : c.terms) {
    if (!merged.empty() && merged.back().vars == t.vars)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.coeff) == 0; });
  c.terms = std::move(merged);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Integer parse_integer(const std::string& s, int line) {
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("bad integer '" + s + "'", line);
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

}  // namespace

DiophantineSystem::DiophantineSystem(std::vector<std::string> variables,
                                     std::vector<Constraint> constraints)
    : variables_(std::move(variables)), constraints_(std::move(constraints)) {
  std::vector<std::string> sorted = variables_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("duplicate variable name");
  for (Constraint& c : constraints_) canonicalize(c, variables_.size());
}

std::optional<std::size_t> DiophantineSystem::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

std::string DiophantineSystem::to_text() const {
  std::string out = "vars:";
  for (const std::string& v : variables_) out += " " + v;
  out += "\n";
  for (const Constraint& c : constraints_) {
    if (c.terms.empty()) out += "0";
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
      if (k) out += " + ";
      out += c.terms[k].coeff.get_str();
      for (std::size_t v : c.terms[k].vars) out += "*" + variables_[v];
    }
    out += " = " + c.rhs.get_str() + "\n";
  }
  return out;
}

DiophantineSystem DiophantineSystem::parse(std::string_view text) {
  std::vector<std::string> vars;
  std::vector<Constraint> constraints;
  bool have_header = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_header) {
      if (t.rfind("vars:", 0) != 0) throw ParseError("expected 'vars:' header", line_no);
      std::istringstream names(t.substr(5));
      std::string name;
      while (names >> name) vars.push_back(name);
      have_header = true;
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || t.find('=', eq + 1) != std::string::npos)
      throw ParseError("constraint needs exactly one '='", line_no);
    Constraint c;
    c.rhs = parse_integer(trim(std::string_view(t).substr(eq + 1)), line_no);
    const std::string lhs = trim(std::string_view(t).substr(0, eq));
    if (lhs != "0") {
      for (const std::string& term : split(lhs, '+')) {
        const std::vector<std::string> parts = split(term, '*');
        if (parts.size() < 2 || parts.size() > 3)
          throw ParseError("term '" + term + "' must be coeff*var or coeff*var*var", line_no);
        Term tm{parse_integer(parts[0], line_no), {}};
        for (std::size_t k = 1; k < parts.size(); ++k) {
          auto pos = std::find(vars.begin(), vars.end(), parts[k]);
          if (pos == vars.end()) throw ParseError("undeclared variable '" + parts[k] + "'", line_no);
          tm.vars.push_back(static_cast<std::size_t>(pos - vars.begin()));
        }
        c.terms.push_back(std::move(tm));
      }
    }
    constraints.push_back(std::move(c));
  }
  if (!have_header) throw ParseError("missing 'vars:' header");
  try {
    return DiophantineSystem(std::move(vars), std::move(constraints));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

bool ends_with_digit(std::string_view s) {
  return !s.empty() && std::isdigit(static_cast<unsigned char>(s.back()));
}

}  // namespace

std::string alpha_unknown_name(std::string_view var, int i) {
  return upper(var) + (ends_with_digit(var) ? "_" : "") + std::to_string(i + 1);
}

std::string gamma_unknown_name(std::string_view var, int t) {
  return upper(var) + "g" + std::to_string(t + 1);
}

std::optional<UnknownName> decode_unknown_name(std::string_view name) {
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
      return std::isdigit(static_cast<unsigned char>(ch));
    });
  };
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
  };
  UnknownName u;
  std::string_view base, idx;
  if (const auto g = name.find('g'); g != std::string_view::npos) {
    base = name.substr(0, g);
    idx = name.substr(g + 1);
    u.is_gamma = true;
  } else if (const auto us = name.find('_'); us != std::string_view::npos) {
    base = name.substr(0, us);
    idx = name.substr(us + 1);
    if (!ends_with_digit(base)) return std::nullopt;
  } else {
    std::size_t k = name.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(name[k - 1]))) --k;
    base = name.substr(0, k);
    idx = name.substr(k);
  }
  if (base.empty() || !all_digits(idx)) return std::nullopt;
  u.group_variable = lower(base);
  if (!is_valid_variable_name(u.group_variable)) return std::nullopt;
  u.index = std::stoi(std::string(idx)) - 1;
  if (u.index < 0) return std::nullopt;
  return u;
}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char ch : name)
    if (!std::islower(static_cast<unsigned char>(ch)) && !std::isdigit(static_cast<unsigned char>(ch)))
      return false;
  if ((name[0] == 'a' || name[0] == 'c') && name.size() > 1 &&
      std::all_of(name.begin() + 1, name.end(),
                  [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    return false;
  return true;
}

FactorWord inverse_word(const FactorWord& w) {
  FactorWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (const auto* e = std::get_if<MalcevElement>(&*it))
      out.emplace_back(inverse(*e));
    else {
      Variable v = std::get<Variable>(*it);
      v.exponent = -v.exponent;
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

FactorWord commutator_word(const FactorWord& u, const FactorWord& v) {
  FactorWord out = inverse_word(u);
  const FactorWord vi = inverse_word(v);
  out.insert(out.end(), vi.begin(), vi.end());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

// Polynomials in the unknowns, degree <= 2. A monomial is a sorted list of
// unknown ids (empty = constant).
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Integer>;

void add_scaled(Poly& acc, const Poly& p, const Integer& scale) {
  if (sgn(scale) == 0) return;
  for (const auto& [mono, coeff] : p) {
    Integer& slot = acc[mono];
    slot += scale * coeff;
    if (sgn(slot) == 0) acc.erase(mono);
  }
}

Poly product(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial mono = ma;
      mono.insert(mono.end(), mb.begin(), mb.end());
      if (mono.size() > 2)
        throw InvariantViolation("encoder produced a term of degree > 2");
      std::sort(mono.begin(), mono.end());
      Integer& slot = out[mono];
      slot += ca * cb;
      if (sgn(slot) == 0) out.erase(mono);
    }
  return out;
}

Poly constant(const Integer& c) {
  Poly p;
  if (sgn(c) != 0) p[{}] = c;
  return p;
}

Poly unknown(int id, const Integer& coeff = 1) {
  Poly p;
  p[{id}] = coeff;
  return p;
}

class Registry {
 public:
  int id(const std::string& var, bool gamma, int index) {
    auto key = std::make_tuple(var, gamma, index);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(keys_.size());
    ids_.emplace(key, id);
    keys_.push_back(key);
    return id;
  }
  void touch(const std::string& var) {
    if (std::find(order_.begin(), order_.end(), var) == order_.end()) order_.push_back(var);
  }
  const std::vector<std::string>& order() const { return order_; }
  const std::tuple<std::string, bool, int>& key(int id) const {
    return keys_[static_cast<std::size_t>(id)];
  }

 private:
  std::map<std::tuple<std::string, bool, int>, int> ids_;
  std::vector<std::tuple<std::string, bool, int>> keys_;
  std::vector<std::string> order_;
};

struct Collected {
  std::vector<Poly> alpha;
  std::vector<Poly> gamma;
};

Collected collect(const Tau2Presentation& p, const FactorWord& w, Registry& reg) {
  const auto n = static_cast<std::size_t>(p.n()), m = static_cast<std::size_t>(p.m());
  Collected st{std::vector<Poly>(n), std::vector<Poly>(m)};
  for (const Factor& f : w) {
    std::vector<Poly> fa(n), fg(m);
    if (const auto* e = std::get_if<MalcevElement>(&f)) {
      if (!(e->presentation() == p))
        throw PresentationMismatch("equation constant belongs to another presentation");
      for (std::size_t i = 0; i < n; ++i) fa[i] = constant(e->alpha()[i]);
      for (std::size_t t = 0; t < m; ++t) fg[t] = constant(e->gamma()[t]);
    } else {
      const Variable& v = std::get<Variable>(f);
      if (!is_valid_variable_name(v.name))
        throw InvalidArgument("invalid variable name '" + v.name + "'");
      if (v.exponent != 1 && v.exponent != -1)
        throw InvalidArgument("variable exponent must be +-1");
      reg.touch(v.name);
      const Integer sign = v.exponent;
      for (std::size_t i = 0; i < n; ++i) fa[i] = unknown(reg.id(v.name, false, static_cast<int>(i)), sign);
      for (std::size_t t = 0; t < m; ++t) fg[t] = unknown(reg.id(v.name, true, static_cast<int>(t)), sign);
      if (v.exponent < 0) {
        // gamma(x^-1) = -gamma(x) - sum_{j<i} lambda(t,j,i) X_i X_j
        for (int j = 0; j < p.n(); ++j)
          for (int i = j + 1; i < p.n(); ++i) {
            const Poly xx = product(unknown(reg.id(v.name, false, i)), unknown(reg.id(v.name, false, j)));
            for (int t = 0; t < p.m(); ++t)
              add_scaled(fg[static_cast<std::size_t>(t)], xx, -p.lambda(t, j, i));
          }
      }
    }
    // gamma += gamma_f - sum_{j<i} lambda(t,j,i) alpha_i(acc) alpha_j(f)
    for (int j = 0; j < p.n(); ++j) {
      if (fa[static_cast<std::size_t>(j)].empty()) continue;
      for (int i = j + 1; i < p.n(); ++i) {
        if (st.alpha[static_cast<std::size_t>(i)].empty()) continue;
        const Poly cross = product(st.alpha[static_cast<std::size_t>(i)], fa[static_cast<std::size_t>(j)]);
        for (int t = 0; t < p.m(); ++t)
          add_scaled(st.gamma[static_cast<std::size_t>(t)], cross, -p.lambda(t, j, i));
      }
    }
    for (std::size_t t = 0; t < m; ++t) add_scaled(st.gamma[t], fg[t], 1);
    for (std::size_t i = 0; i < n; ++i) add_scaled(st.alpha[i], fa[i], 1);
  }
  return st;
}

}  // namespace

DiophantineSystem encode_system(const GroupEquationSystem& s) {
  const Tau2Presentation& p = s.presentation;
  Registry reg;
  std::vector<Poly> zeros;  // each must vanish
  for (const GroupEquation& eq : s.equations) {
    const Collected l = collect(p, eq.lhs, reg);
    const Collected r = collect(p, eq.rhs, reg);
    for (std::size_t i = 0; i < l.alpha.size(); ++i) {
      Poly d = l.alpha[i];
      add_scaled(d, r.alpha[i], -1);
      if (!d.empty()) zeros.push_back(std::move(d));
    }
    for (std::size_t t = 0; t < l.gamma.size(); ++t) {
      Poly d = l.gamma[t];
      add_scaled(d, r.gamma[t], -1);
      if (!d.empty()) zeros.push_back(std::move(d));
    }
  }

  std::vector<bool> used_gamma;
  for (const Poly& z : zeros)
    for (const auto& [mono, coeff] : z)
      for (int id : mono) {
        if (static_cast<std::size_t>(id) >= used_gamma.size())
          used_gamma.resize(static_cast<std::size_t>(id) + 1, false);
        used_gamma[static_cast<std::size_t>(id)] = true;
      }

  std::vector<std::string> names;
  std::map<int, std::size_t> position;
  for (const std::string& var : reg.order()) {
    for (int i = 0; i < p.n(); ++i) {
      position[reg.id(var, false, i)] = names.size();
      names.push_back(alpha_unknown_name(var, i));
    }
    for (int t = 0; t < p.m(); ++t) {
      const int id = reg.id(var, true, t);
      if (static_cast<std::size_t>(id) < used_gamma.size() && used_gamma[static_cast<std::size_t>(id)]) {
        position[id] = names.size();
        names.push_back(gamma_unknown_name(var, t));
      }
    }
  }

  std::vector<Constraint> constraints;
  for (const Poly& z : zeros) {
    Constraint c;
    for (const auto& [mono, coeff] : z) {
      if (mono.empty()) {
        c.rhs = -coeff;
        continue;
      }
      Term t{coeff, {}};
      for (int id : mono) t.vars.push_back(position.at(id));
      c.terms.push_back(std::move(t));
    }
    constraints.push_back(std::move(c));
  }
  return DiophantineSystem(std::move(names), std::move(constraints));
}

DiophantineSystem encode_commutator_equation(const Tau2Presentation& p, const MalcevElement& w,
                                             std::string_view x, std::string_view y) {
  if (!(w.presentation() == p)) throw PresentationMismatch("w belongs to another presentation");
  if (!w.is_central_word()) throw PreconditionError("right-hand side must lie in <C> (alpha(w) = 0)");
  if (!is_valid_variable_name(x) || !is_valid_variable_name(y) || x == y)
    throw InvalidArgument("need two distinct valid variable names");
  std::vector<std::string> names;
  for (int i = 0; i < p.n(); ++i) names.push_back(alpha_unknown_name(x, i));
  for (int j = 0; j < p.n(); ++j) names.push_back(alpha_unknown_name(y, j));
  const auto n = static_cast<std::size_t>(p.n());
  std::vector<Constraint> constraints;
  for (int t = 0; t < p.m(); ++t) {
    Constraint c;
    c.rhs = w.gamma()[static_cast<std::size_t>(t)];
    for (int i = 0; i < p.n(); ++i)
      for (int j = 0; j < p.n(); ++j) {
        Integer l = p.lambda(t, i, j);
        if (sgn(l) != 0) c.terms.push_back({l, {static_cast<std::size_t>(i), n + static_cast<std::size_t>(j)}});
      }
    canonicalize(c, names.size());
    if (c.terms.empty() && sgn(c.rhs) == 0) continue;
    constraints.push_back(std::move(c));
  }
  return DiophantineSystem(std::move(names), std::move(constraints));
}

namespace {

bool satisfies(const Constraint& c, std::span<const Integer> a) {
  Integer s;
  for (const Term& t : c.terms) {
    if (t.vars.size() == 1)
      s += t.coeff * a[t.vars[0]];
    else
      s += t.coeff * a[t.vars[0]] * a[t.vars[1]];
  }
  return s == c.rhs;
}

}  // namespace

bool check_solution(const DiophantineSystem& d, std::span<const Integer> assignment) {
  if (assignment.size() != d.variables().size())
    throw InvalidArgument("assignment must give one value per variable");
  return std::all_of(d.constraints().begin(), d.constraints().end(),
                     [&](const Constraint& c) { return satisfies(c, assignment); });
}

bool check_solution(const DiophantineSystem& d, const std::map<std::string, Integer>& assignment) {
  IntVector a;
  a.reserve(d.variables().size());
  for (const std::string& v : d.variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw InvalidArgument("assignment is missing variable " + v);
    a.push_back(it->second);
  }
  return check_solution(d, a);
}

IntVector assignment_from_elements(const DiophantineSystem& d,
                                   const std::map<std::string, MalcevElement>& values) {
  IntVector a;
  a.reserve(d.variables().size());
  for (const std::string& v : d.variables()) {
    const auto u = decode_unknown_name(v);
    if (!u) throw InvalidArgument("unknown '" + v + "' does not follow the naming scheme");
    auto it = values.find(u->group_variable);
    if (it == values.end()) throw InvalidArgument("no value for group variable " + u->group_variable);
    const IntVector& coords = u->is_gamma ? it->second.gamma() : it->second.alpha();
    if (static_cast<std::size_t>(u->index) >= coords.size())
      throw DimensionMismatch("unknown " + v + " exceeds the element's coordinates");
    a.push_back(coords[static_cast<std::size_t>(u->index)]);
  }
  return a;
}

std::vector<IntVector> box_solve(const DiophantineSystem& d, int box, std::uint64_t budget) {
  if (box < 0) throw InvalidArgument("box radius must be >= 0");
  const std::size_t nv = d.variables().size();
  const std::uint64_t side = 2 * static_cast<std::uint64_t>(box) + 1;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < nv; ++k) {
    if (total > budget / side) throw BudgetExceeded("box enumeration exceeds the evaluation budget");
    total *= side;
  }
  std::vector<IntVector> out;
  IntVector a(nv, Integer(-box));
  for (;;) {
    if (check_solution(d, a)) out.push_back(a);
    // Odometer with the last variable fastest: lexicographic order.
    std::size_t k = nv;
    while (k > 0 && a[k - 1] == box) a[--k] = -box;
    if (k == 0) break;
    ++a[k - 1];
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

FactorWord var(const std::string& name, int exp = 1) { return {Variable{name, exp}}; }
FactorWord elem(const MalcevElement& e) { return {e}; }
FactorWord concat(FactorWord a, const FactorWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_noncommuting(const Tau2Presentation& p, const MalcevElement& a, const MalcevElement& b) {
  if (!(a.presentation() == p) || !(b.presentation() == p))
    throw PresentationMismatch("a and b must belong to the presentation");
  if (commutator(a, b).is_identity()) throw PreconditionError("a and b commute");
}

// x = [a, u], [u, b] = 1  (x ranges over Z = [a, C(b)])
void add_membership(std::vector<GroupEquation>& eqs, const Tau2Presentation& p,
                    const MalcevElement& a, const MalcevElement& b, const std::string& x,
                    const std::string& u) {
  const FactorWord one;
  eqs.push_back({var(x), commutator_word(elem(a), var(u))});
  eqs.push_back({commutator_word(var(u), elem(b)), one});
  (void)p;
}

}  // namespace

EncodedSystem build_odot_system(const Tau2Presentation& p, const MalcevElement& a,
                                const MalcevElement& b) {
  require_noncommuting(p, a, b);
  const FactorWord one;
  std::vector<GroupEquation> eqs;
  eqs.push_back({var("x1"), commutator_word(var("y1"), elem(b))});
  eqs.push_back({commutator_word(var("y1"), elem(a)), one});
  eqs.push_back({var("x2"), commutator_word(elem(a), var("y2"))});
  eqs.push_back({commutator_word(var("y2"), elem(b)), one});
  eqs.push_back({var("x3"), commutator_word(var("y1"), var("y2"))});
  GroupEquationSystem g{p, std::move(eqs)};
  DiophantineSystem d = encode_system(g);
  return {std::move(g), std::move(d)};
}

EncodedSystem build_oplus_system(const Tau2Presentation& p, const MalcevElement& a,
                                 const MalcevElement& b) {
  require_noncommuting(p, a, b);
  std::vector<GroupEquation> eqs;
  add_membership(eqs, p, a, b, "x", "u");
  add_membership(eqs, p, a, b, "y", "v");
  add_membership(eqs, p, a, b, "z", "w");
  eqs.push_back({concat(var("x"), var("y")), var("z")});
  GroupEquationSystem g{p, std::move(eqs)};
  DiophantineSystem d = encode_system(g);
  return {std::move(g), std::move(d)};
}

EncodedSystem build_ominus_system(const Tau2Presentation& p, const MalcevElement& a,
                                  const MalcevElement& b) {
  require_noncommuting(p, a, b);
  std::vector<GroupEquation> eqs;
  add_membership(eqs, p, a, b, "x", "u");
  add_membership(eqs, p, a, b, "y", "v");
  eqs.push_back({concat(var("x"), var("y")), FactorWord{}});
  GroupEquationSystem g{p, std::move(eqs)};
  DiophantineSystem d = encode_system(g);
  return {std::move(g), std::move(d)};
}

RingSystems build_ring_systems(const Tau2Presentation& p, const MalcevElement& a,
                               const MalcevElement& b) {
  return {build_odot_system(p, a, b), build_oplus_system(p, a, b), build_ominus_system(p, a, b)};
}

RingWindowReport check_ring_window(const RingSystems& systems, const MalcevElement& a,
                                   const MalcevElement& b, int window) {
  if (window < 0) throw InvalidArgument("window radius must be >= 0");
  RingWindowReport rep;
  const MalcevElement c = commutator(a, b);
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.failures.push_back(what);
  };
  for (int t1 = -window; t1 <= window; ++t1) {
    for (int t2 = -window; t2 <= window; ++t2) {
      const std::string at = " t1=" + std::to_string(t1) + " t2=" + std::to_string(t2);
      {
        const MalcevElement y1 = power(a, t1), y2 = power(b, t2);
        const MalcevElement x1 = commutator(y1, b), x2 = commutator(a, y2), x3 = commutator(y1, y2);
        const std::map<std::string, MalcevElement> vals{
            {"x1", x1}, {"x2", x2}, {"x3", x3}, {"y1", y1}, {"y2", y2}};
        ++rep.multiplication_checks;
        if (!check_solution(systems.odot.encoded, assignment_from_elements(systems.odot.encoded, vals)))
          fail("odot" + at + ": encoded system not satisfied by witnesses");
        else if (!(x1 == power(c, t1)) || !(x2 == power(c, t2)) ||
                 !(x3 == power(c, Integer(t1) * t2)))
          fail("odot" + at + ": x3 != c^(t1*t2)");
      }
      {
        const MalcevElement u = power(b, t1), v = power(b, t2), w = power(b, t1 + t2);
        const MalcevElement x = commutator(a, u), y = commutator(a, v), z = commutator(a, w);
        const std::map<std::string, MalcevElement> vals{{"x", x}, {"y", y}, {"z", z},
                                                        {"u", u}, {"v", v}, {"w", w}};
        ++rep.addition_checks;
        if (!check_solution(systems.oplus.encoded, assignment_from_elements(systems.oplus.encoded, vals)))
          fail("oplus" + at + ": encoded system not satisfied by witnesses");
        else if (!(z == power(c, t1 + t2)))
          fail("oplus" + at + ": z != c^(t1+t2)");
      }
    }
    const MalcevElement u = power(b, t1), v = power(b, -t1);
    const MalcevElement x = commutator(a, u), y = commutator(a, v);
    const std::map<std::string, MalcevElement> vals{{"x", x}, {"y", y}, {"u", u}, {"v", v}};
    ++rep.negation_checks;
    if (!check_solution(systems.ominus.encoded, assignment_from_elements(systems.ominus.encoded, vals)))
      fail("ominus t=" + std::to_string(t1) + ": encoded system not satisfied by witnesses");
    else if (!(y == power(c, -t1)))
      fail("ominus t=" + std::to_string(t1) + ": y != c^(-t)");
  }
  return rep;
}

RingWindowReport verify_ring_window_report(const Tau2Presentation& p, const MalcevElement& a,
                                           const MalcevElement& b, int window) {
  require_noncommuting(p, a, b);
  if (window < 0) throw PreconditionError("window radius must be >= 0");
  const CenterDescription z = center(p);
  if (!is_c_small(a, z)) throw PreconditionError("a is not c-small");
  if (!is_c_small(b, z)) throw PreconditionError("b is not c-small");
  return check_ring_window(build_ring_systems(p, a, b), a, b, window);
}

bool verify_ring_window(const Tau2Presentation& p, const MalcevElement& a, const MalcevElement& b,
                        int window) {
  return verify_ring_window_report(p, a, b, window).ok;
}

}  // namespace tau2
