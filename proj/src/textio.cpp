#include "tau2/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "tau2/errors.hpp"

namespace tau2 {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

// Non-empty lines split on whitespace.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(strip_comment(raw));
    Line l{number, {}};
    std::string w;
    while (words >> w) l.tokens.push_back(w);
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

long parse_long(const std::string& s, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ParseError(std::string("expected an integer for ") + what + ", got '" + s + "'", line);
  return v;
}

std::uint64_t parse_u64(const std::string& s, int line, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw ParseError(std::string("expected a nonnegative integer for ") + what + ", got '" + s + "'", line);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError(std::string("value out of range for ") + what, line);
  }
}

Integer parse_big(const std::string& s, int line) {
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

void expect_args(const Line& l, std::size_t count) {
  if (l.tokens.size() != count + 1)
    throw ParseError("'" + l.tokens[0] + "' takes " + std::to_string(count) + " argument(s)", l.number);
}

}  // namespace

Tau2Presentation parse_presentation(std::string_view text) {
  std::optional<long> n, m;
  struct Record {
    long t, i, j;
    Integer value;
    int line;
  };
  std::vector<Record> records;
  for (const Line& l : tokenize(text)) {
    const std::string& key = l.tokens[0];
    if (key == "n" || key == "m") {
      expect_args(l, 1);
      auto& slot = key == "n" ? n : m;
      if (slot) throw ParseError("duplicate '" + key + "'", l.number);
      slot = parse_long(l.tokens[1], l.number, key.c_str());
      if (*slot < 0) throw ParseError(key + " must be >= 0", l.number);
    } else if (key == "lambda") {
      expect_args(l, 4);
      records.push_back({parse_long(l.tokens[1], l.number, "t"), parse_long(l.tokens[2], l.number, "i"),
                         parse_long(l.tokens[3], l.number, "j"), parse_big(l.tokens[4], l.number),
                         l.number});
    } else {
      throw ParseError("unknown key '" + key + "'", l.number);
    }
  }
  if (!n) throw ParseError("missing 'n'");
  if (!m) throw ParseError("missing 'm'");
  std::set<std::tuple<long, long, long>> seen;
  std::vector<LambdaEntry> entries;
  for (const Record& r : records) {
    if (r.t < 1 || r.t > *m) throw ParseError("t out of range 1.." + std::to_string(*m), r.line);
    if (r.i < 1 || r.j > *n || r.i >= r.j) throw ParseError("need 1 <= i < j <= n", r.line);
    if (!seen.insert({r.t, r.i, r.j}).second) throw ParseError("duplicate lambda record", r.line);
    entries.push_back({static_cast<int>(r.t - 1), static_cast<int>(r.i - 1), static_cast<int>(r.j - 1), r.value});
  }
  return Tau2Presentation::from_entries(static_cast<int>(*n), static_cast<int>(*m), entries);
}

std::string format_presentation(const Tau2Presentation& p) {
  std::string out = "n " + std::to_string(p.n()) + "\nm " + std::to_string(p.m()) + "\n";
  for (int t = 0; t < p.m(); ++t)
    for (int i = 0; i < p.n(); ++i)
      for (int j = i + 1; j < p.n(); ++j) {
        const Integer v = p.lambda(t, i, j);
        if (sgn(v) != 0)
          out += "lambda " + std::to_string(t + 1) + " " + std::to_string(i + 1) + " " +
                 std::to_string(j + 1) + " " + v.get_str() + "\n";
      }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool has_variables(const FactorWord& w) {
  return std::any_of(w.begin(), w.end(), [](const Factor& f) { return std::holds_alternative<Variable>(f); });
}

MalcevElement fold(const Tau2Presentation& p, const FactorWord& w) {
  MalcevElement acc = MalcevElement::identity(p);
  for (const Factor& f : w) acc = acc * std::get<MalcevElement>(f);
  return acc;
}

constexpr long kMaxVariablePower = 1000;

class ExprParser {
 public:
  ExprParser(const Tau2Presentation& p, std::string_view s, int line, bool allow_vars)
      : p_(p), s_(s), line_(line), allow_vars_(allow_vars) {}

  FactorWord expr() {
    FactorWord w;
    skip();
    bool any = false;
    while (pos_ < s_.size() && std::string_view(")],=").find(s_[pos_]) == std::string_view::npos) {
      if (any && s_[pos_] == '*') {
        ++pos_;
        skip();
      }
      FactorWord f = factor();
      w.insert(w.end(), f.begin(), f.end());
      any = true;
      skip();
    }
    if (!any) fail("expected an expression");
    return w;
  }

  void expect_end() {
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1), line_);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char ch) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  FactorWord factor() {
    FactorWord base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      bool negative = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) negative = s_[pos_++] == '-';
      std::size_t end = pos_;
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
      if (end == pos_) fail("expected an integer exponent");
      Integer k(std::string(s_.substr(pos_, end - pos_)), 10);
      if (negative) k = -k;
      pos_ = end;
      return raise(base, k);
    }
    return base;
  }

  FactorWord raise(const FactorWord& w, const Integer& k) {
    if (!has_variables(w)) return {power(fold(p_, w), k)};
    if (abs(k) > kMaxVariablePower) fail("exponent too large for an expression with variables");
    const FactorWord unit = sgn(k) < 0 ? inverse_word(w) : w;
    FactorWord out;
    const long reps = Integer(abs(k)).get_si();
    for (long r = 0; r < reps; ++r) out.insert(out.end(), unit.begin(), unit.end());
    return out;
  }

  FactorWord atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      FactorWord w = expr();
      expect(')');
      return w;
    }
    if (ch == '[') {
      ++pos_;
      FactorWord u = expr();
      expect(',');
      FactorWord v = expr();
      expect(']');
      return commutator_word(u, v);
    }
    if (ch == '1') {
      ++pos_;
      return {};
    }
    if (!std::islower(static_cast<unsigned char>(ch))) fail(std::string("unexpected '") + ch + "'");
    std::size_t end = pos_;
    while (end < s_.size() && (std::islower(static_cast<unsigned char>(s_[end])) ||
                               std::isdigit(static_cast<unsigned char>(s_[end]))))
      ++end;
    const std::string name(s_.substr(pos_, end - pos_));
    if (name.size() > 1 && (name[0] == 'a' || name[0] == 'c') &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const long k = std::stol(name.substr(1));
      const int limit = name[0] == 'a' ? p_.n() : p_.m();
      if (k < 1 || k > limit) fail("generator " + name + " out of range");
      pos_ = end;
      return {name[0] == 'a' ? MalcevElement::a(p_, static_cast<int>(k - 1))
                             : MalcevElement::c(p_, static_cast<int>(k - 1))};
    }
    if (!allow_vars_) fail("variables are not allowed here ('" + name + "')");
    pos_ = end;
    return {Variable{name, 1}};
  }

  const Tau2Presentation& p_;
  std::string_view s_;
  int line_;
  bool allow_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupEquationSystem parse_equations(const Tau2Presentation& p, std::string_view text) {
  GroupEquationSystem sys{p, {}};
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string line = strip_comment(raw);
    if (std::all_of(line.begin(), line.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }))
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.find('=', eq + 1) != std::string::npos)
      throw ParseError("equation needs exactly one '='", number);
    ExprParser lhs(p, std::string_view(line).substr(0, eq), number, true);
    ExprParser rhs(p, std::string_view(line).substr(eq + 1), number, true);
    GroupEquation e{lhs.expr(), rhs.expr()};
    lhs.expect_end();
    rhs.expect_end();
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

MalcevElement parse_element(const Tau2Presentation& p, std::string_view text) {
  ExprParser parser(p, text, 0, false);
  const FactorWord w = parser.expr();
  parser.expect_end();
  return fold(p, w);
}

// ---------------------------------------------------------------------------

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::optional<int> m;
  bool have_trials = false;
  int s_line = 0;
  for (const Line& l : tokenize(text)) {
    const std::string& key = l.tokens[0];
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", l.number);
    if (key == "model") {
      expect_args(l, 1);
      const std::string& v = l.tokens[1];
      if (v == "tau2") cfg.model.kind = ModelKind::Tau2;
      else if (v == "polycyclic") cfg.model.kind = ModelKind::Polycyclic;
      else if (v == "nilpotent") cfg.model.kind = ModelKind::Nilpotent;
      else throw ParseError("unknown model '" + v + "'", l.number);
    } else if (key == "n") {
      expect_args(l, 1);
      cfg.model.n = static_cast<int>(parse_long(l.tokens[1], l.number, "n"));
    } else if (key == "m") {
      expect_args(l, 1);
      m = static_cast<int>(parse_long(l.tokens[1], l.number, "m"));
    } else if (key == "S") {
      s_line = l.number;
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        if (l.tokens[k] == "inf") cfg.model.S.emplace_back(std::nullopt);
        else {
          const Integer s = parse_big(l.tokens[k], l.number);
          if (s < 1) throw ParseError("finite s_i must be >= 1", l.number);
          cfg.model.S.emplace_back(s);
        }
      }
    } else if (key == "ell") {
      if (l.tokens.size() < 2) throw ParseError("'ell' needs at least one value", l.number);
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        const long e = parse_long(l.tokens[k], l.number, "ell");
        if (e < 0) throw ParseError("ell must be >= 0", l.number);
        cfg.ells.push_back(static_cast<int>(e));
      }
    } else if (key == "properties") {
      if (l.tokens.size() < 2) throw ParseError("'properties' needs at least one name", l.number);
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        if (!is_known_property(l.tokens[k])) throw ParseError("unknown property '" + l.tokens[k] + "'", l.number);
        cfg.properties.push_back(l.tokens[k]);
      }
    } else if (key == "trials") {
      expect_args(l, 1);
      cfg.trials = parse_u64(l.tokens[1], l.number, "trials");
      if (cfg.trials == 0) throw ParseError("trials must be >= 1", l.number);
      have_trials = true;
    } else if (key == "seed") {
      expect_args(l, 1);
      cfg.seed = parse_u64(l.tokens[1], l.number, "seed");
    } else if (key == "exact") {
      expect_args(l, 1);
      const std::string& v = l.tokens[1];
      if (v == "true") cfg.exact = ExactMode::On;
      else if (v == "false") cfg.exact = ExactMode::Off;
      else if (v == "auto") cfg.exact = ExactMode::Auto;
      else throw ParseError("exact must be true, false or auto", l.number);
    } else {
      throw ParseError("unknown key '" + key + "'", l.number);
    }
  }
  if (!seen.contains("model")) throw ParseError("missing 'model'");
  if (!seen.contains("n")) throw ParseError("missing 'n'");
  if (cfg.ells.empty()) throw ParseError("missing 'ell'");
  if (cfg.properties.empty()) throw ParseError("missing 'properties'");
  if (!have_trials && cfg.exact != ExactMode::On) throw ParseError("missing 'trials'");
  if (cfg.model.kind == ModelKind::Tau2) {
    if (!m) throw ParseError("tau2 model needs 'm'");
    cfg.model.m = *m;
    if (!cfg.model.S.empty()) throw ParseError("'S' only applies to polycyclic and nilpotent models", s_line);
    if (cfg.model.n < 2 || cfg.model.m < 1) throw ParseError("tau2 model needs n >= 2 and m >= 1");
  } else {
    if (m) throw ParseError("'m' only applies to the tau2 model");
    if (cfg.exact == ExactMode::On) throw ParseError("exact mode is only available for the tau2 model");
    const int min_n = cfg.model.kind == ModelKind::Polycyclic ? 2 : 3;
    if (cfg.model.n < min_n) throw ParseError("model needs n >= " + std::to_string(min_n));
    if (!cfg.model.S.empty() && cfg.model.S.size() != static_cast<std::size_t>(cfg.model.n))
      throw ParseError("'S' must list n values", s_line);
  }
  for (const std::string& prop : cfg.properties) {
    try {
      check_property(cfg.model, prop);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tau2
