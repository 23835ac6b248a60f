#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "tau2/cli.hpp"

using namespace tau2;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tau2");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(TAU2_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("analyze") {
  const Run h = run({"analyze", data("heisenberg.pres")});
  REQUIRE(h.code == 0);
  const auto j = nlohmann::json::parse(h.out);
  CHECK(j["regular"] == true);
  CHECK(j["scalar_ring_is_Z_certified"] == true);
  CHECK(j["csmall"] == nlohmann::json::array({true, true}));
  CHECK(j["invariants"]["span_identity_holds"] == true);

  const Run a = run({"analyze", data("abelian.pres")});
  REQUIRE(a.code == 0);
  const auto ja = nlohmann::json::parse(a.out);
  CHECK(ja["regular"] == false);
  CHECK(ja["scalar_ring_is_Z_certified"] == false);

  const Run bad = run({"analyze", data("malformed.pres")});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(run({"analyze", data("duplicate.pres")}).code == kExitUsage);
  CHECK(run({"analyze", data("missing.pres")}).code == kExitUsage);
  CHECK(run({"analyze"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"analyze", data("heisenberg.pres"), "--bogus"}).code == kExitUsage);
}

TEST_CASE("encode") {
  const Run c = run({"encode", data("heisenberg.pres"), data("commutator.eqs")});
  REQUIRE(c.code == 0);
  CHECK(c.out == "vars: X1 X2 Y1 Y2\n1*X1*Y2 + -1*X2*Y1 = 1\n");

  const Run t = run({"encode", data("heisenberg.pres"), data("trivial.eqs")});
  CHECK(t.code == 0);
  CHECK(t.out == "vars: X1 X2\n");

  const Run f = run({"encode", data("heisenberg.pres"), data("fix.eqs")});
  CHECK(f.out == "vars: X1 X2 Xg1\n1*X1 = 1\n1*X2 = 0\n1*Xg1 = 0\n");

  const Run b = run({"encode", data("heisenberg.pres"), data("commutator.eqs"), "--box", "1"});
  CHECK(b.code == 0);
  CHECK(b.out.find("solutions in box 1: 20\n") != std::string::npos);

  const Run s = run({"encode", data("heisenberg.pres"), data("square.eqs"), "--box", "3"});
  CHECK(s.out.find("solutions in box 3: 0\n") != std::string::npos);

  CHECK(run({"encode", data("heisenberg.pres"), data("commutator.eqs"), "--box", "60"}).code == kExitBudget);
}

TEST_CASE("odot") {
  const Run p = run({"odot", data("heisenberg.pres"), "a1", "a2", "--window", "5"});
  CHECK(p.code == 0);
  CHECK(p.out.rfind("odot window 5: pass", 0) == 0);
  CHECK(run({"odot", data("heisenberg.pres"), "a1", "a2", "--window", "0"}).code == 0);
  CHECK(run({"odot", data("heisenberg.pres"), "a1", "a1^2", "--window", "2"}).code == kExitPrecondition);
  CHECK(run({"odot", data("heisenberg.pres"), "a1", "a2"}).code == kExitUsage);
  CHECK(run({"odot", data("n3m2.pres"), "a1", "a3", "--window", "3"}).code == 0);
}

TEST_CASE("experiment") {
  const Run e = run({"experiment", data("exact_n2m2.cfg")});
  REQUIRE(e.code == 0);
  CHECK(e.out.find("tau2,2,2,,1,mainthm_conjunction,exact,8,9,8/9,0.888889,0.888889,0.888889,\n") !=
        std::string::npos);
  CHECK(run({"experiment", data("zero_trials.cfg")}).code == kExitUsage);

  const Run a = run({"--threads", "1", "experiment", data("mc_n3m2.cfg")});
  const Run b = run({"--threads", "4", "experiment", data("mc_n3m2.cfg")});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = run({"--seed", "99", "experiment", data("mc_n3m2.cfg")});
  CHECK(c.out != a.out);
  CHECK(run({"--version-header", "experiment", data("exact_n2m2.cfg")}).out.rfind("# tau2 format 1\n", 0) == 0);
}
