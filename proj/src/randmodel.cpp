#include "tau2/randmodel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tau2/errors.hpp"
#include "tau2/structure.hpp"

namespace tau2 {

namespace {

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::size_t pairs_of(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2; }

// Runs body(begin, end, worker) over [0, total) split into contiguous chunks.
void parallel_chunks(std::uint64_t total, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < 2) {
    body(0, total, 0);
    return;
  }
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * w / workers, end = total * (w + 1) / workers;
    pool.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void validate(const Tau2ModelParams& params) {
  if (params.n < 2) throw InvalidArgument("tau2 model needs n >= 2");
  if (params.m < 1) throw InvalidArgument("tau2 model needs m >= 1");
  if (params.ell < 0) throw InvalidArgument("exponent bound ell must be >= 0");
}

Integer sample_space_size(const Tau2ModelParams& params) {
  validate(params);
  return ipow(Integer(2 * params.ell + 1),
              static_cast<unsigned long>(params.m) * pairs_of(params.n));
}

Tau2Presentation sample_tau2(const Tau2ModelParams& params, std::mt19937_64& rng) {
  validate(params);
  std::uniform_int_distribution<int> dist(-params.ell, params.ell);
  std::vector<IntVector> table(static_cast<std::size_t>(params.m), IntVector(pairs_of(params.n)));
  for (IntVector& row : table)
    for (Integer& x : row) x = dist(rng);
  return Tau2Presentation::from_table(params.n, params.m, std::move(table));
}

Tau2Presentation tau2_at(const Tau2ModelParams& params, std::uint64_t index) {
  const Integer size = sample_space_size(params);
  if (Integer(std::to_string(index)) >= size) throw InvalidArgument("index outside the sample space");
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(params.ell) + 1;
  const std::size_t pairs = pairs_of(params.n);
  std::vector<IntVector> table(static_cast<std::size_t>(params.m), IntVector(pairs));
  // The last-drawn entry is the fastest digit.
  for (std::size_t k = static_cast<std::size_t>(params.m) * pairs; k-- > 0;) {
    table[k / pairs][k % pairs] = static_cast<long>(index % radix) - params.ell;
    index /= radix;
  }
  return Tau2Presentation::from_table(params.n, params.m, std::move(table));
}

namespace {

std::uint64_t checked_size(const Tau2ModelParams& params, std::uint64_t budget) {
  const Integer size = sample_space_size(params);
  if (size > Integer(std::to_string(budget)))
    throw BudgetExceeded("sample space of size " + size.get_str() + " exceeds the budget " +
                         std::to_string(budget));
  return std::stoull(size.get_str());
}

}  // namespace

void for_each_tau2(const Tau2ModelParams& params,
                   const std::function<void(const Tau2Presentation&)>& visit, std::uint64_t budget) {
  const std::uint64_t total = checked_size(params, budget);
  for (std::uint64_t k = 0; k < total; ++k) visit(tau2_at(params, k));
}

std::vector<Tau2Presentation> enumerate_tau2(const Tau2ModelParams& params, std::uint64_t budget) {
  std::vector<Tau2Presentation> out;
  for_each_tau2(params, [&](const Tau2Presentation& p) { out.push_back(p); }, budget);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(BoundVariant v) {
  return v == BoundVariant::MainThm ? "mainthm" : "regularity";
}

std::string_view to_string(LConvention c) {
  return c == LConvention::TwoEll ? "L=2ell" : "L=2ell+1";
}

CountBound count_bound_p(int n, int m, int ell, BoundVariant variant, LConvention convention) {
  if (n < 2 || m < 1 || ell < 1) throw InvalidArgument("count bound needs n >= 2, m >= 1, ell >= 1");
  CountBound b{variant, convention, Integer(convention == LConvention::TwoEll ? 2 * ell : 2 * ell + 1),
               Integer(1), Integer(), mpq_class(), true};
  const auto N = static_cast<unsigned long>(pairs_of(n));
  const auto um = static_cast<unsigned long>(m);
  const Integer Lm = ipow(b.L, um);
  auto take = [&](const Integer& factor) {
    if (sgn(factor) < 0) b.factors_nonnegative = false;
    b.p *= factor;
  };
  if (variant == BoundVariant::MainThm) {
    if (m < n - 1) throw InvalidArgument("mainthm bound needs m >= n - 1");
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        take(Lm - ipow(b.L, static_cast<unsigned long>(j - 2)) - ipow(b.L, static_cast<unsigned long>(i - 1)));
  } else {
    const unsigned long r = std::min(um, N);
    for (unsigned long k = 0; k < r; ++k) take(Lm - ipow(b.L, k));
    take(ipow(b.L, um * (N - r)));
  }
  b.denominator = ipow(Integer(2 * ell + 1), um * N);
  b.probability = mpq_class(b.p, b.denominator);
  b.probability.canonicalize();
  return b;
}

LinDepCount lindep_count_check(std::span<const Integer> I, int t, std::span<const IntVector> V,
                               std::uint64_t budget) {
  if (t < 0) throw InvalidArgument("t must be >= 0");
  if (I.empty()) throw InvalidArgument("I must be nonempty");
  if (V.size() > static_cast<std::size_t>(t)) throw InvalidArgument("|V| must be <= t");
  for (const IntVector& v : V)
    if (v.size() != static_cast<std::size_t>(t)) throw DimensionMismatch("vectors of V must have length t");
  const IntMatrix vm = IntMatrix::from_rows(V, static_cast<std::size_t>(t));
  if (rank(vm) != V.size()) throw InvalidArgument("V is linearly dependent");

  const Integer total = ipow(Integer(static_cast<long>(I.size())), static_cast<unsigned long>(t));
  if (total > Integer(std::to_string(budget))) throw BudgetExceeded("|I|^t exceeds the budget");

  LinDepCount r;
  r.bound = ipow(Integer(static_cast<long>(I.size())), static_cast<unsigned long>(V.size()));
  std::vector<IntVector> rows(V.begin(), V.end());
  rows.emplace_back(static_cast<std::size_t>(t));
  std::vector<std::size_t> digit(static_cast<std::size_t>(t), 0);
  for (;;) {
    for (std::size_t k = 0; k < digit.size(); ++k) rows.back()[k] = I[digit[k]];
    if (rank(IntMatrix::from_rows(rows, static_cast<std::size_t>(t))) < rows.size()) ++r.dependent_count;
    std::size_t k = digit.size();
    while (k > 0 && digit[k - 1] + 1 == I.size()) digit[--k] = 0;
    if (k == 0) break;
    ++digit[k - 1];
  }
  r.within_bound = Integer(std::to_string(r.dependent_count)) <= r.bound;
  return r;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Flavor f) { return f == Flavor::Polycyclic ? "polycyclic" : "nilpotent"; }

PolycyclicPresentation sample_polycyclic(int n,
                                                    std::span<const std::optional<Integer>> S,
                                                    int ell, Flavor flavor, std::mt19937_64& rng) {
  if (flavor == Flavor::Polycyclic && n < 2) throw InvalidArgument("polycyclic model needs n >= 2");
  if (flavor == Flavor::Nilpotent && n < 3) throw InvalidArgument("nilpotent model needs n >= 3");
  if (ell < 0) throw InvalidArgument("exponent bound ell must be >= 0");
  const auto un = static_cast<std::size_t>(n);
  PolycyclicPresentation p;
  p.n = n;
  p.flavor = flavor;
  if (S.empty())
    p.S.assign(un, std::nullopt);
  else if (S.size() != un)
    throw InvalidArgument("S must list one exponent per generator");
  else
    p.S.assign(S.begin(), S.end());
  for (const auto& s : p.S)
    if (s && *s < 1) throw InvalidArgument("finite power exponents must be >= 1");

  std::uniform_int_distribution<int> dist(-ell, ell);
  p.a.assign(un, IntVector(un));
  p.b.assign(un, std::vector<IntVector>(un, IntVector(un)));
  p.c = p.b;
  for (std::size_t i = 0; i < un; ++i)
    if (p.S[i])
      for (std::size_t k = i + 1; k < un; ++k) p.a[i][k] = dist(rng);
  // polycyclic: exponents on x_{i+1}..x_n; nilpotent: on x_{j+1}..x_n
  auto first_k = [&](std::size_t i, std::size_t j) { return flavor == Flavor::Polycyclic ? i + 1 : j + 1; };
  for (auto* e : {&p.b, &p.c})
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j)
        for (std::size_t k = first_k(i, j); k < un; ++k) (*e)[i][j][k] = dist(rng);
  return p;
}

IntMatrix relation_matrix(const PolycyclicPresentation& p) {
  const auto un = static_cast<std::size_t>(p.n);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < un; ++i) {
    if (!p.S[i]) continue;
    IntVector r(un);
    r[i] = *p.S[i];
    for (std::size_t k = i + 1; k < un; ++k) r[k] -= p.a[i][k];
    rows.push_back(std::move(r));
  }
  const bool nil = p.flavor == Flavor::Nilpotent;
  for (const auto* e : {&p.b, &p.c})
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j) {
        // ab(x_j) - ab(R); the leading x_j of a nilpotent R cancels
        IntVector r(un);
        if (!nil) r[j] = 1;
        for (std::size_t k = nil ? j + 1 : i + 1; k < un; ++k) r[k] -= (*e)[i][j][k];
        rows.push_back(std::move(r));
      }
  return IntMatrix::from_rows(rows, un);
}

Abelianization abelianization(const PolycyclicPresentation& p) {
  const IntMatrix rel = relation_matrix(p);
  const auto un = static_cast<std::size_t>(p.n);
  Abelianization a;
  std::size_t r = 0;
  if (rel.rows() > 0) {
    const SmithDecomposition s = snf(rel);
    for (const Integer& d : s.diagonal())
      if (sgn(d) != 0) {
        ++r;
        if (d > 1) a.invariant_factors.push_back(d);
      }
  }
  for (std::size_t k = r; k < un; ++k) a.invariant_factors.emplace_back(0);
  a.is_finite = r == un;
  return a;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Tau2: return "tau2";
    case ModelKind::Polycyclic: return "polycyclic";
    case ModelKind::Nilpotent: return "nilpotent";
  }
  return "?";
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{
      "all_generators_csmall", "center_is_C",         "all_commutators_nontrivial",
      "derived_rank_is_r",     "regular",             "scalarZ_certified",
      "abelianization_finite", "mainthm_conjunction"};
  return names;
}

bool is_known_property(std::string_view name) {
  const auto& names = property_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

void check_property(const ModelSpec& model, std::string_view name) {
  if (!is_known_property(name)) throw InvalidArgument("unknown property '" + std::string(name) + "'");
  const bool polycyclic_only = name == "abelianization_finite";
  if (polycyclic_only != (model.kind != ModelKind::Tau2))
    throw InvalidArgument("property '" + std::string(name) + "' does not apply to the " +
                          std::string(to_string(model.kind)) + " model");
}

namespace {

bool all_csmall(const Tau2Presentation& p, const CenterDescription& z) {
  for (int i = 0; i < p.n(); ++i)
    if (!is_c_small(MalcevElement::a(p, i), z)) return false;
  return true;
}

bool commutators_nontrivial(const Tau2Presentation& p) {
  for (std::size_t pi = 0; pi < p.pair_count(); ++pi) {
    bool nonzero = false;
    for (const IntVector& row : p.table()) nonzero = nonzero || sgn(row[pi]) != 0;
    if (!nonzero) return false;
  }
  return true;
}

}  // namespace

bool evaluate_tau2_property(std::string_view name, const Tau2Presentation& p) {
  if (name == "all_generators_csmall") return all_csmall(p, center(p));
  if (name == "center_is_C") return center(p).d_basis.empty();
  if (name == "all_commutators_nontrivial") return commutators_nontrivial(p);
  if (name == "derived_rank_is_r")
    return derived_report(p).derived_rank == std::min(static_cast<std::size_t>(p.m()), p.pair_count());
  if (name == "regular") return is_regular(p);
  if (name == "scalarZ_certified") return p.n() >= 2 && scalar_ring_is_Z_certificate(p);
  if (name == "mainthm_conjunction") {
    const CenterDescription z = center(p);
    return z.d_basis.empty() && commutators_nontrivial(p) && all_csmall(p, z);
  }
  throw InvalidArgument("property '" + std::string(name) + "' is not a tau2 property");
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw InvalidArgument("Wilson interval needs trials >= 1");
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / nt;
  const double denom = 1 + z * z / nt;
  const double centre = (ph + z * z / (2 * nt)) / denom;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / nt + z * z / (4 * nt * nt));
  return {std::max(0.0, std::min(ph, centre - half)), std::min(1.0, std::max(ph, centre + half))};
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

namespace {

Tau2ModelParams tau2_params(const ModelSpec& model, int ell) {
  Tau2ModelParams params{model.n, model.m, ell};
  validate(params);
  return params;
}

std::vector<EstimateResult> finish(std::span<const std::string> properties,
                                   const std::vector<std::uint64_t>& counts, std::uint64_t trials,
                                   bool exact, std::uint64_t seed) {
  std::vector<EstimateResult> out;
  for (std::size_t k = 0; k < properties.size(); ++k) {
    EstimateResult r;
    r.property = properties[k];
    r.exact = exact;
    r.trials = trials;
    r.successes = counts[k];
    r.fraction = mpq_class(Integer(std::to_string(counts[k])), Integer(std::to_string(trials)));
    r.fraction.canonicalize();
    r.estimate = static_cast<double>(counts[k]) / static_cast<double>(trials);
    if (exact) {
      r.ci_low = r.ci_high = r.estimate;
    } else {
      std::tie(r.ci_low, r.ci_high) = wilson_interval(counts[k], trials);
    }
    r.seed = seed;
    out.push_back(std::move(r));
  }
  return out;
}

// Sums per-property success counts of `trial(k, flags)` over [0, total).
std::vector<std::uint64_t> count_parallel(
    std::uint64_t total, std::size_t nprops, unsigned threads,
    const std::function<void(std::uint64_t, std::vector<std::uint64_t>&)>& trial) {
  std::vector<std::vector<std::uint64_t>> partial(std::max(1u, threads),
                                                  std::vector<std::uint64_t>(nprops, 0));
  parallel_chunks(total, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    for (std::uint64_t k = begin; k < end; ++k) trial(k, partial[w]);
  });
  std::vector<std::uint64_t> sum(nprops, 0);
  for (const auto& part : partial)
    for (std::size_t k = 0; k < nprops; ++k) sum[k] += part[k];
  return sum;
}

}  // namespace

std::vector<EstimateResult> exact_fractions(const ModelSpec& model, int ell,
                                            std::span<const std::string> properties,
                                            unsigned threads, std::uint64_t budget) {
  if (model.kind != ModelKind::Tau2) throw InvalidArgument("exact enumeration is only available for the tau2 model");
  for (const std::string& name : properties) check_property(model, name);
  const Tau2ModelParams params = tau2_params(model, ell);
  const std::uint64_t total = checked_size(params, budget);
  const auto counts = count_parallel(total, properties.size(), threads,
                                     [&](std::uint64_t k, std::vector<std::uint64_t>& acc) {
                                       const Tau2Presentation p = tau2_at(params, k);
                                       for (std::size_t q = 0; q < properties.size(); ++q)
                                         if (evaluate_tau2_property(properties[q], p)) ++acc[q];
                                     });
  return finish(properties, counts, total, true, 0);
}

std::vector<EstimateResult> montecarlo(const ModelSpec& model, int ell,
                                       std::span<const std::string> properties,
                                       std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  for (const std::string& name : properties) check_property(model, name);
  std::function<void(std::uint64_t, std::vector<std::uint64_t>&)> trial;
  if (model.kind == ModelKind::Tau2) {
    const Tau2ModelParams params = tau2_params(model, ell);
    trial = [&, params](std::uint64_t k, std::vector<std::uint64_t>& acc) {
      std::mt19937_64 rng = trial_rng(seed, k);
      const Tau2Presentation p = sample_tau2(params, rng);
      for (std::size_t q = 0; q < properties.size(); ++q)
        if (evaluate_tau2_property(properties[q], p)) ++acc[q];
    };
  } else {
    const Flavor flavor = model.kind == ModelKind::Polycyclic ? Flavor::Polycyclic : Flavor::Nilpotent;
    // validate once up front so errors surface on the calling thread
    {
      std::mt19937_64 probe(0);
      (void)sample_polycyclic(model.n, model.S, ell, flavor, probe);
    }
    trial = [&, flavor](std::uint64_t k, std::vector<std::uint64_t>& acc) {
      std::mt19937_64 rng = trial_rng(seed, k);
      const PolycyclicPresentation p = sample_polycyclic(model.n, model.S, ell, flavor, rng);
      if (abelianization(p).is_finite)
        for (std::uint64_t& c : acc) ++c;
    };
  }
  const auto counts = count_parallel(trials, properties.size(), threads, trial);
  return finish(properties, counts, trials, false, seed);
}

EstimateResult montecarlo(const ModelSpec& model, int ell, const std::string& property,
                          std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  const std::vector<std::string> one{property};
  return montecarlo(model, ell, one, trials, seed, threads).front();
}

}  // namespace tau2
