#pragma once

// Random presentations: the uniform box model on tau_2-presentations, the
// generator-by-generator polycyclic and nilpotent models, exact enumeration
// for tiny parameters, Monte Carlo estimates with Wilson intervals, and the
// counting bounds used in the asymptotic arguments.
//
// Reproducibility: trial k of a run with seed s draws from its own
// std::mt19937_64 seeded with seed_seq{s, k}, so the result of a run does not
// depend on how trials are split across threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "tau2/group.hpp"
#include "tau2/intlin.hpp"

namespace tau2 {

struct Tau2ModelParams {
  int n = 2;
  int m = 1;
  int ell = 1;
};

/// Validates n >= 2, m >= 1, ell >= 0 (ell = 0 is the degenerate all-zero model).
void validate(const Tau2ModelParams& params);

/// (2 ell + 1)^(m n(n-1)/2)
Integer sample_space_size(const Tau2ModelParams& params);

/// Each lambda(t, i, j), i < j, uniform on {-ell, ..., ell}; drawn t-major,
/// pairs in lexicographic order.
Tau2Presentation sample_tau2(const Tau2ModelParams& params, std::mt19937_64& rng);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;

/// The index-th presentation of the sample space (mixed radix, same order as
/// sample_tau2 draws, digit 0 = -ell).
Tau2Presentation tau2_at(const Tau2ModelParams& params, std::uint64_t index);

/// Visits the whole sample space in index order. Throws BudgetExceeded when it
/// has more than `budget` elements.
void for_each_tau2(const Tau2ModelParams& params,
                   const std::function<void(const Tau2Presentation&)>& visit,
                   std::uint64_t budget = kDefaultEnumerationBudget);
std::vector<Tau2Presentation> enumerate_tau2(const Tau2ModelParams& params,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

// ---------------------------------------------------------------------------
// Counting bounds

enum class BoundVariant { MainThm, Regularity };
enum class LConvention { TwoEll, TwoEllPlusOne };

std::string_view to_string(BoundVariant v);
std::string_view to_string(LConvention c);

struct CountBound {
  BoundVariant variant;
  LConvention convention;
  Integer L;
  Integer p;            ///< p(L)
  Integer denominator;  ///< (2 ell + 1)^(m n(n-1)/2)
  mpq_class probability;
  bool factors_nonnegative = true;  ///< every factor of p(L) is >= 0
};

/// MainThm: p(L) = prod_{1<=i<j<=n} (L^m - L^(j-2) - L^(i-1)), requires m >= n-1.
/// Regularity: p(L) = prod_{k=0}^{r-1} (L^m - L^k) * L^(m (N - r)), N = n(n-1)/2,
/// r = min(m, N).
CountBound count_bound_p(int n, int m, int ell, BoundVariant variant, LConvention convention);

struct LinDepCount {
  std::uint64_t dependent_count = 0;
  Integer bound;  ///< |I|^|V|
  bool within_bound = true;
};

/// Counts v in I^t with V + {v} linearly dependent. V must be independent and
/// |V| <= t; |I|^t must not exceed `budget`.
LinDepCount lindep_count_check(std::span<const Integer> I, int t, std::span<const IntVector> V,
                               std::uint64_t budget = kDefaultEnumerationBudget);

// ---------------------------------------------------------------------------
// Polycyclic and nilpotent presentations

enum class Flavor { Polycyclic, Nilpotent };
std::string_view to_string(Flavor f);

/// Generators x_1..x_n (0-based below). Relations:
///   x_i^{s_i} = x_{i+1}^{a[i][i+1]} ... x_n^{a[i][n-1]}                    (s_i finite)
///   x_i^-1 x_j x_i = R_{j,i},  x_i x_j x_i^-1 = R_{i,j}                    (i < j)
/// polycyclic: R_{j,i} = prod_{k>i} x_k^{b[i][j][k]}, R_{i,j} = prod_{k>i} x_k^{c[i][j][k]}
/// nilpotent:  R_{j,i} = x_j prod_{k>j} x_k^{b[i][j][k]}, likewise with c.
/// Entries outside those index ranges are zero and ignored.
struct PolycyclicPresentation {
  int n = 0;
  Flavor flavor = Flavor::Polycyclic;
  std::vector<std::optional<Integer>> S;  ///< nullopt = infinity
  std::vector<IntVector> a;               ///< n x n
  std::vector<std::vector<IntVector>> b;  ///< n x n x n
  std::vector<std::vector<IntVector>> c;  ///< n x n x n
};

/// All free exponents uniform on {-ell, ..., ell}, drawn in the order
/// a (i, k), then b (i, j, k), then c (i, j, k). Requires n >= 2 (polycyclic)
/// or n >= 3 (nilpotent), |S| = n, finite s_i >= 1.
PolycyclicPresentation sample_polycyclic(int n,
                                                    std::span<const std::optional<Integer>> S,
                                                    int ell, Flavor flavor, std::mt19937_64& rng);

/// Exponent-sum matrix of the relators: one row per power relation and per
/// conjugacy relation (ab(x_j) - ab(R)).
IntMatrix relation_matrix(const PolycyclicPresentation& p);

struct Abelianization {
  std::vector<Integer> invariant_factors;  ///< factors > 1, then one 0 per free summand
  bool is_finite = false;
};

Abelianization abelianization(const PolycyclicPresentation& p);

// ---------------------------------------------------------------------------
// Experiments

enum class ModelKind { Tau2, Polycyclic, Nilpotent };
std::string_view to_string(ModelKind k);

struct ModelSpec {
  ModelKind kind = ModelKind::Tau2;
  int n = 2;
  int m = 1;                                ///< tau2 only
  std::vector<std::optional<Integer>> S;    ///< polycyclic and nilpotent models; empty = all infinite
};

/// Registered property names, in canonical order.
const std::vector<std::string>& property_names();
bool is_known_property(std::string_view name);
/// Throws InvalidArgument for unknown names or names that do not apply to the model.
void check_property(const ModelSpec& model, std::string_view name);

/// Evaluates a tau2 property on one presentation.
bool evaluate_tau2_property(std::string_view name, const Tau2Presentation& p);

struct EstimateResult {
  std::string property;
  bool exact = false;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  mpq_class fraction;  ///< successes / trials, reduced
  double estimate = 0;
  double ci_low = 0;  ///< Wilson 95%; equals the estimate in exact mode
  double ci_high = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const EstimateResult&, const EstimateResult&) = default;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// Exact fractions over the full tau2 sample space, one result per property.
std::vector<EstimateResult> exact_fractions(const ModelSpec& model, int ell,
                                            std::span<const std::string> properties,
                                            unsigned threads = 1,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

/// Monte Carlo: every trial samples one presentation and evaluates all
/// requested properties on it.
std::vector<EstimateResult> montecarlo(const ModelSpec& model, int ell,
                                       std::span<const std::string> properties,
                                       std::uint64_t trials, std::uint64_t seed,
                                       unsigned threads = 1);

EstimateResult montecarlo(const ModelSpec& model, int ell, const std::string& property,
                          std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

/// RNG for trial `trial` of a run seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace tau2
