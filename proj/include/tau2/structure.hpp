#pragma once

// Centralizers, center, c-smallness, derived subgroup, regularity and the
// scalar-ring certificate of a tau_2-presentation.
//
// Since <C> is central, every subgroup computed here is the full preimage of
// a lattice of alpha-patterns in Z^n, so each question reduces to a kernel
// or lattice-equality computation in intlin.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tau2/group.hpp"
#include "tau2/intlin.hpp"

namespace tau2 {

/// C(g) = { x : alpha(x) in alpha_lattice }, gamma(x) arbitrary.
struct CentralizerDescription {
  LatticeBasis alpha_lattice;
};

/// Z(G) = <C> (+) lifts of d_basis.
struct CenterDescription {
  LatticeBasis d_basis;
  std::size_t rank(int m) const { return static_cast<std::size_t>(m) + d_basis.size(); }
};

/// Lambda(g): m x n, entry (t, j) = sum_i lambda(t, i, j) alpha_i(g), so that
/// [g, y] = 1 iff Lambda(g) alpha(y) = 0.
IntMatrix commutation_matrix(const MalcevElement& g);

/// M_{P,k}: commutation_matrix(a_k) without column k (m x (n-1)); k is 0-based.
IntMatrix generator_matrix(const Tau2Presentation& p, int k);

CentralizerDescription centralizer(const MalcevElement& g);
CenterDescription center(const Tau2Presentation& p);

/// C(g) = { g^t z : z in <C> }.
bool is_C_c_small(const MalcevElement& g);
/// C(g) = { g^t z : z in Z(G) }.
bool is_c_small(const MalcevElement& g);
/// Same as is_c_small, reusing a center computed once per presentation.
bool is_c_small(const MalcevElement& g, const CenterDescription& z);

/// Sufficient rank criterion: rank(M_{P,k}) == n-1 and some lambda(t,k,j) != 0.
/// When it holds, a_k is c-small and Z(G) = <C>; the converse is not claimed.
bool csmall_by_rank_criterion(const Tau2Presentation& p, int k);

struct DerivedReport {
  std::size_t derived_rank = 0;
  bool derived_finite_index = false;    ///< G' has finite index in <C>
  bool commutators_form_basis = false;  ///< {[a_i,a_j]} is a basis of G'
};

DerivedReport derived_report(const Tau2Presentation& p);

/// g lies in Is(G') = { g : g^t in G' for some t != 0 }.
bool isolator_contains_derived(const MalcevElement& g);

/// Z(G) <= Is(G'). Any center element with nonzero alpha-part has no power in
/// G' (which sits inside <C>), so this is: d_basis empty and rank(G') == m.
bool is_regular(const Tau2Presentation& p);

/// Every a_i c-small and [a_i, a_j] != 1 for all i < j. A true result
/// certifies the maximal ring of scalars is Z (hence G is directly
/// indecomposable into non-abelian factors); false only means "unknown".
bool scalar_ring_is_Z_certificate(const Tau2Presentation& p);

struct NoCsmallPairResult {
  bool holds = true;  ///< no violating pair found in the box
  std::optional<std::pair<MalcevElement, MalcevElement>> witness;
  std::size_t csmall_count = 0;  ///< <C>-c-small alpha-patterns found in the box
};

/// Bounded falsification search: looks for g, h with alpha-coordinates in
/// [-B, B]^n, both <C>-c-small and not commuting. Gamma-coordinates are left
/// at zero because they affect neither centralizers nor commutators. The
/// generators a_i are tried before the rest of the box.
NoCsmallPairResult no_csmall_pair_search(const Tau2Presentation& p, int box);
bool no_csmall_pair_check(const Tau2Presentation& p, int box);

struct StructureReport {
  CenterDescription center;
  std::vector<bool> csmall_flags;
  std::vector<bool> csmall_criterion_flags;
  bool all_commutators_nonzero = false;
  DerivedReport derived;
  bool is_regular = false;
  bool scalar_ring_is_Z_certified = false;
  InvariantReport invariants;
};

/// Full analysis. Throws InvariantViolation if a cross-check fails (rank
/// identities, criterion => exact c-smallness, center rank agreement).
StructureReport analyze(const Tau2Presentation& p);

}  // namespace tau2
