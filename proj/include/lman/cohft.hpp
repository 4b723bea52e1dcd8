#ifndef LMAN_COHFT_HPP
#define LMAN_COHFT_HPP

#include <cstddef>
#include <vector>

#include "lman/graph_core.hpp"
#include "lman/linfty.hpp"
#include "lman/treespace.hpp"

namespace lman {

// The maps I_n: (PiV)^(x)n -> Pi H^._n attached to a curved cyclic L-infinity
// structure: I_n(x) = sum_tau Y_tau(x) m(tau).  Values are stored on basis
// tuples as tree vectors in the free span; axiom checks reduce them into the
// quotient on demand.
struct CohFTMap {
  LinftyStructure structure;
  int arity = 0;
  int max_degree = 0;  // tree degree truncation
  // row-major over dim^arity basis tuples
  std::vector<GraphVector> values;

  std::size_t tuple_index(const std::vector<std::size_t>& t) const;
};

// Full contraction of one tree: a cyclic form per vertex, one inverse-form
// Casimir per edge, inputs fed by tail label, Koszul signs from the global
// slot order (inputs first, then edge legs in edge order).
Scalar y_tau(const LinftyStructure& L, const Graph& tau,
             const std::vector<std::size_t>& inputs);

CohFTMap build_I(const LinftyStructure& L, int n, int p);

// Axiom (a): S_n equivariance (inputs permuted against relabeled tails);
// axiom (b): boundary compatibility through every nontrivial partition.
// Both are verified in the quotient, degree by degree.
Report check_axioms(const CohFTMap& I);

}  // namespace lman

#endif
