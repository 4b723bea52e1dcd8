#ifndef LMAN_GRAPHCX_HPP
#define LMAN_GRAPHCX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "lman/graph_core.hpp"

namespace lman {

// Weighted modular graph complex.  Generators are decorated Graphs (weight
// >= 1 and genus >= 0 per vertex) with the exterior-power orientation from
// graph_core; the gradings are the number of internal edges p, the total
// weight and the total genus, all derived.

int total_weight(const Graph& g);
// Sum of vertex genera plus the first Betti number of the realization.
int total_genus(const Graph& g);

// Vertex expansion differential: sum over ordered flag/weight/genus
// splittings of each vertex (moved part on the appended vertex, new edge
// prepended to the orientation) plus a loop expansion at each vertex of
// positive genus.  Raises p by one, preserves total weight and genus.
GraphVector differential(const Graph& g);

// Canonical nonzero generator classes of C^p_{g,n,w}: connected graphs with
// tails labeled 1..n, total weight w, total genus g and p internal edges.
std::vector<GraphClass> enumerate_graphs(int n, int w, int g, int p);

// Number of generators of C^p_{g,n,w} and the rank of d on them.
std::pair<std::size_t, std::size_t> complex_ranks(int n, int w, int g, int p);

// dim H^p(C^._{0,n,w}) over the rationals.
std::size_t cohomology_dimension(int n, int w, int p);

}  // namespace lman

#endif
