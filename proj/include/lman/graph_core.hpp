#ifndef LMAN_GRAPH_CORE_HPP
#define LMAN_GRAPH_CORE_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lman/scalar.hpp"

namespace lman {

// Finite graph with labeled tails.  Edges are unordered vertex pairs; loops
// are allowed, parallel edges are representable (the classes they span are
// killed by the odd swap automorphism).  Optional per-vertex decorations
// (weight, genus) for the modular graph complex; plain trees leave both empty.
//
// An instance carries an implicit orientation: the wedge of its edges in list
// order followed by its tails in label order.  Tails are identified by their
// labels, so relabeling vertices never permutes the tail factors.
struct Graph {
  std::size_t nv = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<std::size_t, int>> tails;  // (vertex, label)
  std::vector<int> weight;                         // size nv or empty
  std::vector<int> genus;                          // size nv or empty

  bool decorated() const { return !weight.empty(); }
  bool operator==(const Graph&) const = default;
  void validate() const;  // throws std::invalid_argument
  bool connected() const;
  bool is_tree() const;  // connected and |E| = |V| - 1, no loops
  std::vector<int> tail_labels() const;  // sorted
};

// Canonical representative of the oriented isomorphism class of a graph.
// `sign` relates the input's orientation to the reference orientation of the
// canonical form (edges in sorted order, tails in label order): the input
// equals sign * (canonical, reference).  `zero` is set when some automorphism
// acts by an odd permutation on edges-and-tails, which collapses the class.
struct GraphClass {
  Graph graph;
  int sign = 1;
  bool zero = false;
  std::string key;  // canonical encoding, independent of orientation
};

GraphClass canonicalize(const Graph& g);

// Formal linear combination of oriented classes, keyed by canonical encoding.
using GraphVector = std::map<std::string, std::pair<Graph, Scalar>>;

// Accumulates coeff * (class), folding the class sign into the coefficient
// and dropping zero classes and cancelled terms.
void gv_add(GraphVector& v, const GraphClass& c, const Scalar& coeff);

// Edge lists of every labeled tree on vertices {0..n-1} (Pruefer decoding).
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> labeled_trees(
    std::size_t n);

}  // namespace lman

#endif
