#ifndef LMAN_TREESPACE_HPP
#define LMAN_TREESPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lman/graph_core.hpp"
#include "lman/sparse_matrix.hpp"

namespace lman {

// Flag of a tree: either a tail or one end of an internal edge.
struct Flag {
  bool is_tail = false;
  std::size_t index = 0;  // into Graph::tails or Graph::edges
  std::size_t end = 0;    // which endpoint of the edge (0 or 1)
};

std::vector<Flag> flags_at(const Graph& g, std::size_t v);

// Vertex with >= 1 bare-leaf neighbors and exactly one further flag; trees
// containing the pattern die in the quotient.
bool has_dead_end(const Graph& g);
// Every vertex carries at least 3 flags.
bool is_stable(const Graph& g);

enum class TreeFilter { All, Reduced, Stable };

// All isomorphism classes of trees with p internal edges and tails labeled by
// `labels`, canonical representatives, zero classes dropped, sorted by key.
std::vector<GraphClass> enumerate_trees(const std::vector<int>& labels, int p,
                                        TreeFilter filter = TreeFilter::All);

// The relation R(tau', v, f): sum over ordered splittings of the flags at v
// other than f, each term growing a new vertex joined to v and carrying one
// part, with the new edge prepended to the orientation.
GraphVector relation_vector(const Graph& t, std::size_t v, const Flag& f);

// The degree-p piece of the quotient space, with its canonical generator
// order and the row space of all relations.
class HSpace {
 public:
  HSpace(std::vector<GraphClass> gens, SparseMatrix relations);

  const std::vector<GraphClass>& gens() const { return gens_; }
  std::size_t dim() const { return rows_.cols() - rows_.rank(); }
  const RowSpace& relations() const { return rows_; }
  std::optional<std::size_t> gen_index(const std::string& key) const;

  // Coordinates of a combination of classes, reduced modulo relations.
  std::vector<Scalar> reduce(const GraphVector& v) const;

 private:
  std::vector<GraphClass> gens_;
  std::map<std::string, std::size_t> index_;
  RowSpace rows_;
};

HSpace h_space(const std::vector<int>& labels, int p);
std::size_t h_dimension(const std::vector<int>& labels, int p);

// Metric stable trees with integral lengths (internal >= 1, tails >= 0)
// totalling p; requires |labels| >= 3.
unsigned long long metric_stable_tree_count(const std::vector<int>& labels,
                                            int p);

// Unordered partition of a label set into two disjoint parts (possibly
// empty).  Normalized: the part holding the smallest label comes first.
struct Partition {
  std::vector<int> s1, s2;  // each sorted
  bool trivial() const { return s1.empty() || s2.empty(); }
  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const {
    return std::tie(s1, s2) < std::tie(o.s1, o.s2);
  }
};

Partition make_partition(std::vector<int> s1, std::vector<int> s2);

// a(sigma, sigma') = number of distinct nonempty pairwise intersections:
// 2 <=> equal, 3 <=> compatible, 4 <=> incompatible.
int compatibility(const Partition& a, const Partition& b);

// Partition cut out by removing a flag: tails strictly beyond it vs the rest.
Partition induced_partition(const Graph& g, const Flag& f);

// Cutting along sigma-inducing edges.  Each side is relabeled monotonically
// to 1..k with the new tail labeled k+1; signs come from reordering the
// orientation factors (cut edge first, then side-1 factors, then side-2).
struct BoundaryTerm {
  GraphClass left, right;  // canonical, sign +1 (folded into coeff)
  Scalar coeff;
};
std::vector<BoundaryTerm> boundary_map(const GraphVector& v,
                                       const Partition& sigma);

// m(sigma): the 2-vertex tree of a nontrivial partition.  m(corolla) = unit.
GraphVector partition_class(const std::vector<int>& labels,
                            const Partition& sigma);
GraphVector unit_class(const std::vector<int>& labels);

// Product on H over the label set, via m(tau) = prod of m(sigma(e)).
GraphVector product(const GraphVector& a, const GraphVector& b,
                    const std::vector<int>& labels);

struct PresentationReport {
  std::vector<std::size_t> fs_dims;  // degrees 0..max_p of F_S/I_S
  std::vector<std::size_t> h_dims;
  bool dims_ok = false;
  bool ring_ok = false;  // sampled multiplicativity of D_sigma -> m(sigma)
  std::vector<std::string> notes;
};

PresentationReport presentation_check(const std::vector<int>& labels,
                                      int max_p, bool check_ring = true);

std::vector<int> standard_labels(int n);  // {1..n}

}  // namespace lman

#endif
