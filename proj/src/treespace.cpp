#include "lman/treespace.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lman {

std::vector<Flag> flags_at(const Graph& g, std::size_t v) {
  std::vector<Flag> fs;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (g.edges[i].first == v) fs.push_back({false, i, 0});
    if (g.edges[i].second == v) fs.push_back({false, i, 1});
  }
  for (std::size_t i = 0; i < g.tails.size(); ++i)
    if (g.tails[i].first == v) fs.push_back({true, i, 0});
  return fs;
}

bool has_dead_end(const Graph& g) {
  for (std::size_t v = 0; v < g.nv; ++v) {
    auto fs = flags_at(g, v);
    std::size_t bare = 0;
    for (const auto& f : fs) {
      if (f.is_tail) continue;
      const auto& e = g.edges[f.index];
      std::size_t u = (f.end == 0) ? e.second : e.first;
      if (flags_at(g, u).size() == 1 && u != v) ++bare;
    }
    if (bare >= 1 && fs.size() - bare == 1) return true;
  }
  return false;
}

bool is_stable(const Graph& g) {
  for (std::size_t v = 0; v < g.nv; ++v)
    if (flags_at(g, v).size() < 3) return false;
  return true;
}

std::vector<GraphClass> enumerate_trees(const std::vector<int>& labels, int p,
                                        TreeFilter filter) {
  if (p < 0) return {};
  std::vector<int> ls = labels;
  std::sort(ls.begin(), ls.end());
  std::size_t nv = static_cast<std::size_t>(p) + 1;
  std::map<std::string, GraphClass> found;
  for (const auto& es : labeled_trees(nv)) {
    std::vector<std::size_t> assign(ls.size(), 0);
    while (true) {
      Graph g;
      g.nv = nv;
      g.edges = es;
      for (std::size_t i = 0; i < ls.size(); ++i)
        g.tails.emplace_back(assign[i], ls[i]);
      auto c = canonicalize(g);
      if (!c.zero && !found.count(c.key)) {
        bool keep = true;
        if (filter == TreeFilter::Reduced) keep = !has_dead_end(c.graph);
        if (filter == TreeFilter::Stable) keep = is_stable(c.graph);
        if (keep) {
          c.sign = 1;  // canonical representative with reference orientation
          found.emplace(c.key, c);
        }
      }
      std::size_t i = assign.size();
      while (i > 0 && assign[i - 1] == nv - 1) assign[--i] = 0;
      if (i == 0) break;
      assign[i - 1]++;
    }
  }
  std::vector<GraphClass> out;
  for (auto& [k, c] : found) out.push_back(std::move(c));
  return out;
}

GraphVector relation_vector(const Graph& t, std::size_t v, const Flag& f) {
  auto fs = flags_at(t, v);
  std::vector<Flag> rest;
  bool seen = false;
  for (const auto& x : fs) {
    if (!seen && x.is_tail == f.is_tail && x.index == f.index &&
        x.end == f.end) {
      seen = true;
      continue;
    }
    rest.push_back(x);
  }
  if (!seen) throw std::invalid_argument("relation_vector: flag not at vertex");
  GraphVector out;
  std::size_t k = rest.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Graph g = t;
    std::size_t nv = g.nv++;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      const auto& x = rest[i];
      if (x.is_tail) {
        g.tails[x.index].first = nv;
      } else if (x.end == 0) {
        g.edges[x.index].first = nv;
      } else {
        g.edges[x.index].second = nv;
      }
    }
    g.edges.insert(g.edges.begin(), {v, nv});
    gv_add(out, canonicalize(g), Scalar(1));
  }
  return out;
}

HSpace::HSpace(std::vector<GraphClass> gens, SparseMatrix relations)
    : gens_(std::move(gens)), rows_(relations) {
  for (std::size_t i = 0; i < gens_.size(); ++i) index_.emplace(gens_[i].key, i);
}

std::optional<std::size_t> HSpace::gen_index(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Scalar> HSpace::reduce(const GraphVector& v) const {
  std::vector<Scalar> coords(gens_.size(), Scalar(0));
  for (const auto& [key, term] : v) {
    auto it = index_.find(key);
    if (it == index_.end())
      throw std::invalid_argument("HSpace::reduce: class outside this degree");
    coords[it->second] = term.second;
  }
  return rows_.reduce(coords);
}

namespace {

// One representative per isomorphism class, zero classes included: a source
// tree killed by an odd automorphism still induces valid relations among the
// degree p trees (first seen at |S| = 0, p = 4, where all the killing
// relations come from such sources).
std::vector<Graph> tree_representatives(const std::vector<int>& labels, int p) {
  if (p < 0) return {};
  std::vector<int> ls = labels;
  std::sort(ls.begin(), ls.end());
  std::size_t nv = static_cast<std::size_t>(p) + 1;
  std::map<std::string, Graph> found;
  for (const auto& es : labeled_trees(nv)) {
    std::vector<std::size_t> assign(ls.size(), 0);
    while (true) {
      Graph g;
      g.nv = nv;
      g.edges = es;
      for (std::size_t i = 0; i < ls.size(); ++i)
        g.tails.emplace_back(assign[i], ls[i]);
      auto c = canonicalize(g);
      found.emplace(c.key, c.graph);
      std::size_t i = assign.size();
      while (i > 0 && assign[i - 1] == nv - 1) assign[--i] = 0;
      if (i == 0) break;
      assign[i - 1]++;
    }
  }
  std::vector<Graph> out;
  for (auto& [k, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace

HSpace h_space(const std::vector<int>& labels, int p) {
  auto gens = enumerate_trees(labels, p, TreeFilter::All);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) index.emplace(gens[i].key, i);
  std::vector<std::map<std::size_t, Scalar>> rows;
  if (p >= 1) {
    for (const auto& src : tree_representatives(labels, p - 1)) {
      for (std::size_t v = 0; v < src.nv; ++v) {
        for (const auto& f : flags_at(src, v)) {
          auto rv = relation_vector(src, v, f);
          std::map<std::size_t, Scalar> row;
          for (const auto& [key, term] : rv) row[index.at(key)] = term.second;
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
    }
  }
  SparseMatrix rel(rows.size(), gens.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, val] : rows[r]) rel.set(r, c, val);
  return HSpace(std::move(gens), rel);
}

std::size_t h_dimension(const std::vector<int>& labels, int p) {
  return h_space(labels, p).dim();
}

namespace {

unsigned long long binomial(unsigned long long n, unsigned long long k) {
  if (k > n) return 0;
  unsigned long long r = 1;
  for (unsigned long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

unsigned long long metric_stable_tree_count(const std::vector<int>& labels,
                                            int p) {
  if (labels.size() < 3)
    throw std::invalid_argument("metric_stable_tree_count: need |S| >= 3");
  unsigned long long total = 0;
  for (int k = 0; k <= p; ++k) {
    auto stable = enumerate_trees(labels, k, TreeFilter::Stable);
    if (stable.empty()) continue;
    unsigned long long slots = labels.size() + k;  // tails plus internal edges
    total += stable.size() * binomial(p - k + slots - 1, slots - 1);
  }
  return total;
}

Partition make_partition(std::vector<int> s1, std::vector<int> s2) {
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  for (int x : s1)
    if (std::binary_search(s2.begin(), s2.end(), x))
      throw std::invalid_argument("make_partition: parts overlap");
  bool swap_parts;
  if (s1.empty() || s2.empty())
    swap_parts = s1.empty() && !s2.empty();
  else
    swap_parts = s2.front() < s1.front();
  if (swap_parts) std::swap(s1, s2);
  return Partition{std::move(s1), std::move(s2)};
}

int compatibility(const Partition& a, const Partition& b) {
  std::set<std::vector<int>> inter;
  for (const auto* x : {&a.s1, &a.s2})
    for (const auto* y : {&b.s1, &b.s2}) {
      std::vector<int> m;
      std::set_intersection(x->begin(), x->end(), y->begin(), y->end(),
                            std::back_inserter(m));
      if (!m.empty()) inter.insert(std::move(m));
    }
  return static_cast<int>(inter.size());
}

namespace {

// Labels strictly beyond the flag, seen from its vertex.
std::vector<int> far_labels(const Graph& g, const Flag& f) {
  if (f.is_tail) return {g.tails[f.index].second};
  const auto& e = g.edges[f.index];
  std::size_t here = (f.end == 0) ? e.first : e.second;
  std::size_t there = (f.end == 0) ? e.second : e.first;
  std::vector<char> vis(g.nv, 0);
  vis[here] = 1;  // block the near endpoint: walk the far component only
  vis[there] = 1;
  std::vector<std::size_t> stack = {there};
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (i == f.index) continue;
      auto [a, b] = g.edges[i];
      if (a == v && !vis[b]) vis[b] = 1, stack.push_back(b);
      if (b == v && !vis[a]) vis[a] = 1, stack.push_back(a);
    }
  }
  vis[here] = 0;
  std::vector<int> out;
  for (const auto& [tv, l] : g.tails)
    if (vis[tv]) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Partition induced_partition(const Graph& g, const Flag& f) {
  auto far = far_labels(g, f);
  std::vector<int> rest;
  for (const auto& [v, l] : g.tails)
    if (!std::binary_search(far.begin(), far.end(), l)) rest.push_back(l);
  return make_partition(std::move(far), std::move(rest));
}

std::vector<BoundaryTerm> boundary_map(const GraphVector& v,
                                       const Partition& sigma_in) {
  Partition sigma = make_partition(sigma_in.s1, sigma_in.s2);
  std::map<std::pair<std::string, std::string>,
           std::pair<std::pair<GraphClass, GraphClass>, Scalar>>
      acc;
  for (const auto& [key, term] : v) {
    const Graph& g = term.first;
    const Scalar& coeff = term.second;
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      // Vertex sides of the cut.
      auto [va, vb] = g.edges[ei];
      std::vector<char> side(g.nv, 0);  // 1 = component of va, 2 = of vb
      for (auto [seed, mark] : {std::pair<std::size_t, char>{va, 1}, {vb, 2}}) {
        std::vector<std::size_t> stack = {seed};
        side[seed] = mark;
        while (!stack.empty()) {
          std::size_t x = stack.back();
          stack.pop_back();
          for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (i == ei) continue;
            auto [a, b] = g.edges[i];
            if (a == x && !side[b]) side[b] = mark, stack.push_back(b);
            if (b == x && !side[a]) side[a] = mark, stack.push_back(a);
          }
        }
      }
      std::vector<int> la, lb;
      for (const auto& [tv, l] : g.tails)
        (side[tv] == 1 ? la : lb).push_back(l);
      Partition cut = make_partition(la, lb);
      if (!(cut == sigma)) continue;
      std::sort(la.begin(), la.end());
      // Which physical side holds sigma.s1.
      char s1mark = (la == sigma.s1) ? 1 : 2;

      // Orientation: move the cut edge to the front, then unshuffle the
      // remaining factors into (side-1 ..., side-2 ...).
      int sign = (ei % 2) ? -1 : 1;
      std::vector<char> factor_side;
      for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i == ei) continue;
        factor_side.push_back(side[g.edges[i].first] == s1mark ? 1 : 2);
      }
      for (const auto& [tv, l] : g.tails)
        factor_side.push_back(side[tv] == s1mark ? 1 : 2);
      std::size_t twos = 0;
      for (char s : factor_side) {
        if (s == 2)
          ++twos;
        else if (twos % 2)
          sign = -sign;
      }

      // Build the two halves, relabeled to 1..k with the new tail at k+1.
      auto build_side = [&](char mark, const std::vector<int>& old_labels,
                            std::size_t attach) {
        Graph h;
        std::vector<std::size_t> newidx(g.nv, 0);
        for (std::size_t x = 0; x < g.nv; ++x)
          if (side[x] == mark) newidx[x] = h.nv++;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
          if (i == ei) continue;
          auto [a, b] = g.edges[i];
          if (side[a] == mark) h.edges.emplace_back(newidx[a], newidx[b]);
        }
        std::map<int, int> relab;
        for (std::size_t i = 0; i < old_labels.size(); ++i)
          relab[old_labels[i]] = static_cast<int>(i) + 1;
        for (const auto& [tv, l] : g.tails)
          if (side[tv] == mark) h.tails.emplace_back(newidx[tv], relab[l]);
        h.tails.emplace_back(newidx[attach],
                             static_cast<int>(old_labels.size()) + 1);
        return canonicalize(h);
      };
      std::size_t attach1 = (side[va] == s1mark) ? va : vb;
      std::size_t attach2 = (side[va] == s1mark) ? vb : va;
      char s2mark = (s1mark == 1) ? 2 : 1;
      auto left = build_side(s1mark, sigma.s1, attach1);
      auto right = build_side(s2mark, sigma.s2, attach2);
      if (left.zero || right.zero) continue;
      // The cut edge factor is consumed; each side's new tail carries the
      // largest label and so sits last in its side's reference order.
      Scalar c = coeff * sign * left.sign * right.sign;
      left.sign = right.sign = 1;
      auto k2 = std::make_pair(left.key, right.key);
      auto it = acc.find(k2);
      if (it == acc.end())
        acc.emplace(k2, std::make_pair(std::make_pair(left, right), c));
      else
        it->second.second += c;
    }
  }
  std::vector<BoundaryTerm> out;
  for (auto& [k2, val] : acc)
    if (val.second != 0)
      out.push_back({val.first.first, val.first.second, val.second});
  return out;
}

GraphVector partition_class(const std::vector<int>& labels,
                            const Partition& sigma_in) {
  Partition sigma = make_partition(sigma_in.s1, sigma_in.s2);
  if (sigma.trivial())
    throw std::invalid_argument("partition_class: partition must be nontrivial");
  std::vector<int> all = sigma.s1;
  all.insert(all.end(), sigma.s2.begin(), sigma.s2.end());
  std::sort(all.begin(), all.end());
  std::vector<int> ls = labels;
  std::sort(ls.begin(), ls.end());
  if (all != ls)
    throw std::invalid_argument("partition_class: label set mismatch");
  Graph g;
  g.nv = 2;
  g.edges = {{0, 1}};
  for (int l : sigma.s1) g.tails.emplace_back(0, l);
  for (int l : sigma.s2) g.tails.emplace_back(1, l);
  GraphVector out;
  gv_add(out, canonicalize(g), Scalar(1));
  return out;
}

GraphVector unit_class(const std::vector<int>& labels) {
  Graph g;
  g.nv = 1;
  for (int l : labels) g.tails.emplace_back(0, l);
  GraphVector out;
  gv_add(out, canonicalize(g), Scalar(1));
  return out;
}

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (!std::binary_search(b.begin(), b.end(), x)) return false;
  return true;
}

// m(sigma) * (coeff * tau) for a nontrivial partition sigma.
GraphVector partition_times(const Partition& sigma, const Graph& tau,
                            const Scalar& coeff) {
  for (std::size_t i = 0; i < tau.edges.size(); ++i) {
    Partition pe = induced_partition(tau, Flag{false, i, 0});
    if (!pe.trivial() && compatibility(sigma, pe) == 4) return {};
  }
  for (std::size_t v = 0; v < tau.nv; ++v) {
    auto fs = flags_at(tau, v);
    bool ok = true;
    std::vector<std::size_t> part1;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      auto far = far_labels(tau, fs[i]);
      if (far.empty()) continue;  // bare branch: keep with the s2 side
      if (subset_of(far, sigma.s1))
        part1.push_back(i);
      else if (!subset_of(far, sigma.s2)) {
        ok = false;
        break;
      }
    }
    if (!ok || part1.empty()) continue;
    Graph g = tau;
    std::size_t nv = g.nv++;
    for (std::size_t i : part1) {
      const auto& x = fs[i];
      if (x.is_tail)
        g.tails[x.index].first = nv;
      else if (x.end == 0)
        g.edges[x.index].first = nv;
      else
        g.edges[x.index].second = nv;
    }
    g.edges.insert(g.edges.begin(), {v, nv});
    // The product is commutative (not super): the inserted tree is taken
    // with its reference orientation, so insertion order cannot matter.
    auto cls = canonicalize(g);
    cls.sign = 1;
    GraphVector out;
    gv_add(out, cls, coeff);
    return out;
  }
  throw std::logic_error("partition_times: no splitting vertex found");
}

}  // namespace

GraphVector product(const GraphVector& a, const GraphVector& b,
                    const std::vector<int>& labels) {
  GraphVector result;
  for (const auto& [ka, ta] : a) {
    const Graph& ga = ta.first;
    for (const auto& [kb, tb] : b) {
      const Graph& gb = tb.first;
      Scalar c = ta.second * tb.second;
      if (ga.edges.empty()) {  // unit times anything
        gv_add(result, canonicalize(gb), c);
        continue;
      }
      if (gb.edges.empty()) {
        gv_add(result, canonicalize(ga), c);
        continue;
      }
      if (labels.size() <= 1) continue;  // positive-degree products vanish
      std::vector<Partition> factors;
      for (std::size_t i = 0; i < ga.edges.size(); ++i) {
        Partition pe = induced_partition(ga, Flag{false, i, 0});
        if (pe.trivial())
          throw std::invalid_argument(
              "product: left factor has a bare branch; reduce first");
        factors.push_back(pe);
      }
      GraphVector acc;
      gv_add(acc, canonicalize(gb), c);
      for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        GraphVector next;
        for (const auto& [k, t] : acc) {
          for (const auto& [k2, t2] : partition_times(*it, t.first, t.second))
            gv_add(next, canonicalize(t2.first), t2.second);
        }
        acc = next;
      }
      for (const auto& [k, t] : acc) gv_add(result, canonicalize(t.first), t.second);
    }
  }
  return result;
}

std::vector<int> standard_labels(int n) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) out.push_back(i);
  return out;
}

PresentationReport presentation_check(const std::vector<int>& labels,
                                      int max_p, bool check_ring) {
  PresentationReport rep;
  std::vector<int> ls = labels;
  std::sort(ls.begin(), ls.end());
  std::size_t m = ls.size();

  // Generators: nontrivial partitions, normalized so part 1 holds ls[0].
  std::vector<Partition> gens;
  if (m >= 2) {
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << (m - 1)) * 2;
         ++mask) {
      if (!(mask & 1)) continue;  // ls[0] always in part 1
      std::vector<int> s1, s2;
      for (std::size_t i = 0; i < m; ++i)
        ((mask >> i) & 1 ? s1 : s2).push_back(ls[i]);
      if (s2.empty()) continue;
      gens.push_back(make_partition(s1, s2));
    }
    std::sort(gens.begin(), gens.end());
  }
  std::map<Partition, std::size_t> gen_index;
  for (std::size_t i = 0; i < gens.size(); ++i) gen_index.emplace(gens[i], i);

  // Degree-1 ideal generators: differences of the corolla relations,
  // restricted to the nontrivial-partition classes.
  std::vector<std::vector<Scalar>> linear_rel;
  if (m >= 2) {
    Graph corolla;
    corolla.nv = 1;
    for (int l : ls) corolla.tails.emplace_back(0, l);
    std::vector<std::vector<Scalar>> r_vecs;   // over gens
    std::vector<Scalar> bare_coeff;
    for (std::size_t s = 0; s < m; ++s) {
      auto rv = relation_vector(corolla, 0, Flag{true, s, 0});
      std::vector<Scalar> vec(gens.size(), Scalar(0));
      Scalar bare(0);
      for (const auto& [key, term] : rv) {
        const Graph& g = term.first;
        std::vector<int> la, lb;
        for (const auto& [tv, l] : g.tails) (tv == 0 ? la : lb).push_back(l);
        Partition p = make_partition(la, lb);
        if (p.trivial())
          bare += term.second;
        else
          vec[gen_index.at(p)] += term.second;
      }
      r_vecs.push_back(std::move(vec));
      bare_coeff.push_back(bare);
    }
    for (std::size_t s = 1; s < m; ++s) {
      if (bare_coeff[s] != bare_coeff[0]) {
        rep.notes.push_back(
            "corolla relations disagree on the trivial-partition class; "
            "presentation invalid");
        continue;
      }
      std::vector<Scalar> diff(gens.size(), Scalar(0));
      bool nonzero = false;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        diff[i] = r_vecs[s][i] - r_vecs[0][i];
        if (diff[i] != 0) nonzero = true;
      }
      if (nonzero) linear_rel.push_back(std::move(diff));
    }
  }

  // Degree-2 ideal generators: incompatible products.
  std::vector<std::pair<std::size_t, std::size_t>> quad_rel;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j)
      if (compatibility(gens[i], gens[j]) == 4) quad_rel.emplace_back(i, j);

  // Monomials of each degree: nondecreasing index sequences.
  auto monomials = [&](int d) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t lo, int left) -> void {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = lo; i < gens.size(); ++i) {
        cur.push_back(i);
        self(self, i, left - 1);
        cur.pop_back();
      }
    };
    rec(rec, 0, d);
    return out;
  };

  rep.dims_ok = rep.notes.empty();
  for (int d = 0; d <= max_p; ++d) {
    auto mons = monomials(d);
    std::map<std::vector<std::size_t>, std::size_t> mon_index;
    for (std::size_t i = 0; i < mons.size(); ++i) mon_index.emplace(mons[i], i);
    std::vector<std::map<std::size_t, Scalar>> rows;
    if (d >= 1)
      for (const auto& lr : linear_rel)
        for (const auto& mu : monomials(d - 1)) {
          std::map<std::size_t, Scalar> row;
          for (std::size_t gidx = 0; gidx < gens.size(); ++gidx) {
            if (lr[gidx] == 0) continue;
            auto key = mu;
            key.push_back(gidx);
            std::sort(key.begin(), key.end());
            row[mon_index.at(key)] += lr[gidx];
          }
          rows.push_back(std::move(row));
        }
    if (d >= 2)
      for (const auto& [i, j] : quad_rel)
        for (const auto& mu : monomials(d - 2)) {
          auto key = mu;
          key.push_back(i);
          key.push_back(j);
          std::sort(key.begin(), key.end());
          rows.push_back({{mon_index.at(key), Scalar(1)}});
        }
    SparseMatrix rel(rows.size(), mons.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, val] : rows[r]) rel.set(r, c, val);
    rep.fs_dims.push_back(mons.size() - rank(rel));
    rep.h_dims.push_back(h_dimension(ls, d));
    if (rep.fs_dims.back() != rep.h_dims.back()) rep.dims_ok = false;
  }

  rep.ring_ok = true;
  if (check_ring && m >= 2 && max_p >= 2) {
    HSpace h2 = h_space(ls, 2);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Scalar>> prods;
    auto prod_of = [&](std::size_t i, std::size_t j) -> const std::vector<Scalar>& {
      auto key = std::minmax(i, j);
      auto it = prods.find(key);
      if (it == prods.end()) {
        auto pv = product(partition_class(ls, gens[key.first]),
                          partition_class(ls, gens[key.second]), ls);
        it = prods.emplace(key, h2.reduce(pv)).first;
      }
      return it->second;
    };
    // Ideal elements of degree 2 must map to zero in H^2.
    for (const auto& [i, j] : quad_rel) {
      for (const Scalar& c : prod_of(i, j))
        if (c != 0) rep.ring_ok = false;
    }
    for (const auto& lr : linear_rel)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::vector<Scalar> acc(h2.gens().size(), Scalar(0));
        for (std::size_t gidx = 0; gidx < gens.size(); ++gidx) {
          if (lr[gidx] == 0) continue;
          const auto& pv = prod_of(k, gidx);
          for (std::size_t t = 0; t < acc.size(); ++t)
            acc[t] += lr[gidx] * pv[t];
        }
        for (const Scalar& c : acc)
          if (c != 0) rep.ring_ok = false;
      }
    // The products must span a space of the predicted dimension.
    std::vector<std::vector<Scalar>> all;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i; j < gens.size(); ++j) all.push_back(prod_of(i, j));
    SparseMatrix pm(all.size(), h2.gens().size());
    for (std::size_t r = 0; r < all.size(); ++r)
      for (std::size_t c = 0; c < all[r].size(); ++c)
        if (all[r][c] != 0) pm.set(r, c, all[r][c]);
    if (max_p >= 2 && rank(pm) != rep.fs_dims[2]) rep.ring_ok = false;
  }
  return rep;
}

}  // namespace lman
