#include "lman/graph_core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lman {

void Graph::validate() const {
  for (const auto& [a, b] : edges)
    if (a >= nv || b >= nv)
      throw std::invalid_argument("Graph: edge endpoint out of range");
  std::set<int> seen;
  for (const auto& [v, l] : tails) {
    if (v >= nv) throw std::invalid_argument("Graph: tail vertex out of range");
    if (!seen.insert(l).second)
      throw std::invalid_argument("Graph: duplicate tail label");
  }
  if (weight.size() != genus.size())
    throw std::invalid_argument("Graph: weight/genus size mismatch");
  if (!weight.empty()) {
    if (weight.size() != nv)
      throw std::invalid_argument("Graph: decoration size mismatch");
    for (std::size_t v = 0; v < nv; ++v) {
      if (weight[v] < 1) throw std::invalid_argument("Graph: weight < 1");
      if (genus[v] < 0) throw std::invalid_argument("Graph: genus < 0");
    }
  }
}

bool Graph::connected() const {
  if (nv == 0) return false;
  std::vector<char> vis(nv, 0);
  std::vector<std::size_t> stack = {0};
  vis[0] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : edges) {
      if (a == v && !vis[b]) vis[b] = 1, stack.push_back(b);
      if (b == v && !vis[a]) vis[a] = 1, stack.push_back(a);
    }
  }
  for (char c : vis)
    if (!c) return false;
  return true;
}

bool Graph::is_tree() const {
  if (!connected() || edges.size() + 1 != nv) return false;
  for (const auto& [a, b] : edges)
    if (a == b) return false;
  return true;
}

std::vector<int> Graph::tail_labels() const {
  std::vector<int> ls;
  for (const auto& [v, l] : tails) ls.push_back(l);
  std::sort(ls.begin(), ls.end());
  return ls;
}

namespace {

using Enc = std::vector<long long>;

std::string enc_to_string(const Enc& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "." : "") << e[i];
  return os.str();
}

int edge_sort_sign(std::vector<std::pair<std::size_t, std::size_t>>& es) {
  // Parity of the stable sort rearranging the edge list into sorted order.
  std::vector<std::size_t> idx(es.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return es[i] < es[j];
  });
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] > idx[j]) sign = -sign;
  std::vector<std::pair<std::size_t, std::size_t>> out(es.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = es[idx[i]];
  es = out;
  return sign;
}

}  // namespace

GraphClass canonicalize(const Graph& g) {
  g.validate();
  // Vertex invariant: (weight, genus, degree, sorted tail labels).  Vertices
  // may only be permuted within equal-invariant blocks, and blocks are laid
  // out in invariant order, so the search space stays small.
  std::vector<Enc> inv(g.nv);
  for (std::size_t v = 0; v < g.nv; ++v) {
    Enc e;
    e.push_back(g.decorated() ? g.weight[v] : 0);
    e.push_back(g.decorated() ? g.genus[v] : 0);
    long long deg = 0;
    for (const auto& [a, b] : g.edges) deg += (a == v) + (b == v);
    e.push_back(deg);
    std::vector<int> ls;
    for (const auto& [tv, l] : g.tails)
      if (tv == v) ls.push_back(l);
    std::sort(ls.begin(), ls.end());
    for (int l : ls) e.push_back(l);
    inv[v] = e;
  }
  std::map<Enc, std::vector<std::size_t>> blocks_by_inv;
  for (std::size_t v = 0; v < g.nv; ++v) blocks_by_inv[inv[v]].push_back(v);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [k, b] : blocks_by_inv) blocks.push_back(b);

  bool have_best = false, zero = false;
  Enc best_enc;
  int best_sign = 1;
  std::vector<std::pair<std::size_t, std::size_t>> best_edges;
  std::vector<std::size_t> best_order;

  auto current_order = [&]() {
    std::vector<std::size_t> order;
    for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
    return order;
  };

  while (true) {
    std::vector<std::size_t> order = current_order();
    std::vector<std::size_t> newidx(g.nv);
    for (std::size_t i = 0; i < order.size(); ++i) newidx[order[i]] = i;

    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (const auto& [a, b] : g.edges) {
      std::size_t x = newidx[a], y = newidx[b];
      es.emplace_back(std::min(x, y), std::max(x, y));
    }
    int sign = edge_sort_sign(es);

    Enc enc;
    enc.push_back(static_cast<long long>(g.nv));
    if (g.decorated())
      for (std::size_t i = 0; i < g.nv; ++i) {
        enc.push_back(g.weight[order[i]]);
        enc.push_back(g.genus[order[i]]);
      }
    enc.push_back(static_cast<long long>(es.size()));
    for (const auto& [a, b] : es) {
      enc.push_back(static_cast<long long>(a));
      enc.push_back(static_cast<long long>(b));
    }
    std::vector<std::pair<int, std::size_t>> ts;
    for (const auto& [v, l] : g.tails) ts.emplace_back(l, newidx[v]);
    std::sort(ts.begin(), ts.end());
    enc.push_back(static_cast<long long>(ts.size()));
    for (const auto& [l, v] : ts) {
      enc.push_back(l);
      enc.push_back(static_cast<long long>(v));
    }

    if (!have_best || enc < best_enc) {
      have_best = true;
      best_enc = enc;
      best_sign = sign;
      best_edges = es;
      best_order = order;
    } else if (enc == best_enc && sign != best_sign) {
      zero = true;
    }

    // Odometer over within-block permutations.
    std::size_t i = blocks.size();
    while (i > 0) {
      if (std::next_permutation(blocks[i - 1].begin(), blocks[i - 1].end()))
        break;
      --i;
    }
    if (i == 0) break;
  }

  // Parallel edges carry an odd swap automorphism.
  for (std::size_t i = 0; i + 1 < best_edges.size(); ++i)
    if (best_edges[i] == best_edges[i + 1]) zero = true;

  GraphClass c;
  c.graph.nv = g.nv;
  c.graph.edges = best_edges;
  std::vector<std::size_t> newidx(g.nv);
  for (std::size_t i = 0; i < best_order.size(); ++i) newidx[best_order[i]] = i;
  for (const auto& [v, l] : g.tails) c.graph.tails.emplace_back(newidx[v], l);
  std::sort(c.graph.tails.begin(), c.graph.tails.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  if (g.decorated()) {
    c.graph.weight.resize(g.nv);
    c.graph.genus.resize(g.nv);
    for (std::size_t i = 0; i < g.nv; ++i) {
      c.graph.weight[i] = g.weight[best_order[i]];
      c.graph.genus[i] = g.genus[best_order[i]];
    }
  }
  c.sign = best_sign;
  c.zero = zero;
  c.key = enc_to_string(best_enc);
  return c;
}

void gv_add(GraphVector& v, const GraphClass& c, const Scalar& coeff) {
  if (c.zero || coeff == 0) return;
  auto it = v.find(c.key);
  if (it == v.end()) {
    v.emplace(c.key, std::make_pair(c.graph, coeff * c.sign));
  } else {
    it->second.second += coeff * c.sign;
    if (it->second.second == 0) v.erase(it);
  }
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> labeled_trees(
    std::size_t n) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back({});
    return out;
  }
  if (n == 2) {
    out.push_back({{0, 1}});
    return out;
  }
  // Decode every Pruefer sequence of length n-2.
  std::vector<std::size_t> seq(n - 2, 0);
  while (true) {
    std::vector<int> deg(n, 1);
    for (std::size_t s : seq) deg[s]++;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    std::vector<int> d = deg;
    for (std::size_t s : seq) {
      std::size_t leaf = 0;
      while (d[leaf] != 1) ++leaf;
      es.emplace_back(std::min(leaf, s), std::max(leaf, s));
      d[leaf] = 0;
      d[s]--;
    }
    std::size_t u = 0;
    while (d[u] != 1) ++u;
    std::size_t w = u + 1;
    while (d[w] != 1) ++w;
    es.emplace_back(u, w);
    out.push_back(es);

    std::size_t i = seq.size();
    while (i > 0 && seq[i - 1] == n - 1) seq[--i] = 0;
    if (i == 0) break;
    seq[i - 1]++;
  }
  return out;
}

}  // namespace lman
