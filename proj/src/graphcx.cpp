#include "lman/graphcx.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "lman/sparse_matrix.hpp"
#include "lman/treespace.hpp"

namespace lman {

int total_weight(const Graph& g) {
  if (!g.decorated())
    throw std::invalid_argument("total_weight: graph is not decorated");
  int w = 0;
  for (int x : g.weight) w += x;
  return w;
}

int total_genus(const Graph& g) {
  if (!g.decorated())
    throw std::invalid_argument("total_genus: graph is not decorated");
  if (!g.connected())
    throw std::invalid_argument("total_genus: graph is not connected");
  int s = 0;
  for (int x : g.genus) s += x;
  return s + static_cast<int>(g.edges.size()) - static_cast<int>(g.nv) + 1;
}

GraphVector differential(const Graph& g) {
  if (!g.decorated())
    throw std::invalid_argument("differential: graph is not decorated");
  GraphVector out;
  for (std::size_t v = 0; v < g.nv; ++v) {
    auto fs = flags_at(g, v);
    // ordered splittings: the moved part lands on the appended vertex
    for (std::size_t mask = 0; mask < (std::size_t{1} << fs.size()); ++mask) {
      for (int w1 = 1; w1 < g.weight[v]; ++w1) {
        for (int g1 = 0; g1 <= g.genus[v]; ++g1) {
          Graph h = g;
          std::size_t nv = h.nv++;
          for (std::size_t i = 0; i < fs.size(); ++i) {
            if (!(mask & (std::size_t{1} << i))) continue;
            const Flag& f = fs[i];
            if (f.is_tail)
              h.tails[f.index].first = nv;
            else if (f.end == 0)
              h.edges[f.index].first = nv;
            else
              h.edges[f.index].second = nv;
          }
          h.weight[v] -= w1;
          h.genus[v] -= g1;
          h.weight.push_back(w1);
          h.genus.push_back(g1);
          h.edges.insert(h.edges.begin(), {v, nv});
          gv_add(out, canonicalize(h), Scalar(1));
        }
      }
    }
    // loop expansion: spend one unit of genus on a new loop
    if (g.genus[v] >= 1) {
      Graph h = g;
      h.genus[v] -= 1;
      h.edges.insert(h.edges.begin(), {v, v});
      gv_add(out, canonicalize(h), Scalar(1));
    }
  }
  return out;
}

namespace {

// compositions of total into n parts, each >= lo
void compositions(int total, int n, int lo, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (n == 1) {
    if (total >= lo) {
      cur.push_back(total);
      emit(cur);
      cur.pop_back();
    }
    return;
  }
  for (int x = lo; x <= total - lo * (n - 1); ++x) {
    cur.push_back(x);
    compositions(total - x, n - 1, lo, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GraphClass> enumerate_graphs(int n, int w, int g, int p) {
  std::vector<GraphClass> out;
  std::map<std::string, bool> seen;
  for (int nv = 1; nv <= w; ++nv) {
    int cycles = p - nv + 1;
    if (cycles < 0 || cycles > g) continue;
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t i = 0; i < static_cast<std::size_t>(nv); ++i)
      for (std::size_t j = i; j < static_cast<std::size_t>(nv); ++j)
        cand.emplace_back(i, j);
    if (static_cast<std::size_t>(p) > cand.size()) continue;
    // p-subsets of candidate edges (repeats die by the odd swap anyway)
    std::vector<char> pick(cand.size(), 0);
    std::fill(pick.begin(), pick.begin() + p, 1);
    do {
      Graph base;
      base.nv = static_cast<std::size_t>(nv);
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (pick[i]) base.edges.push_back(cand[i]);
      if (!base.connected()) continue;
      std::vector<int> cur;
      compositions(w, nv, 1, cur, [&](const std::vector<int>& wt) {
        std::vector<int> cur2;
        compositions(g - cycles, nv, 0, cur2, [&](const std::vector<int>& gn) {
          // tail assignments
          std::vector<std::size_t> at(static_cast<std::size_t>(n), 0);
          while (true) {
            Graph h = base;
            h.weight = wt;
            h.genus = gn;
            for (int t = 0; t < n; ++t) h.tails.emplace_back(at[t], t + 1);
            auto c = canonicalize(h);
            if (!c.zero && !seen.count(c.key)) {
              seen.emplace(c.key, true);
              c.sign = 1;
              out.push_back(std::move(c));
            }
            std::size_t i = at.size();
            while (i > 0 && at[i - 1] + 1 == base.nv) at[--i] = 0;
            if (i == 0) break;
            at[i - 1]++;
          }
        });
      });
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::pair<std::size_t, std::size_t> complex_ranks(int n, int w, int g, int p) {
  auto gens = enumerate_graphs(n, w, g, p);
  auto targets = enumerate_graphs(n, w, g, p + 1);
  std::map<std::string, std::size_t> tindex;
  for (std::size_t i = 0; i < targets.size(); ++i)
    tindex.emplace(targets[i].key, i);
  SparseMatrix m(gens.size(), targets.size());
  for (std::size_t r = 0; r < gens.size(); ++r) {
    for (const auto& [key, term] : differential(gens[r].graph)) {
      auto it = tindex.find(key);
      if (it == tindex.end())
        throw std::logic_error("complex_ranks: image outside target cell");
      m.add(r, it->second, term.second);
    }
  }
  return {gens.size(), rank(m)};
}

std::size_t cohomology_dimension(int n, int w, int p) {
  auto [gens, rk] = complex_ranks(n, w, 0, p);
  std::size_t below = (p > 0) ? complex_ranks(n, w, 0, p - 1).second : 0;
  return gens - rk - below;
}

}  // namespace lman
