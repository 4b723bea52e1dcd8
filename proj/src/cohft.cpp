#include "lman/cohft.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lman {

namespace {

// λ(w_1..w_n) = (-1)^{Σ (i-1) w̄_i}, the coefficient twist of the
// potential bijection; makes the cyclic forms supersymmetric with respect
// to the shifted parities.
int lambda_sign(const std::vector<Parity>& par,
                const std::vector<std::size_t>& tuple) {
  int s = 0;
  for (std::size_t a = 0; a < tuple.size(); ++a)
    if (par[tuple[a]]) s += static_cast<int>(a);
  return (s & 1) ? -1 : 1;
}

Scalar y_tilde(const LinftyStructure& L, const std::vector<std::size_t>& w) {
  // flagless vertices would need the potential's constant term, which the
  // structure does not carry
  if (w.empty()) return Scalar(0);
  if (static_cast<int>(w.size()) > L.max_arity() + 1) return Scalar(0);
  Scalar v = L.cyclic_value(w);
  if (v == 0) return v;
  return Scalar(lambda_sign(L.space().parities, w)) * v;
}

// parities of ΠV, the space the CohFT inputs live in
std::vector<Parity> q_parities(const LinftyStructure& L) {
  std::vector<Parity> q = L.space().parities;
  for (auto& x : q) x = 1 - x;
  return q;
}

// Inverse of the coordinate symplectic form ω_ab = ±g_ab; its Casimir
// decorates the internal edges.
std::vector<std::vector<Scalar>> edge_tensor(const LinftyStructure& L) {
  const std::size_t d = L.dim();
  auto q = q_parities(L);
  std::vector<std::vector<Scalar>> omega(d, std::vector<Scalar>(d, Scalar(0)));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      omega[a][b] = q[b] ? L.pairing().at(a, b) : -L.pairing().at(a, b);
  return matrix_inverse(omega);
}

struct LegPlan {
  // target slot -> global source slot, vertices in order, flags by source slot
  std::vector<std::size_t> perm;
  // per target slot: input position (tail) or edge leg (edge index, end)
  struct Slot {
    bool is_tail;
    std::size_t index;  // tail: input position; edge leg: edge index
    std::size_t end;    // 0/1 for edge legs
  };
  std::vector<Slot> slots;
  std::vector<std::size_t> vertex_size;
};

LegPlan make_plan(const Graph& tau, std::size_t n) {
  LegPlan plan;
  for (std::size_t v = 0; v < tau.nv; ++v) {
    std::vector<std::pair<std::size_t, LegPlan::Slot>> here;
    for (const auto& [tv, l] : tau.tails)
      if (tv == v)
        here.push_back({static_cast<std::size_t>(l) - 1,
                        {true, static_cast<std::size_t>(l) - 1, 0}});
    for (std::size_t j = 0; j < tau.edges.size(); ++j) {
      if (tau.edges[j].first == v) here.push_back({n + 2 * j, {false, j, 0}});
      if (tau.edges[j].second == v)
        here.push_back({n + 2 * j + 1, {false, j, 1}});
    }
    std::sort(here.begin(), here.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    plan.vertex_size.push_back(here.size());
    for (auto& [pos, slot] : here) {
      plan.perm.push_back(pos);
      plan.slots.push_back(slot);
    }
  }
  return plan;
}

}  // namespace

std::size_t CohFTMap::tuple_index(const std::vector<std::size_t>& t) const {
  std::size_t idx = 0, d = structure.dim();
  for (std::size_t x : t) idx = idx * d + x;
  return idx;
}

Scalar y_tau(const LinftyStructure& L, const Graph& tau,
             const std::vector<std::size_t>& inputs) {
  const std::size_t n = inputs.size();
  auto plan = make_plan(tau, n);
  auto q = q_parities(L);
  auto W = edge_tensor(L);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = 0; b < L.dim(); ++b)
      if (W[a][b] != 0) pairs.emplace_back(a, b);

  const std::size_t ne = tau.edges.size();
  std::vector<std::size_t> pick(ne, 0);
  Scalar total(0);
  while (true) {
    // basis index and parity at every global source slot
    std::vector<std::size_t> at(n + 2 * ne);
    for (std::size_t i = 0; i < n; ++i) at[i] = inputs[i];
    Scalar weight(1);
    for (std::size_t j = 0; j < ne; ++j) {
      auto [a, b] = pairs[pick[j]];
      at[n + 2 * j] = a;
      at[n + 2 * j + 1] = b;
      weight *= W[a][b];
    }
    std::vector<Parity> par(at.size());
    for (std::size_t i = 0; i < at.size(); ++i) par[i] = q[at[i]];
    int sign = koszul_sign(par, plan.perm, false);
    Scalar prod = weight * sign;
    std::size_t base = 0;
    for (std::size_t v = 0; v < tau.nv && prod != 0; ++v) {
      std::vector<std::size_t> w(plan.vertex_size[v]);
      for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = at[plan.perm[base + i]];
      prod *= y_tilde(L, w);
      base += plan.vertex_size[v];
    }
    total += prod;
    if (ne == 0) break;
    std::size_t j = 0;
    while (j < ne && ++pick[j] == pairs.size()) pick[j++] = 0;
    if (j == ne) break;
  }
  return total;
}

CohFTMap build_I(const LinftyStructure& L, int n, int p) {
  CohFTMap I{L, n, p, {}};
  const std::size_t d = L.dim();
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= d;
  I.values.resize(count);
  std::vector<GraphClass> trees;
  for (int deg = 0; deg <= p; ++deg) {
    auto cs = enumerate_trees(standard_labels(n), deg);
    trees.insert(trees.end(), cs.begin(), cs.end());
  }
  std::vector<std::size_t> t(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    for (const auto& c : trees) {
      Scalar y = y_tau(L, c.graph, t);
      if (y != 0) gv_add(I.values[idx], c, y);
    }
    for (std::size_t i = t.size(); i-- > 0;) {
      if (++t[i] < d) break;
      t[i] = 0;
    }
  }
  return I;
}

namespace {

// reduced coordinates of the degree-d part
struct Reducer {
  std::map<std::pair<int, int>, HSpace> spaces;
  HSpace& space(int n, int deg) {
    auto key = std::make_pair(n, deg);
    auto it = spaces.find(key);
    if (it == spaces.end())
      it = spaces.emplace(key, h_space(standard_labels(n), deg)).first;
    return it->second;
  }
  std::vector<Scalar> reduce(int n, int deg, const GraphVector& v) {
    GraphVector part;
    for (const auto& [key, term] : v)
      if (static_cast<int>(term.first.edges.size()) == deg) part.insert({key, term});
    return space(n, deg).reduce(part);
  }
};

using Block = std::map<std::pair<int, int>, std::vector<std::vector<Scalar>>>;

void block_add(Block& m, int d1, int d2, const std::vector<Scalar>& lc,
               const std::vector<Scalar>& rc, const Scalar& coeff) {
  auto& mat = m[{d1, d2}];
  if (mat.empty())
    mat.assign(lc.size(), std::vector<Scalar>(rc.size(), Scalar(0)));
  for (std::size_t i = 0; i < lc.size(); ++i) {
    if (lc[i] == 0) continue;
    for (std::size_t j = 0; j < rc.size(); ++j)
      if (rc[j] != 0) mat[i][j] += coeff * lc[i] * rc[j];
  }
}

bool block_equal(const Block& a, const Block& b) {
  auto nonzero = [](const Block& m, std::pair<int, int> key) {
    auto it = m.find(key);
    return it != m.end();
  };
  std::vector<std::pair<int, int>> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : b)
    if (!nonzero(a, k)) keys.push_back(k);
  for (const auto& k : keys) {
    auto ia = a.find(k), ib = b.find(k);
    if (ia == a.end() || ib == b.end()) {
      const auto& m = (ia == a.end()) ? ib->second : ia->second;
      for (const auto& row : m)
        for (const auto& x : row)
          if (x != 0) return false;
      continue;
    }
    if (ia->second != ib->second) return false;
  }
  return true;
}

std::string tuple_str(const std::vector<std::size_t>& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace

Report check_axioms(const CohFTMap& I) {
  Report rep;
  const LinftyStructure& L = I.structure;
  const int n = I.arity;
  const int p = I.max_degree;
  const std::size_t d = L.dim();
  auto q = q_parities(L);
  Reducer red;

  auto tuples = [&](int k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> t(static_cast<std::size_t>(k), 0);
    while (true) {
      out.push_back(t);
      std::size_t i = t.size();
      while (i > 0) {
        if (++t[i - 1] < d) break;
        t[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
    return out;
  };
  auto all = tuples(n);

  // axiom (a): S_n equivariance
  std::vector<std::size_t> perm(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  while (std::next_permutation(perm.begin(), perm.end()) || true) {
    bool identity = true;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) identity = false;
    if (identity) break;
    bool bad = false;
    for (const auto& t : all) {
      std::vector<std::size_t> y(t.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = t[perm[i]];
      std::vector<Parity> par(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) par[i] = q[t[i]];
      int ks = koszul_sign(par, perm, false);
      // relabel tails: old label perm[i]+1 becomes i+1
      std::vector<int> newlab(static_cast<std::size_t>(n) + 1, 0);
      for (std::size_t i = 0; i < perm.size(); ++i)
        newlab[perm[i] + 1] = static_cast<int>(i) + 1;
      GraphVector rhs;
      for (const auto& [key, term] : I.values[I.tuple_index(t)]) {
        Graph g = term.first;
        for (auto& [tv, l] : g.tails) l = newlab[l];
        // tail relabeling twists the orientation line; canonicalize
        // accounts for it, so no separate sign factor here
        auto c = canonicalize(g);
        gv_add(rhs, c, term.second);
      }
      const GraphVector& lhs = I.values[I.tuple_index(y)];
      for (int deg = 0; deg <= p && !bad; ++deg) {
        auto lc = red.reduce(n, deg, lhs);
        auto rc = red.reduce(n, deg, rhs);
        for (std::size_t i = 0; i < lc.size(); ++i)
          if (lc[i] != Scalar(ks) * rc[i]) bad = true;
      }
      if (bad) {
        rep.violations.push_back(
            {"equivariance fails at tuple " + tuple_str(t)});
        break;
      }
    }
  }

  // axiom (b): boundary compatibility
  auto W = edge_tensor(L);
  std::map<int, CohFTMap> sub;  // by arity, truncated to p-1
  auto submap = [&](int k) -> const CohFTMap& {
    auto it = sub.find(k);
    if (it == sub.end()) it = sub.emplace(k, build_I(L, k, p - 1)).first;
    return it->second;
  };
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    if (!(mask & 1)) continue;  // normalize: label 1 on the left side
    std::vector<int> s1, s2;
    for (int l = 1; l <= n; ++l)
      ((mask >> (l - 1)) & 1 ? s1 : s2).push_back(l);
    auto sigma = make_partition(s1, s2);
    const int k1 = static_cast<int>(s1.size()), k2 = static_cast<int>(s2.size());
    const CohFTMap& IL = submap(k1 + 1);
    const CohFTMap& IR = submap(k2 + 1);
    // shuffle rearranging the inputs into (S1 | S2); the same shuffle acts
    // on the odd tail lines of the orientations, contributing its sign
    std::vector<std::size_t> shuf;
    for (int l : s1) shuf.push_back(static_cast<std::size_t>(l) - 1);
    for (int l : s2) shuf.push_back(static_cast<std::size_t>(l) - 1);
    int tail_shuf = 1;
    for (std::size_t i = 0; i < shuf.size(); ++i)
      for (std::size_t j = i + 1; j < shuf.size(); ++j)
        if (shuf[i] > shuf[j]) tail_shuf = -tail_shuf;
    bool bad = false;
    for (const auto& t : all) {
      Block lhs, rhs;
      for (const auto& term : boundary_map(I.values[I.tuple_index(t)], sigma)) {
        int d1 = static_cast<int>(term.left.graph.edges.size());
        int d2 = static_cast<int>(term.right.graph.edges.size());
        GraphVector lv, rv;
        gv_add(lv, term.left, Scalar(1));
        gv_add(rv, term.right, Scalar(1));
        block_add(lhs, d1, d2, red.reduce(k1 + 1, d1, lv),
                  red.reduce(k2 + 1, d2, rv), term.coeff);
      }
      std::vector<Parity> par(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) par[i] = q[t[i]];
      int eps = tail_shuf * koszul_sign(par, shuf, false);
      int s2par = 0;
      for (int l : s2) s2par += q[t[static_cast<std::size_t>(l) - 1]];
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          if (W[a][b] == 0) continue;
          int move = (q[b] && (s2par & 1)) ? -1 : 1;
          Scalar coeff = W[a][b] * eps * move;
          std::vector<std::size_t> tl, tr;
          for (int l : s1) tl.push_back(t[static_cast<std::size_t>(l) - 1]);
          tl.push_back(a);
          for (int l : s2) tr.push_back(t[static_cast<std::size_t>(l) - 1]);
          tr.push_back(b);
          const GraphVector& lv = IL.values[IL.tuple_index(tl)];
          const GraphVector& rv = IR.values[IR.tuple_index(tr)];
          for (int d1 = 0; d1 <= p - 1; ++d1)
            for (int d2 = 0; d1 + d2 <= p - 1; ++d2)
              block_add(rhs, d1, d2, red.reduce(k1 + 1, d1, lv),
                        red.reduce(k2 + 1, d2, rv), coeff);
        }
      if (!block_equal(lhs, rhs)) {
        bad = true;
        std::string s1str;
        for (int l : s1) s1str += (s1str.empty() ? "" : ",") + std::to_string(l);
        rep.violations.push_back({"boundary compatibility fails at S1={" +
                                  s1str + "} tuple " + tuple_str(t)});
        break;
      }
    }
    (void)bad;
  }

  // boundary compatibility, well-definedness half: the cut lands in the
  // quotient by the relations, which is legitimate only because Y vanishes
  // on every relation vector (vertex splittings are the tree boundaries;
  // Y ∘ d = 0 is the structure equation seen through the contraction)
  for (int deg = 0; deg + 1 <= p; ++deg) {
    bool bad = false;
    for (const auto& cls : enumerate_trees(standard_labels(n), deg)) {
      for (std::size_t v = 0; v < cls.graph.nv && !bad; ++v) {
        for (const Flag& f : flags_at(cls.graph, v)) {
          auto R = relation_vector(cls.graph, v, f);
          for (const auto& t : all) {
            Scalar s(0);
            for (const auto& [key, term] : R)
              s += term.second * y_tau(L, term.first, t);
            if (s != 0) {
              rep.violations.push_back(
                  {"boundary compatibility fails on a relation at tree " +
                   cls.key + " tuple " + tuple_str(t)});
              bad = true;
              break;
            }
          }
          if (bad) break;
        }
      }
      if (bad) break;
    }
  }
  return rep;
}

}  // namespace lman
