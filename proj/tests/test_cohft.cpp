#include "doctest.h"
#include "lman/cohft.hpp"

#include <string>
#include <vector>

using namespace lman;

namespace {

SuperSpace gl11_space() {
  return SuperSpace{{"e11", "e12", "e21", "e22"}, {0, 1, 1, 0}};
}

PairingForm gl11_form() {
  std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(4, Scalar(0)));
  m[0][0] = 1;
  m[1][2] = 1;
  m[2][1] = -1;
  m[3][3] = -1;
  return PairingForm{gl11_space(), m, PairingKind::SymmetricEven};
}

LinftyStructure gl11_structure() {
  LinftyStructure l(gl11_space(), gl11_form(), 4);
  l.set_entry(2, {0, 1}, 1, Scalar(1));
  l.set_entry(2, {0, 2}, 2, Scalar(-1));
  l.set_entry(2, {1, 2}, 0, Scalar(1));
  l.set_entry(2, {1, 2}, 3, Scalar(1));
  l.set_entry(2, {1, 3}, 1, Scalar(1));
  l.set_entry(2, {2, 3}, 2, Scalar(-1));
  return l;
}

// bracket with [e12,e21] bumped to 2 e11 + e22: not a Lie algebra any more
LinftyStructure gl11_perturbed() {
  LinftyStructure l(gl11_space(), gl11_form(), 4);
  l.set_entry(2, {0, 1}, 1, Scalar(1));
  l.set_entry(2, {0, 2}, 2, Scalar(-1));
  l.set_entry(2, {1, 2}, 0, Scalar(2));
  l.set_entry(2, {1, 2}, 3, Scalar(1));
  l.set_entry(2, {1, 3}, 1, Scalar(1));
  l.set_entry(2, {2, 3}, 2, Scalar(-1));
  return l;
}

Graph corolla(int n) {
  Graph g;
  g.nv = 1;
  for (int l = 1; l <= n; ++l) g.tails.emplace_back(0, l);
  g.weight = {1};
  g.genus = {0};
  return g;
}

// independent recomputation of the twisted vertex value
Scalar y_oracle(const LinftyStructure& L, const std::vector<std::size_t>& w) {
  if (static_cast<int>(w.size()) > L.max_arity() + 1) return Scalar(0);
  int s = 0;
  for (std::size_t a = 0; a < w.size(); ++a)
    if (L.space().parities[w[a]]) s += static_cast<int>(a);
  Scalar v = L.cyclic_value(w);
  return (s & 1) ? -v : v;
}

std::vector<std::vector<std::size_t>> all_tuples(std::size_t dim, int n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(static_cast<std::size_t>(n), 0);
  while (true) {
    out.push_back(t);
    std::size_t i = t.size();
    while (i > 0) {
      if (++t[i - 1] < dim) break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

bool mentions(const Report& r, const std::string& what) {
  for (const auto& v : r.violations)
    if (v.what.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("corolla contraction is the twisted cyclic form") {
  auto L = gl11_structure();
  for (int n = 2; n <= 3; ++n)
    for (const auto& t : all_tuples(4, n))
      CHECK(y_tau(L, corolla(n), t) == y_oracle(L, t));
}

TEST_CASE("two-vertex trees contract through the inverse form") {
  auto L = gl11_structure();
  // parities on the shifted space, where the inputs live
  std::vector<Parity> q = {1, 0, 0, 1};
  std::vector<std::vector<Scalar>> omega(4, std::vector<Scalar>(4, Scalar(0)));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      omega[a][b] = q[b] ? L.pairing().at(a, b) : -L.pairing().at(a, b);
  auto W = matrix_inverse(omega);

  Graph tau;
  tau.nv = 2;
  tau.edges = {{0, 1}};
  tau.tails = {{0, 1}, {0, 2}, {1, 3}};
  tau.weight = {1, 1};
  tau.genus = {0, 0};

  for (const auto& t : all_tuples(4, 3)) {
    // the first Casimir leg crosses the third input on its way to vertex 0
    Scalar expect(0);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        if (W[a][b] == 0) continue;
        int sgn = (q[a] && q[t[2]]) ? -1 : 1;
        expect += W[a][b] * sgn * y_oracle(L, {t[0], t[1], a}) *
                  y_oracle(L, {t[2], b});
      }
    CHECK(y_tau(L, tau, t) == expect);
  }
}

TEST_CASE("a pure bracket only feeds trivalent trees") {
  auto L = gl11_structure();
  auto S = standard_labels(3);
  for (int deg = 0; deg <= 2; ++deg)
    for (const auto& cls : enumerate_trees(S, deg)) {
      bool trivalent = true;
      for (std::size_t v = 0; v < cls.graph.nv; ++v)
        if (flags_at(cls.graph, v).size() != 3) trivalent = false;
      if (trivalent) continue;
      for (const auto& t : all_tuples(4, 3))
        CHECK(y_tau(L, cls.graph, t) == 0);
    }
}

TEST_CASE("the zero structure induces the zero map") {
  LinftyStructure l(gl11_space(), gl11_form(), 4);
  auto I = build_I(l, 2, 2);
  for (const auto& v : I.values) CHECK(v.empty());
}

TEST_CASE("tuple indexing is row-major") {
  auto I = build_I(gl11_structure(), 2, 0);
  REQUIRE(I.values.size() == 16);
  CHECK(I.tuple_index({0, 0}) == 0);
  CHECK(I.tuple_index({1, 2}) == 6);
  CHECK(I.tuple_index({3, 3}) == 15);
}

TEST_CASE("gl(1,1) satisfies the field theory axioms") {
  auto L = gl11_structure();
  for (int n = 2; n <= 4; ++n) {
    auto I = build_I(L, n, 2);
    auto rep = check_axioms(I);
    CHECK(rep.ok());
  }
}

TEST_CASE("a perturbed bracket is caught") {
  auto L = gl11_perturbed();
  // the cyclic symmetry of the vertex values is broken: visible at arity 3
  auto rep3 = check_axioms(build_I(L, 3, 2));
  CHECK_FALSE(rep3.ok());
  CHECK(mentions(rep3, "equivariance"));
  // the Jacobiator needs a four-valent splitting: visible at arity 4
  auto rep4 = check_axioms(build_I(L, 4, 2));
  CHECK_FALSE(rep4.ok());
  CHECK(mentions(rep4, "boundary compatibility"));
}
