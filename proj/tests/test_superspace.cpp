#include "doctest.h"
#include "lman/superspace.hpp"

using namespace lman;

TEST_CASE("koszul sign basics") {
  // two odd elements swapped: (-1)^{1·1} = -1 symmetric, +1 antisymmetric
  CHECK(koszul_sign({1, 1}, {1, 0}, false) == -1);
  CHECK(koszul_sign({1, 1}, {1, 0}, true) == 1);
  // two even elements: no sign symmetric, -1 antisymmetric
  CHECK(koszul_sign({0, 0}, {1, 0}, false) == 1);
  CHECK(koszul_sign({0, 0}, {1, 0}, true) == -1);
  CHECK(koszul_sign({0, 1, 0}, {0, 1, 2}, true) == 1);
  CHECK_THROWS(koszul_sign({0, 0}, {0, 0}, false));
}

TEST_CASE("koszul sign is multiplicative under composition") {
  std::vector<Parity> par = {0, 1, 1, 0};
  std::vector<std::size_t> p1 = {2, 0, 3, 1}, p2 = {1, 3, 0, 2};
  // compose: apply p1 then p2 to the result
  std::vector<std::size_t> comp(4);
  for (std::size_t i = 0; i < 4; ++i) comp[i] = p1[p2[i]];
  for (bool anti : {false, true}) {
    std::vector<Parity> par1(4);
    for (std::size_t i = 0; i < 4; ++i) par1[i] = par[p1[i]];
    int s1 = koszul_sign(par, p1, anti);
    int s2 = koszul_sign(par1, p2, anti);
    CHECK(koszul_sign(par, comp, anti) == s1 * s2);
  }
}

TEST_CASE("shuffle sign against brute inversion count") {
  std::vector<Parity> par = {1, 0, 1, 1};
  // shuffle {0,2} then {1,3}: arrangement (0,2,1,3), inversion (2,1)
  // symmetric: parities 1·0 -> +1; antisymmetric: extra -1
  CHECK(shuffle_sign(par, {0, 2}, {1, 3}, false) == 1);
  CHECK(shuffle_sign(par, {0, 2}, {1, 3}, true) == -1);
  // (1,3),(0,2): inversions (1,0),(3,0),(3,2): parities 0·1,1·1,1·1
  CHECK(shuffle_sign(par, {1, 3}, {0, 2}, false) == 1);
  CHECK(shuffle_sign(par, {1, 3}, {0, 2}, true) == -1);
}

TEST_CASE("parity shift is involutive") {
  SuperSpace s{{"a", "b"}, {0, 1}};
  auto t = parity_shift(parity_shift(s));
  CHECK(t.parities == s.parities);
}

TEST_CASE("pairing form validation") {
  SuperSpace s{{"e", "f"}, {0, 0}};
  PairingForm g{s, {{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(0)}},
                PairingKind::SymmetricEven};
  CHECK_NOTHROW(g.validate());
  // odd-odd block of a symmetric form must be antisymmetric
  SuperSpace oo{{"a", "b"}, {1, 1}};
  PairingForm bad{oo, {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}},
                  PairingKind::SymmetricEven};
  CHECK_THROWS(bad.validate());
  PairingForm good{oo, {{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}},
                   PairingKind::SymmetricEven};
  CHECK_NOTHROW(good.validate());
  // evenness: no pairing between even and odd
  SuperSpace mix{{"x", "xi"}, {0, 1}};
  PairingForm off{mix, {{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}},
                  PairingKind::SymmetricEven};
  CHECK_THROWS(off.validate());
  // degenerate forms rejected
  SuperSpace ee{{"e", "f"}, {0, 0}};
  PairingForm deg{ee, {{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1)}},
                  PairingKind::SymmetricEven};
  CHECK_THROWS(deg.validate());
}

TEST_CASE("casimir contracts to the identity") {
  SuperSpace s2{{"a", "b", "p", "q"}, {0, 0, 1, 1}};
  std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(4, Scalar(0)));
  m[0][1] = m[1][0] = 3;
  m[1][1] = 1;
  m[2][3] = 5;
  m[3][2] = -5;
  PairingForm g2{s2, m, PairingKind::SymmetricEven};
  auto cas = casimir_of(g2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Scalar acc(0);
      for (std::size_t k = 0; k < 4; ++k) acc += cas.tensor[i][k] * m[k][j];
      CHECK(acc == (i == j ? 1 : 0));
    }
}
