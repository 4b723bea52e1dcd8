#include "doctest.h"
#include "lman/linfty.hpp"

using namespace lman;

namespace {

// gl(1,1) as a cyclic Lie superalgebra, entered by hand from the
// multiplication table e_ij e_kl = δ_jk e_il.  Basis order:
// 0 = e11, 1 = e12, 2 = e21, 3 = e22.  Form (e_ij, e_ji) = (-1)^{|i|}.
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

LinftyStructure gl11_structure(int max_arity = 4) {
  LinftyStructure l(gl11_space(), gl11_form(), max_arity);
  l.set_entry(2, {0, 1}, 1, Scalar(1));   // [e11,e12] = e12
  l.set_entry(2, {0, 2}, 2, Scalar(-1));  // [e11,e21] = -e21
  l.set_entry(2, {1, 2}, 0, Scalar(1));   // [e12,e21] = e11 + e22
  l.set_entry(2, {1, 2}, 3, Scalar(1));
  l.set_entry(2, {1, 3}, 1, Scalar(1));   // [e12,e22] = e12
  l.set_entry(2, {2, 3}, 2, Scalar(-1));  // [e21,e22] = -e21
  return l;
}

bool all_zero(const std::vector<Scalar>& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("antisymmetric storage expands Koszul signs") {
  auto l = gl11_structure();
  // e12, e11: swapping an odd-even pair in an antisymmetric operation
  // flips the sign
  auto v = l.apply(2, {1, 0});
  CHECK(v[1] == -1);
  // two odds: [e21,e12] = +[e12,e21]
  auto w = l.apply(2, {2, 1});
  CHECK(w[0] == 1);
  CHECK(w[3] == 1);
  // even repeated input is forced to zero
  CHECK(all_zero(l.apply(2, {0, 0})));
}

TEST_CASE("parity and conflict violations are recorded") {
  LinftyStructure l(gl11_space(), gl11_form(), 2);
  l.set_entry(1, {0}, 0, Scalar(1));  // d is odd: e11 -> e11 breaks parity
  auto rep = validate_structure(l);
  CHECK_FALSE(rep.ok());

  auto l2 = gl11_structure();
  l2.set_entry(2, {1, 0}, 1, Scalar(1));  // should be -1 under antisymmetry
  CHECK_FALSE(validate_structure(l2).ok());

  auto l3 = gl11_structure();
  l3.set_entry(2, {1, 0}, 1, Scalar(-1));  // consistent restatement
  CHECK(validate_structure(l3).violations.empty());
}

TEST_CASE("gl(1,1) passes the full Jacobi sweep") {
  auto l = gl11_structure();
  CHECK(validate_structure(l).ok());
  auto rep = check_all_jacobi(l);
  CHECK(rep.ok());
  for (int n = 0; n <= 3; ++n)
    for (const auto& [t, v] : jacobi_residual(l, n)) CHECK(all_zero(v));
}

TEST_CASE("a perturbed bracket fails Jacobi") {
  auto l = gl11_structure();
  l.set_entry(2, {0, 3}, 0, Scalar(1));  // [e11,e22] = e11: not a Lie bracket
  CHECK_FALSE(check_all_jacobi(l).ok());

  // a cyclic differential with d² ≠ 0: d(e11) = e12, d(e21) = -e11
  auto l2 = gl11_structure();
  l2.set_entry(1, {0}, 1, Scalar(1));
  l2.set_entry(1, {2}, 0, Scalar(-1));
  CHECK(validate_structure(l2).ok());
  CHECK_FALSE(check_all_jacobi(l2).ok());
}

TEST_CASE("jacobi residual tensor is antisymmetric in its inputs") {
  auto l = gl11_structure();
  l.set_entry(2, {0, 3}, 0, Scalar(1));
  auto res = jacobi_residual(l, 2);
  const auto& par = l.space().parities;
  for (const auto& [t, v] : res) {
    std::vector<std::size_t> s = {t[1], t[0]};
    int sign = (par[t[0]] && par[t[1]]) ? 1 : -1;
    const auto& w = res.at(s);
    for (std::size_t k = 0; k < v.size(); ++k)
      CHECK(v[k] == Scalar(sign) * w[k]);
  }
}

TEST_CASE("cyclic forms of gl(1,1)") {
  auto l = gl11_structure();
  auto forms = cyclic_forms(l);
  REQUIRE(forms.size() == 5);
  // Y_3(x,y,z) = ([x,y],z): check one value against the multiplication table:
  // ([e12,e21], e11) = (e11 + e22, e11) = 1
  CHECK(l.cyclic_value({1, 2, 0}) == 1);
  // invariance of the form: ([e11,e12],e21) = (e12,e21) = 1
  CHECK(l.cyclic_value({0, 1, 2}) == 1);
  // and the cyclic rotation with sign (-1)^{n + x̄_1(x̄_2+..)}: n = 2,
  // x̄(e11) = 0, so Y(e12,e21,e11) = Y(e11,e12,e21)
  CHECK(l.cyclic_value({1, 2, 0}) == l.cyclic_value({0, 1, 2}));
}

TEST_CASE("non-invariant pairing breaks cyclicity") {
  std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(4, Scalar(0)));
  m[0][0] = 1;
  m[1][2] = 1;
  m[2][1] = -1;
  m[3][3] = 1;  // sign flip: no longer the supertrace form
  PairingForm bad{gl11_space(), m, PairingKind::SymmetricEven};
  LinftyStructure l(gl11_space(), bad, 4);
  l.set_entry(2, {0, 1}, 1, Scalar(1));
  l.set_entry(2, {0, 2}, 2, Scalar(-1));
  l.set_entry(2, {1, 2}, 0, Scalar(1));
  l.set_entry(2, {1, 2}, 3, Scalar(1));
  l.set_entry(2, {1, 3}, 1, Scalar(1));
  l.set_entry(2, {2, 3}, 2, Scalar(-1));
  CHECK_THROWS_AS(cyclic_forms(l), std::invalid_argument);
}

TEST_CASE("curvature terms flow through the Jacobi sweep") {
  // c = e11 with d = 0 fails (b): d²x + [c,x] = [e11,x] ≠ 0
  auto l = gl11_structure();
  l.set_entry(0, {}, 1, Scalar(1));  // c = e12 (odd = parity of arity 0? no)
  // arity 0 output must be odd... e12 is odd: parity 0 + 0 ≡ p(e12)? p = 0,
  // so an arity-0 output must be even.  e12 gets rejected:
  CHECK_FALSE(validate_structure(l).ok());

  auto l2 = gl11_structure();
  l2.set_entry(0, {}, 0, Scalar(1));  // c = e11, even: allowed
  CHECK(validate_structure(l2).ok());
  CHECK_FALSE(check_all_jacobi(l2).ok());
}
