#include "doctest.h"
#include "lman/series.hpp"

using namespace lman;

namespace {

SuperSpace chart() { return SuperSpace{{"x", "y", "u", "v"}, {0, 0, 1, 1}}; }

Series var(std::size_t i, int d = 6) { return Series::coordinate(chart(), d, i); }

}  // namespace

TEST_CASE("odd variables square to zero and anticommute") {
  auto u = var(2), v = var(3);
  CHECK((u * u).is_zero());
  CHECK((u * v + v * u).is_zero());
  CHECK(u * v == -(v * u));
}

TEST_CASE("even arithmetic and truncation") {
  auto x = var(0, 2);
  auto one = Series::constant(chart(), 2, Scalar(1));
  auto p = (one + x) * (one - x);
  CHECK(p == one - x * x);
  // x^3 falls out of the window at D=2
  CHECK((x * x * x).is_zero());
}

TEST_CASE("left derivative convention") {
  auto u = var(2), v = var(3), x = var(0);
  CHECK((u * v).derivative(2) == v);
  CHECK((u * v).derivative(3) == -u);
  CHECK((x * x * u).derivative(0) == x * u * Scalar(2));
  // product rule with sign: d_u(x u v) = x v
  CHECK((x * u * v).derivative(2) == x * v);
  CHECK_THROWS((x).derivative(9));
}

TEST_CASE("derivative is a left super-derivation") {
  // d_i(fg) = (d_i f) g + (-1)^{|i||f|} f (d_i g) for homogeneous f
  auto x = var(0), u = var(2), v = var(3);
  auto f = u;            // odd
  auto g = x * v + v;    // odd
  for (std::size_t i : {0ul, 2ul, 3ul}) {
    auto lhs = (f * g).derivative(i);
    int s = (i >= 2) ? -1 : 1;  // |f| = 1
    auto rhs = f.derivative(i) * g + f * g.derivative(i) * Scalar(s);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("iterated derivatives anticommute on odd variables") {
  auto x = var(0), u = var(2), v = var(3);
  auto f = x * u * v + u * v;
  CHECK(iterated_derivative(f, {2, 3}) == -iterated_derivative(f, {3, 2}));
  CHECK(iterated_derivative(f, {0, 2}) == iterated_derivative(f, {2, 0}));
}

TEST_CASE("parity tracking") {
  auto x = var(0), u = var(2), v = var(3);
  CHECK(x.homogeneous_parity() == 0);
  CHECK(u.homogeneous_parity() == 1);
  CHECK((u * v).homogeneous_parity() == 0);
  CHECK_FALSE((x + u).homogeneous_parity().has_value());
  CHECK_FALSE(Series(chart(), 6).homogeneous_parity().has_value());
}

TEST_CASE("geometric inverse") {
  auto x = var(0), u = var(2), v = var(3);
  auto one = Series::constant(chart(), 6, Scalar(1));
  auto f = one + x + u * v * Scalar(3);
  auto g = f.inverse();
  CHECK(f * g == one);
  CHECK(g * f == one);
  // 1/(2 - x): leading coefficients 1/2, 1/4, 1/8
  auto h = (Series::constant(chart(), 6, Scalar(2)) - x).inverse();
  std::vector<int> e(4, 0);
  CHECK(h.coefficient(e) == Scalar(1) / 2);
  e[0] = 1;
  CHECK(h.coefficient(e) == Scalar(1) / 4);
  e[0] = 2;
  CHECK(h.coefficient(e) == Scalar(1) / 8);
  CHECK_THROWS(x.inverse());
}
