#include "lman/series.hpp"

#include <sstream>
#include <stdexcept>

namespace lman {

Series::Series(SuperSpace coords, int truncation)
    : coords_(std::move(coords)), truncation_(truncation) {
  coords_.validate();
  if (truncation < 0) throw std::invalid_argument("Series: negative truncation");
}

Series Series::constant(const SuperSpace& coords, int truncation,
                        const Scalar& c) {
  Series s(coords, truncation);
  s.add_term(std::vector<int>(coords.dim(), 0), c);
  return s;
}

Series Series::coordinate(const SuperSpace& coords, int truncation,
                          std::size_t i) {
  Series s(coords, truncation);
  std::vector<int> e(coords.dim(), 0);
  e[i] = 1;
  s.add_term(e, Scalar(1));
  return s;
}

int Series::even_degree(const std::vector<int>& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (coords_.parities[i] == 0) d += e[i];
  return d;
}

void Series::add_term(const std::vector<int>& exponents, const Scalar& c) {
  if (exponents.size() != coords_.dim())
    throw std::invalid_argument("add_term: exponent vector length");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0)
      throw std::invalid_argument("add_term: negative exponent");
    if (coords_.parities[i] && exponents[i] > 1) return;  // ξ² = 0
  }
  if (c == 0) return;
  if (even_degree(exponents) > truncation_) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar Series::coefficient(const std::vector<int>& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Series::constant_term() const {
  return coefficient(std::vector<int>(coords_.dim(), 0));
}

std::optional<Parity> Series::homogeneous_parity() const {
  std::optional<Parity> p;
  for (const auto& [e, c] : terms_) {
    int odd = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (coords_.parities[i]) odd += e[i];
    Parity q = odd & 1;
    if (!p)
      p = q;
    else if (*p != q)
      return std::nullopt;
  }
  return p;
}

void Series::check_compatible(const Series& o) const {
  if (coords_.labels != o.coords_.labels ||
      coords_.parities != o.coords_.parities ||
      truncation_ != o.truncation_)
    throw std::invalid_argument("Series: variable set / truncation mismatch");
}

Series Series::operator+(const Series& o) const {
  check_compatible(o);
  Series r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Series& Series::operator+=(const Series& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
  Series r(coords_, truncation_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Series Series::operator*(const Scalar& c) const {
  Series r(coords_, truncation_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, c * v);
  return r;
}

Series Series::operator*(const Series& o) const {
  check_compatible(o);
  Series r(coords_, truncation_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      // Sign of interleaving the odd generators back into index order:
      // each pair (i ∈ a, j ∈ b) of odd variables with i > j anticommutes.
      int sign = 1;
      bool dead = false;
      std::vector<int> e(coords_.dim());
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (coords_.parities[i] && e[i] > 1) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      int b_seen = 0;  // odd generators of b with index < current i
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!coords_.parities[i]) continue;
        if (ea[i] && (b_seen & 1)) sign = -sign;
        b_seen += eb[i];
      }
      r.add_term(e, Scalar(sign) * ca * cb);
    }
  return r;
}

bool Series::operator==(const Series& o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

Series Series::derivative(std::size_t i) const {
  if (i >= coords_.dim()) throw std::invalid_argument("derivative: unknown variable");
  Series r(coords_, truncation_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    std::vector<int> f = e;
    f[i] -= 1;
    if (coords_.parities[i] == 0) {
      r.add_term(f, Scalar(e[i]) * c);
    } else {
      // Move ∂_i past the odd generators that precede ξ_i in the monomial.
      int sign = 1;
      for (std::size_t j = 0; j < i; ++j)
        if (coords_.parities[j] && e[j]) sign = -sign;
      r.add_term(f, Scalar(sign) * c);
    }
  }
  return r;
}

Series Series::dropped_above(int d) const {
  Series r(coords_, truncation_);
  for (const auto& [e, c] : terms_)
    if (even_degree(e) <= d) r.terms_.emplace(e, c);
  return r;
}

Series Series::inverse() const {
  Scalar c0 = constant_term();
  if (c0 == 0)
    throw std::invalid_argument("Series::inverse: constant term is zero");
  // f = c0(1 + u);  f^{-1} = c0^{-1} Σ (-u)^k.  Every monomial of u has
  // total degree >= 1, so the sum stabilizes within the truncation window.
  Series u = *this * (Scalar(1) / c0);
  u.terms_.erase(std::vector<int>(coords_.dim(), 0));
  int steps = truncation_ + static_cast<int>(coords_.odd_dim());
  Series acc = Series::constant(coords_, truncation_, Scalar(1));
  Series pw = Series::constant(coords_, truncation_, Scalar(1));
  for (int k = 1; k <= steps; ++k) {
    pw = pw * u;
    if (pw.is_zero()) break;
    acc += (k % 2) ? -pw : pw;
  }
  return acc * (Scalar(1) / c0);
}

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c << ")";
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << coords_.labels[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Series iterated_derivative(const Series& f,
                          const std::vector<std::size_t>& t) {
  Series r = f;
  for (auto it = t.rbegin(); it != t.rend(); ++it) r = r.derivative(*it);
  return r;
}

}  // namespace lman
