#ifndef LMAN_SERIES_HPP
#define LMAN_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lman/superspace.hpp"

namespace lman {

// Element of k[x_1..x_m] ⊗ Λ[ξ_1..ξ_n], truncated: monomials whose degree in
// the even variables exceeds `truncation` are dropped.  Coordinates are the
// basis of a SuperSpace; odd coordinates square to zero.  Monomial keys are
// exponent vectors with the variables in index order.
class Series {
 public:
  Series(SuperSpace coords, int truncation);

  static Series constant(const SuperSpace& coords, int truncation,
                         const Scalar& c);
  static Series coordinate(const SuperSpace& coords, int truncation,
                           std::size_t i);

  const SuperSpace& coords() const { return coords_; }
  int truncation() const { return truncation_; }
  const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

  // Adds c·x^e with e in canonical variable order (no reordering sign).
  void add_term(const std::vector<int>& exponents, const Scalar& c);
  Scalar coefficient(const std::vector<int>& exponents) const;
  Scalar constant_term() const;

  bool is_zero() const { return terms_.empty(); }
  // 0 or 1 if every monomial has that parity; nullopt for mixed or zero.
  std::optional<Parity> homogeneous_parity() const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series operator*(const Scalar& c) const;
  Series& operator+=(const Series& o);
  bool operator==(const Series& o) const;

  // Left super-derivation ∂_i.
  Series derivative(std::size_t i) const;

  // Same truncation window, but terms of even-degree > d removed.
  Series dropped_above(int d) const;

  // Multiplicative inverse as a geometric series; requires an invertible
  // constant term.
  Series inverse() const;

  std::string to_string() const;

 private:
  SuperSpace coords_;
  int truncation_;
  std::map<std::vector<int>, Scalar> terms_;

  void check_compatible(const Series& o) const;
  int even_degree(const std::vector<int>& e) const;
};

// ∂_{t_1}(∂_{t_2}(…∂_{t_k} f)).  Shared by both directions of the potential
// bijection so the order convention cancels out.
Series iterated_derivative(const Series& f, const std::vector<std::size_t>& t);

}  // namespace lman

#endif
