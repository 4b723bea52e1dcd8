#ifndef LMAN_FORMAL_HPP
#define LMAN_FORMAL_HPP

#include <vector>

#include "lman/linfty.hpp"
#include "lman/series.hpp"

namespace lman {

// Polynomial vector field Σ f_i ∂_i on a flat coordinate chart.
struct VectorFieldPoly {
  SuperSpace coords;
  std::vector<Series> components;

  Series apply(const Series& f) const;
  // 0/1 if every component f_i has parity p + parity(x_i); nullopt otherwise.
  std::optional<Parity> homogeneous_parity() const;
};

// Super-commutator [X,Y] = XY - (-1)^{X̄Ȳ} YX of polynomial fields.
VectorFieldPoly field_commutator(const VectorFieldPoly& x,
                                 const VectorFieldPoly& y);

// Formal manifold with flat symplectic structure and an odd potential.
// The constructor enforces: ω antisymmetric-even invertible over the
// coordinate space, Φ odd with zero constant term.  On a purely even chart
// this forces Φ = 0.
class FormalLManifold {
 public:
  FormalLManifold(SuperSpace coords, PairingForm omega, Series potential);

  const SuperSpace& coords() const { return coords_; }
  const PairingForm& omega() const { return omega_; }
  const Series& potential() const { return potential_; }
  int truncation() const { return potential_.truncation(); }
  // ω^{ji}: Σ_j ω_{kj} ω^{ji} = δ_k^i.
  const std::vector<std::vector<Scalar>>& omega_inverse() const {
    return omega_inv_;
  }

  // {f,g} = Σ_{ij} ω^{ji} (∂_i f)(∂_j g).
  Series poisson_bracket(const Series& f, const Series& g) const;

  // Q = Σ_j (Σ_i ω^{ji} ∂_iΦ) ∂_j; satisfies Qf = {Φ,f}.
  VectorFieldPoly hamiltonian_field() const;

  // ω(X,Y) for polynomial fields, with ω(f∂_a, g∂_b) = (-1)^{ḡ x̄_a} f g ω_{ab}
  // on homogeneous coefficients.
  Series omega_of_fields(const VectorFieldPoly& x,
                         const VectorFieldPoly& y) const;

 private:
  SuperSpace coords_;
  PairingForm omega_;
  Series potential_;
  std::vector<std::vector<Scalar>> omega_inv_;
};

struct LieReport {
  explicit LieReport(Series wqq) : omega_qq(std::move(wqq)) {}
  std::vector<Series> residuals;  // Σ ω^{ji} Φ_{ki} Φ_j, one per coordinate k
  Series omega_qq;                // ω(Q,Q) = {Φ,Φ}
  bool ok = false;                // all residuals vanish
  Scalar constant_value{0};       // constant value of ω(Q,Q) when ok
  int truncation_certified = 0;
};

LieReport lie_condition_residual(const FormalLManifold& m);

// Prop. 1.6 bijection.  Requires truncation >= N+1.
LinftyStructure potential_to_operations(const FormalLManifold& m, int max_arity);
// Inverse direction; requires truncation >= max_arity+1.
FormalLManifold operations_to_potential(const LinftyStructure& l, int truncation);

struct EulerReport {
  bool is_conformal = false;   // Lie_E(ω) = D·ω for a constant D
  Scalar conformal_weight{0};  // D
  bool commutes = false;       // [Q,E] = d_Q·Q for a constant d_Q
  Scalar d_q{0};
  bool eigen_ok = false;  // EΦ = (D - d_Q)Φ + const
  Scalar eigen_const{0};
  bool isotropy_forced = false;  // D - 2 d_Q != 0, so ω(Q,Q) must vanish
};

EulerReport euler_check(const FormalLManifold& m, const VectorFieldPoly& e);

// Standard Euler field Σ x_i ∂_i.
VectorFieldPoly euler_standard(const FormalLManifold& m);

// §2 example families -------------------------------------------------------

// Φ = Σ a_i x_i; a_i must vanish on even coordinates (Φ is odd).
FormalLManifold make_flat(const SuperSpace& coords, const PairingForm& omega,
                          const std::vector<Scalar>& a, int truncation);

// Cyclic L∞ structure of a Lie superalgebra: ℓ_2 = bracket (structure
// constants c[i][j] = vector of coefficients of [e_i,e_j]), pairing = the
// invariant form.  Validates invariance and Jacobi, then passes through the
// potential bijection.
FormalLManifold make_lie_superalgebra(
    const SuperSpace& g, const std::vector<std::vector<std::vector<Scalar>>>& c,
    const std::vector<std::vector<Scalar>>& form, int truncation);

// gl(m|n) with the supertrace form (e_ij, e_ji) = (-1)^{v̄_i}.
FormalLManifold make_gl(int m, int n, int truncation);

// The explicit cubic potential of gl(m|n):
//   Φ = Σ_{(i,j,k) up to cyclic} (-1)^{v̄_i+v̄_j+v̄_k} x_{ik} x_{kj} x_{ji},
// on the same chart make_gl uses.  Independent of the bijection machinery.
Series gl_explicit_potential(int m, int n, int truncation);

// Dimension (n,2): Φ = φ ξ_1 + C φ^{-1} ξ_2 over n even coordinates (n even,
// standard symplectic pairs) and a hyperbolic odd plane ω(ξ_1,ξ_2) = 1.
// C != 0 requires φ to have an invertible constant term.
FormalLManifold make_dim_n2(const Series& phi_even_part, const Scalar& c_const,
                            int truncation);

// Chart for make_dim_n2 / (n,1) experiments: n even coordinates x_1..x_n and
// n_odd odd ones ξ_1..ξ_{n_odd}.
SuperSpace n2_chart(int n_even, int n_odd);

// Dimension (n,1): Φ = φ ξ with the degenerate-free ω = even pairs ⊕ (ξ,ξ)=1.
FormalLManifold make_dim_n1(const Series& phi_even_part, int truncation);

}  // namespace lman

#endif
