#include "lman/formal.hpp"

#include <algorithm>
#include <stdexcept>

namespace lman {

Series VectorFieldPoly::apply(const Series& f) const {
  Series r(coords, f.truncation());
  for (std::size_t j = 0; j < components.size(); ++j)
    r += components[j] * f.derivative(j);
  return r;
}

std::optional<Parity> VectorFieldPoly::homogeneous_parity() const {
  std::optional<Parity> p;
  for (std::size_t i = 0; i < components.size(); ++i) {
    auto cp = components[i].homogeneous_parity();
    if (!cp) {
      if (!components[i].is_zero()) return std::nullopt;
      continue;
    }
    Parity q = (*cp + coords.parities[i]) & 1;
    if (!p)
      p = q;
    else if (*p != q)
      return std::nullopt;
  }
  return p;
}

VectorFieldPoly field_commutator(const VectorFieldPoly& x,
                                 const VectorFieldPoly& y) {
  auto px = x.homogeneous_parity();
  auto py = y.homogeneous_parity();
  if ((!px && !x.components.empty() &&
       !std::all_of(x.components.begin(), x.components.end(),
                    [](const Series& s) { return s.is_zero(); })) ||
      (!py && !y.components.empty() &&
       !std::all_of(y.components.begin(), y.components.end(),
                    [](const Series& s) { return s.is_zero(); })))
    throw std::invalid_argument("field_commutator: fields must be homogeneous");
  int sgn = (px && py && *px && *py) ? -1 : 1;
  VectorFieldPoly r{x.coords, {}};
  for (std::size_t j = 0; j < x.components.size(); ++j)
    // [X,Y]_j = X(Y_j) - (-1)^{X̄Ȳ} Y(X_j)
    r.components.push_back(x.apply(y.components[j]) -
                           y.apply(x.components[j]) * Scalar(sgn));
  return r;
}

FormalLManifold::FormalLManifold(SuperSpace coords, PairingForm omega,
                                 Series potential)
    : coords_(std::move(coords)),
      omega_(std::move(omega)),
      potential_(std::move(potential)) {
  coords_.validate();
  if (omega_.kind != PairingKind::AntisymmetricEven)
    throw std::invalid_argument("FormalLManifold: omega must be antisymmetric");
  if (omega_.space.parities != coords_.parities ||
      omega_.space.labels != coords_.labels)
    throw std::invalid_argument("FormalLManifold: omega space mismatch");
  omega_.validate();
  if (potential_.coords().labels != coords_.labels ||
      potential_.coords().parities != coords_.parities)
    throw std::invalid_argument("FormalLManifold: potential chart mismatch");
  auto p = potential_.homogeneous_parity();
  if (p && *p != 1)
    throw std::invalid_argument("FormalLManifold: potential must be odd");
  if (!p && !potential_.is_zero())
    throw std::invalid_argument("FormalLManifold: potential must be odd");
  omega_inv_ = omega_.inverse();
}

Series FormalLManifold::poisson_bracket(const Series& f,
                                        const Series& g) const {
  const std::size_t d = coords_.dim();
  Series r(coords_, f.truncation());
  for (std::size_t j = 0; j < d; ++j) {
    Series dg = g.derivative(j);
    if (dg.is_zero()) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (omega_inv_[j][i] == 0) continue;
      r += f.derivative(i) * dg * omega_inv_[j][i];
    }
  }
  return r;
}

VectorFieldPoly FormalLManifold::hamiltonian_field() const {
  const std::size_t d = coords_.dim();
  VectorFieldPoly q{coords_, {}};
  for (std::size_t j = 0; j < d; ++j) {
    Series comp(coords_, truncation());
    for (std::size_t i = 0; i < d; ++i)
      if (omega_inv_[j][i] != 0)
        comp += potential_.derivative(i) * omega_inv_[j][i];
    q.components.push_back(std::move(comp));
  }
  return q;
}

Series FormalLManifold::omega_of_fields(const VectorFieldPoly& x,
                                        const VectorFieldPoly& y) const {
  const std::size_t d = coords_.dim();
  Series r(coords_, truncation());
  for (std::size_t a = 0; a < d; ++a) {
    if (x.components[a].is_zero()) continue;
    for (std::size_t b = 0; b < d; ++b) {
      if (omega_.at(a, b) == 0 || y.components[b].is_zero()) continue;
      // split g by monomial parity to apply the (-1)^{ḡ x̄_a} rule
      Series even(coords_, truncation()), odd(coords_, truncation());
      for (const auto& [e, c] : y.components[b].terms()) {
        int op = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
          if (coords_.parities[i]) op += e[i];
        ((op & 1) ? odd : even).add_term(e, c);
      }
      Series g = even + (coords_.parities[a] ? -odd : odd);
      r += x.components[a] * g * omega_.at(a, b);
    }
  }
  return r;
}

LieReport lie_condition_residual(const FormalLManifold& m) {
  const std::size_t d = m.coords().dim();
  const auto& winv = m.omega_inverse();
  const Series& phi = m.potential();
  LieReport rep(m.poisson_bracket(phi, phi));
  // Φ_{ki}Φ_j carries two derivatives of the degree-D window, so the
  // residual is exact only through degree D-2; ω(Q,Q) through D-1.
  rep.truncation_certified = m.truncation() - 2;
  rep.ok = true;
  std::vector<Series> dphi;
  for (std::size_t i = 0; i < d; ++i) dphi.push_back(phi.derivative(i));
  for (std::size_t k = 0; k < d; ++k) {
    Series res(m.coords(), m.truncation());
    for (std::size_t j = 0; j < d; ++j) {
      if (dphi[j].is_zero()) continue;
      for (std::size_t i = 0; i < d; ++i) {
        if (winv[j][i] == 0) continue;
        Series phi_ki = dphi[i].derivative(k);
        if (phi_ki.is_zero()) continue;
        res += phi_ki * dphi[j] * winv[j][i];
      }
    }
    res = res.dropped_above(rep.truncation_certified);
    if (!res.is_zero()) rep.ok = false;
    rep.residuals.push_back(std::move(res));
  }
  rep.omega_qq = rep.omega_qq.dropped_above(m.truncation() - 1);
  if (rep.ok) rep.constant_value = rep.omega_qq.constant_term();
  return rep;
}

namespace {

// λ(w_1..w_n) = (-1)^{Σ (i-1) w̄_i} with ΠV parities.
int lambda_sign(const std::vector<Parity>& q,
                const std::vector<std::size_t>& tuple) {
  int s = 0;
  for (std::size_t a = 0; a < tuple.size(); ++a)
    if (q[tuple[a]]) s += static_cast<int>(a);
  return (s & 1) ? -1 : 1;
}

}  // namespace

LinftyStructure potential_to_operations(const FormalLManifold& m,
                                        int max_arity) {
  if (m.truncation() < max_arity + 1)
    throw std::invalid_argument("potential_to_operations: truncation too small");
  const std::size_t d = m.coords().dim();
  SuperSpace pv = parity_shift(m.coords());
  PairingForm g{pv, std::vector<std::vector<Scalar>>(
                        d, std::vector<Scalar>(d, Scalar(0))),
                PairingKind::SymmetricEven};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      g.matrix[a][b] = m.coords().parities[b] ? m.omega().at(a, b)
                                              : -m.omega().at(a, b);
  LinftyStructure l(pv, g, max_arity);
  auto ginv = matrix_inverse(g.matrix);
  for (int n = 0; n <= max_arity; ++n) {
    for (const auto& tup : l.canonical_tuples(n)) {
      Series dn = iterated_derivative(m.potential(), tup);
      std::vector<Scalar> rhs(d, Scalar(0));
      bool any = false;
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::size_t> full = tup;
        full.push_back(j);
        Scalar v = dn.derivative(j).constant_term();
        if (v == 0) continue;
        rhs[j] = Scalar(lambda_sign(pv.parities, full)) * v;
        any = true;
      }
      if (!any) continue;
      for (std::size_t k = 0; k < d; ++k) {
        Scalar b(0);
        for (std::size_t j = 0; j < d; ++j)
          if (rhs[j] != 0) b += rhs[j] * ginv[j][k];
        if (b != 0) l.set_entry(n, tup, k, b);
      }
    }
  }
  return l;
}

FormalLManifold operations_to_potential(const LinftyStructure& l,
                                        int truncation) {
  int top = 0;
  for (int n = 0; n <= l.max_arity(); ++n)
    for (const auto& [t, v] : l.raw(n))
      for (const auto& c : v)
        if (c != 0) top = n;
  if (truncation < top + 1)
    throw std::invalid_argument("operations_to_potential: truncation too small");
  const std::size_t d = l.dim();
  SuperSpace coords = parity_shift(l.space());
  PairingForm omega{coords, std::vector<std::vector<Scalar>>(
                                d, std::vector<Scalar>(d, Scalar(0))),
                    PairingKind::AntisymmetricEven};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      omega.matrix[a][b] = coords.parities[b] ? l.pairing().at(a, b)
                                              : -l.pairing().at(a, b);
  Series phi(coords, truncation);
  for (int n = 0; n <= l.max_arity(); ++n) {
    for (const auto& tup : l.canonical_tuples(n)) {
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::size_t> full = tup;
        full.push_back(j);
        // only canonical (sorted) full tuples name distinct monomials
        if (!tup.empty() && j < tup.back()) continue;
        if (!tup.empty() && j == tup.back() && l.space().parities[j] == 0)
          continue;
        Scalar y = l.cyclic_value(full);
        if (y == 0) continue;
        Scalar v = Scalar(lambda_sign(l.space().parities, full)) * y;
        std::vector<int> e(d, 0);
        for (std::size_t i : full) e[i] += 1;
        Series mono(coords, truncation);
        mono.add_term(e, Scalar(1));
        Scalar div = iterated_derivative(mono, full).constant_term();
        if (div == 0)
          throw std::logic_error("operations_to_potential: zero divisor");
        phi.add_term(e, v / div);
      }
    }
  }
  return FormalLManifold(coords, omega, phi);
}

EulerReport euler_check(const FormalLManifold& m, const VectorFieldPoly& e) {
  auto ep = e.homogeneous_parity();
  bool e_zero = std::all_of(e.components.begin(), e.components.end(),
                            [](const Series& s) { return s.is_zero(); });
  if (!e_zero && (!ep || *ep != 0))
    throw std::invalid_argument("euler_check: E must be even");
  const std::size_t d = m.coords().dim();
  const auto& par = m.coords().parities;
  EulerReport rep;

  // Lie_E(ω)_{ab} = Σ_i (∂_a E_i) ω_{ib} + (-1)^{(x̄_i+x̄_b)x̄_a}(∂_b E_i) ω_{ai}
  std::vector<std::vector<Series>> lie(
      d, std::vector<Series>(d, Series(m.coords(), m.truncation())));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t i = 0; i < d; ++i) {
        if (m.omega().at(i, b) != 0)
          lie[a][b] += e.components[i].derivative(a) * m.omega().at(i, b);
        if (m.omega().at(a, i) != 0) {
          int s = (((par[i] + par[b]) & 1) && par[a]) ? -1 : 1;
          lie[a][b] +=
              e.components[i].derivative(b) * (Scalar(s) * m.omega().at(a, i));
        }
      }
  rep.is_conformal = true;
  bool d_found = false;
  for (std::size_t a = 0; a < d && !d_found; ++a)
    for (std::size_t b = 0; b < d && !d_found; ++b)
      if (m.omega().at(a, b) != 0) {
        rep.conformal_weight = lie[a][b].constant_term() / m.omega().at(a, b);
        d_found = true;
      }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Series expect = Series::constant(m.coords(), m.truncation(),
                                       rep.conformal_weight * m.omega().at(a, b));
      if (!(lie[a][b] == expect)) rep.is_conformal = false;
    }

  // [Q,E] = d_Q Q
  VectorFieldPoly q = m.hamiltonian_field();
  VectorFieldPoly k = field_commutator(q, e);
  bool q_zero = std::all_of(q.components.begin(), q.components.end(),
                            [](const Series& s) { return s.is_zero(); });
  if (q_zero) {
    rep.commutes = std::all_of(k.components.begin(), k.components.end(),
                               [](const Series& s) { return s.is_zero(); });
    rep.d_q = 0;
  } else {
    // ratio from the first nonzero component term, then verify everywhere
    Scalar ratio(0);
    bool found = false;
    for (std::size_t j = 0; j < d && !found; ++j)
      if (!q.components[j].is_zero()) {
        const auto& [mono, c] = *q.components[j].terms().begin();
        ratio = k.components[j].coefficient(mono) / c;
        found = true;
      }
    rep.d_q = ratio;
    rep.commutes = true;
    for (std::size_t j = 0; j < d; ++j)
      if (!(k.components[j] == q.components[j] * ratio)) rep.commutes = false;
  }

  // EΦ = (D - d_Q)Φ + const
  if (rep.is_conformal && rep.commutes) {
    Series lhs = e.apply(m.potential());
    Series diff = lhs - m.potential() * (rep.conformal_weight - rep.d_q);
    rep.eigen_const = diff.constant_term();
    rep.eigen_ok =
        diff == Series::constant(m.coords(), m.truncation(), rep.eigen_const);
    rep.isotropy_forced = (rep.conformal_weight - Scalar(2) * rep.d_q) != 0;
  }
  return rep;
}

VectorFieldPoly euler_standard(const FormalLManifold& m) {
  VectorFieldPoly e{m.coords(), {}};
  for (std::size_t i = 0; i < m.coords().dim(); ++i)
    e.components.push_back(
        Series::coordinate(m.coords(), m.truncation(), i));
  return e;
}

FormalLManifold make_flat(const SuperSpace& coords, const PairingForm& omega,
                          const std::vector<Scalar>& a, int truncation) {
  if (a.size() != coords.dim())
    throw std::invalid_argument("make_flat: coefficient count");
  Series phi(coords, truncation);
  for (std::size_t i = 0; i < coords.dim(); ++i) {
    if (a[i] == 0) continue;
    if (coords.parities[i] == 0)
      throw std::invalid_argument("make_flat: coefficient on even coordinate");
    std::vector<int> e(coords.dim(), 0);
    e[i] = 1;
    phi.add_term(e, a[i]);
  }
  return FormalLManifold(coords, omega, phi);
}

FormalLManifold make_lie_superalgebra(
    const SuperSpace& g, const std::vector<std::vector<std::vector<Scalar>>>& c,
    const std::vector<std::vector<Scalar>>& form, int truncation) {
  const std::size_t d = g.dim();
  if (c.size() != d)
    throw std::invalid_argument("make_lie_superalgebra: constants shape");
  PairingForm pf{g, form, PairingKind::SymmetricEven};
  // arity 4 so the Jacobi sweep reaches the classical identity (n = 3)
  LinftyStructure l(g, pf, 4);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (c[i][j][k] != 0) l.set_entry(2, {i, j}, k, c[i][j][k]);
  auto rep = validate_structure(l);
  if (!rep.ok())
    throw std::invalid_argument("make_lie_superalgebra: " +
                                rep.violations.front().what);
  auto jac = check_all_jacobi(l);
  if (!jac.ok())
    throw std::invalid_argument("make_lie_superalgebra: " +
                                jac.violations.front().what);
  return operations_to_potential(l, truncation);
}

namespace {

Parity gl_vbar(int m, int idx1) { return idx1 <= m ? 0 : 1; }

}  // namespace

FormalLManifold make_gl(int m, int n, int truncation) {
  const int t = m + n;
  SuperSpace g;
  for (int i = 1; i <= t; ++i)
    for (int j = 1; j <= t; ++j) {
      g.labels.push_back("x" + std::to_string(i) + std::to_string(j));
      g.parities.push_back((gl_vbar(m, i) + gl_vbar(m, j)) & 1);
    }
  auto idx = [t](int i, int j) {
    return static_cast<std::size_t>((i - 1) * t + (j - 1));
  };
  const std::size_t d = g.dim();
  std::vector<std::vector<std::vector<Scalar>>> c(
      d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(0))));
  for (int i = 1; i <= t; ++i)
    for (int j = 1; j <= t; ++j)
      for (int k = 1; k <= t; ++k)
        for (int l = 1; l <= t; ++l) {
          // [e_ij, e_kl] = δ_jk e_il - (-1)^{|e_ij||e_kl|} δ_li e_kj
          if (j == k) c[idx(i, j)][idx(k, l)][idx(i, l)] += 1;
          if (l == i) {
            int s = (g.parities[idx(i, j)] && g.parities[idx(k, l)]) ? 1 : -1;
            c[idx(i, j)][idx(k, l)][idx(k, j)] += Scalar(s);
          }
        }
  std::vector<std::vector<Scalar>> form(d, std::vector<Scalar>(d, Scalar(0)));
  for (int i = 1; i <= t; ++i)
    for (int j = 1; j <= t; ++j)
      form[idx(i, j)][idx(j, i)] = gl_vbar(m, i) ? -1 : 1;
  return make_lie_superalgebra(g, c, form, truncation);
}

Series gl_explicit_potential(int m, int n, int truncation) {
  const int t = m + n;
  SuperSpace coords;
  for (int i = 1; i <= t; ++i)
    for (int j = 1; j <= t; ++j) {
      coords.labels.push_back("x" + std::to_string(i) + std::to_string(j));
      coords.parities.push_back((gl_vbar(m, i) + gl_vbar(m, j) + 1) & 1);
    }
  auto idx = [t](int i, int j) {
    return static_cast<std::size_t>((i - 1) * t + (j - 1));
  };
  Series phi(coords, truncation);
  std::vector<std::vector<int>> seen;
  for (int i = 1; i <= t; ++i)
    for (int j = 1; j <= t; ++j)
      for (int k = 1; k <= t; ++k) {
        // triples up to cyclic shift: keep the lexicographically least rotation
        std::vector<std::vector<int>> rots = {
            {i, j, k}, {j, k, i}, {k, i, j}};
        if (*std::min_element(rots.begin(), rots.end()) !=
            std::vector<int>{i, j, k})
          continue;
        // coordinates are taken dual to the supertrace pairing: the
        // coordinate written x_{ab} picks out the e_{ba} component, so the
        // product x_{ik} x_{kj} x_{ji} reads idx(k,i)·idx(j,k)·idx(i,j)
        int s = (gl_vbar(m, i) + gl_vbar(m, j) + gl_vbar(m, k)) & 1;
        Series term = Series::coordinate(coords, truncation, idx(k, i)) *
                      Series::coordinate(coords, truncation, idx(j, k)) *
                      Series::coordinate(coords, truncation, idx(i, j));
        phi += term * Scalar(s ? -1 : 1);
      }
  return phi;
}

SuperSpace n2_chart(int n_even, int n_odd) {
  SuperSpace s;
  for (int i = 1; i <= n_even; ++i) {
    s.labels.push_back("x" + std::to_string(i));
    s.parities.push_back(0);
  }
  for (int i = 1; i <= n_odd; ++i) {
    s.labels.push_back("xi" + std::to_string(i));
    s.parities.push_back(1);
  }
  return s;
}

namespace {

PairingForm standard_omega(const SuperSpace& coords, bool hyperbolic_odd) {
  const std::size_t d = coords.dim();
  std::size_t ne = coords.even_dim(), no = coords.odd_dim();
  if (ne % 2)
    throw std::invalid_argument("standard omega: odd number of even coordinates");
  PairingForm omega{coords,
                    std::vector<std::vector<Scalar>>(
                        d, std::vector<Scalar>(d, Scalar(0))),
                    PairingKind::AntisymmetricEven};
  for (std::size_t a = 0; a + 1 < ne; a += 2) {
    omega.matrix[a][a + 1] = 1;
    omega.matrix[a + 1][a] = -1;
  }
  if (hyperbolic_odd) {
    if (no != 2) throw std::invalid_argument("standard omega: need 2 odd");
    omega.matrix[ne][ne + 1] = 1;
    omega.matrix[ne + 1][ne] = 1;
  } else {
    if (no != 1) throw std::invalid_argument("standard omega: need 1 odd");
    omega.matrix[ne][ne] = 1;
  }
  return omega;
}

}  // namespace

FormalLManifold make_dim_n2(const Series& phi_even_part, const Scalar& c_const,
                            int truncation) {
  const SuperSpace& coords = phi_even_part.coords();
  if (coords.odd_dim() != 2)
    throw std::invalid_argument("make_dim_n2: chart must have 2 odd coords");
  auto p = phi_even_part.homogeneous_parity();
  if (p && *p != 0)
    throw std::invalid_argument("make_dim_n2: phi must be even");
  std::size_t ne = coords.even_dim();
  Series xi1 = Series::coordinate(coords, truncation, ne);
  Series xi2 = Series::coordinate(coords, truncation, ne + 1);
  Series phi = phi_even_part * xi1;
  if (c_const != 0) phi += phi_even_part.inverse() * xi2 * c_const;
  return FormalLManifold(coords, standard_omega(coords, true), phi);
}

FormalLManifold make_dim_n1(const Series& phi_even_part, int truncation) {
  const SuperSpace& coords = phi_even_part.coords();
  if (coords.odd_dim() != 1)
    throw std::invalid_argument("make_dim_n1: chart must have 1 odd coord");
  std::size_t ne = coords.even_dim();
  Series xi = Series::coordinate(coords, truncation, ne);
  return FormalLManifold(coords, standard_omega(coords, false),
                         phi_even_part * xi);
}

}  // namespace lman
