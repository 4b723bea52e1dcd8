#include "lman/linfty.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lman {

namespace {

std::string tuple_str(const std::vector<std::size_t>& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace

std::string Report::to_string() const {
  std::ostringstream os;
  for (const auto& n : notes) os << "note: " << n << "\n";
  if (violations.empty()) {
    os << "ok\n";
  } else {
    for (const auto& v : violations) os << "violation: " << v.what << "\n";
  }
  return os.str();
}

LinftyStructure::LinftyStructure(SuperSpace space, PairingForm pairing,
                                 int max_arity)
    : space_(std::move(space)),
      pairing_(std::move(pairing)),
      max_arity_(max_arity),
      ops_(max_arity + 1) {
  space_.validate();
  pairing_.validate();
  if (pairing_.kind != PairingKind::SymmetricEven)
    throw std::invalid_argument("LinftyStructure: pairing must be symmetric");
  if (pairing_.space.parities != space_.parities)
    throw std::invalid_argument("LinftyStructure: pairing space mismatch");
  if (max_arity < 0)
    throw std::invalid_argument("LinftyStructure: negative max arity");
}

// Sorts an index tuple, accumulating the antisymmetric Koszul sign.
// Returns 0 if the tuple repeats an even-parity index (forced zero slot).
static int canonical_tuple(const SuperSpace& space,
                           std::vector<std::size_t>& t) {
  int sign = 1;
  // Insertion sort; each adjacent swap contributes (-1)^{1 + p_a p_b}.
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      sign = -sign;
      if (space.parities[t[j - 1]] && space.parities[t[j]]) sign = -sign;
      std::swap(t[j - 1], t[j]);
    }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1] && space.parities[t[i]] == 0) return 0;
  return sign;
}

void LinftyStructure::set_entry(int arity,
                                const std::vector<std::size_t>& inputs,
                                std::size_t output, const Scalar& coeff) {
  if (arity < 0 || arity > max_arity_)
    throw std::out_of_range("set_entry: arity out of range");
  if (inputs.size() != static_cast<std::size_t>(arity))
    throw std::invalid_argument("set_entry: tuple length != arity");
  for (std::size_t i : inputs)
    if (i >= dim()) throw std::out_of_range("set_entry: index out of range");
  if (output >= dim()) throw std::out_of_range("set_entry: output index");

  std::vector<std::size_t> key = inputs;
  int sign = canonical_tuple(space_, key);
  if (sign == 0) {
    if (coeff != 0)
      load_violations_.push_back(
          {"entry l_" + std::to_string(arity) + tuple_str(inputs) +
           " -> e_" + std::to_string(output) +
           " repeats an even-parity input (antisymmetry forces zero)"});
    return;
  }
  // Parity constraint: B^k vanishes unless p_k = arity + sum of input
  // parities mod 2.
  int p = arity;
  for (std::size_t i : inputs) p += space_.parities[i];
  if (coeff != 0 && space_.parities[output] != (p & 1)) {
    load_violations_.push_back(
        {"entry l_" + std::to_string(arity) + tuple_str(inputs) + " -> e_" +
         std::to_string(output) + " violates the parity constraint"});
    return;
  }

  auto& slot = ops_[arity][key];
  if (slot.empty()) slot.assign(dim(), Scalar(0));
  Scalar v = Scalar(sign) * coeff;
  if (slot[output] != 0 && slot[output] != v) {
    load_violations_.push_back(
        {"entry l_" + std::to_string(arity) + tuple_str(inputs) + " -> e_" +
         std::to_string(output) +
         " conflicts with an earlier entry under antisymmetry"});
    return;
  }
  slot[output] = v;
}

std::vector<Scalar> LinftyStructure::apply(
    int arity, const std::vector<std::size_t>& inputs) const {
  std::vector<Scalar> out(dim(), Scalar(0));
  if (arity < 0 || arity > max_arity_) return out;  // truncation: zero
  std::vector<std::size_t> key = inputs;
  int sign = canonical_tuple(space_, key);
  if (sign == 0) return out;
  auto it = ops_[arity].find(key);
  if (it == ops_[arity].end()) return out;
  for (std::size_t k = 0; k < dim(); ++k)
    if (it->second[k] != 0) out[k] = Scalar(sign) * it->second[k];
  return out;
}

std::vector<Scalar> LinftyStructure::apply_vectors(
    int arity, const std::vector<std::vector<Scalar>>& inputs) const {
  std::vector<Scalar> out(dim(), Scalar(0));
  std::vector<std::size_t> idx(inputs.size(), 0);
  // Iterate over all basis tuples weighted by the input coefficients.
  for (;;) {
    Scalar w(1);
    for (std::size_t a = 0; a < inputs.size(); ++a) {
      w *= inputs[a][idx[a]];
      if (w == 0) break;
    }
    if (w != 0) {
      auto v = apply(arity, idx);
      for (std::size_t k = 0; k < dim(); ++k)
        if (v[k] != 0) out[k] += w * v[k];
    }
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == dim()) idx[a++] = 0;
    if (a == idx.size()) break;
    if (idx.empty()) break;
  }
  return out;
}

Scalar LinftyStructure::cyclic_value(
    const std::vector<std::size_t>& tuple) const {
  if (tuple.empty()) throw std::invalid_argument("cyclic_value: empty tuple");
  std::vector<std::size_t> head(tuple.begin(), tuple.end() - 1);
  auto v = apply(static_cast<int>(head.size()), head);
  Scalar out(0);
  for (std::size_t k = 0; k < dim(); ++k)
    if (v[k] != 0) out += v[k] * pairing_.at(k, tuple.back());
  return out;
}

std::vector<std::vector<std::size_t>> LinftyStructure::canonical_tuples(
    int arity) const {
  std::vector<std::vector<std::size_t>> result;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == static_cast<std::size_t>(arity)) {
      result.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < dim(); ++i) {
      if (!cur.empty() && cur.back() == i && space_.parities[i] == 0)
        continue;  // even-parity repeats vanish
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return result;
}

bool LinftyStructure::is_zero() const {
  for (const auto& m : ops_)
    for (const auto& [k, v] : m)
      for (const auto& c : v)
        if (c != 0) return false;
  return true;
}

Report validate_structure(const LinftyStructure& L) {
  Report r;
  r.violations = L.load_violations_;
  // Cyclicity of every Y_{n+1} against the pairing.
  const std::size_t d = L.dim();
  const auto& par = L.space().parities;
  for (int n = 0; n <= L.max_arity(); ++n) {
    const int m = n + 1;  // arity of Y
    std::vector<std::size_t> t(m, 0);
    for (;;) {
      Scalar lhs = L.cyclic_value(t);
      std::vector<std::size_t> rot(t.begin() + 1, t.end());
      rot.push_back(t[0]);
      int s = (n % 2) ? -1 : 1;
      int tail = 0;
      for (int a = 1; a < m; ++a) tail += par[t[a]];
      if (par[t[0]] && (tail & 1)) s = -s;
      Scalar rhs = Scalar(s) * L.cyclic_value(rot);
      if (lhs != rhs) {
        r.violations.push_back({"Y_" + std::to_string(m) +
                                " fails cyclic invariance at " + tuple_str(t)});
        break;  // one witness per arity keeps the report readable
      }
      std::size_t a = 0;
      while (a < t.size() && ++t[a] == d) t[a++] = 0;
      if (a == t.size()) break;
    }
  }
  return r;
}

std::map<std::vector<std::size_t>, std::vector<Scalar>> jacobi_residual(
    const LinftyStructure& L, int n) {
  if (n < 0 || n > L.max_arity() - 1)
    throw std::out_of_range("jacobi_residual: relation arity out of range");
  const std::size_t d = L.dim();
  std::map<std::vector<std::size_t>, std::vector<Scalar>> out;
  std::vector<std::size_t> t(n, 0);
  for (;;) {
    std::vector<Parity> par(n);
    for (int a = 0; a < n; ++a) par[a] = L.space().parities[t[a]];
    std::vector<Scalar> acc(d, Scalar(0));
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> s1, s2;
      for (int a = 0; a < n; ++a)
        ((mask >> a) & 1 ? s1 : s2).push_back(a);
      int sgn = ((s1.size() * s2.size()) % 2) ? -1 : 1;
      sgn *= shuffle_sign(par, s1, s2, /*antisymmetric=*/true);
      std::vector<std::size_t> in1;
      for (std::size_t a : s1) in1.push_back(t[a]);
      auto inner = L.apply(static_cast<int>(s1.size()), in1);
      for (std::size_t k = 0; k < d; ++k) {
        if (inner[k] == 0) continue;
        std::vector<std::size_t> in2{k};
        for (std::size_t a : s2) in2.push_back(t[a]);
        auto outer = L.apply(static_cast<int>(s2.size()) + 1, in2);
        for (std::size_t j = 0; j < d; ++j)
          if (outer[j] != 0) acc[j] += Scalar(sgn) * inner[k] * outer[j];
      }
    }
    out[t] = std::move(acc);
    std::size_t a = 0;
    while (a < t.size() && ++t[a] == d) t[a++] = 0;
    if (a == t.size()) break;
    if (t.empty()) break;
  }
  return out;
}

namespace {

// Hand-expanded identities for n <= 3, written independently of the
// partition-sum machinery above.
void cross_check_small(const LinftyStructure& L, Report& r) {
  const std::size_t d = L.dim();
  const auto& par = L.space().parities;
  auto add_scaled = [&](std::vector<Scalar>& acc, int s,
                        const std::vector<Scalar>& v) {
    for (std::size_t k = 0; k < d; ++k) acc[k] += Scalar(s) * v[k];
  };
  auto c = L.apply(0, {});
  // (a) d(c) = 0
  {
    auto v = L.apply_vectors(1, {c});
    for (std::size_t k = 0; k < d; ++k)
      if (v[k] != 0) {
        r.violations.push_back({"cross-check (a): d(c) != 0"});
        break;
      }
  }
  // (b) d^2(x) + [c, x] = 0
  for (std::size_t x = 0; x < d; ++x) {
    std::vector<Scalar> ex(d, Scalar(0));
    ex[x] = 1;
    auto acc = L.apply_vectors(1, {L.apply(1, {x})});
    add_scaled(acc, 1, L.apply_vectors(2, {c, ex}));
    for (std::size_t k = 0; k < d; ++k)
      if (acc[k] != 0) {
        r.violations.push_back(
            {"cross-check (b) fails at x = e_" + std::to_string(x)});
        break;
      }
  }
  // (c) d[x,y] - [dx,y] - (-1)^{x}[x,dy] + l_3(c,x,y) = 0
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      std::vector<Scalar> ex(d, Scalar(0)), ey(d, Scalar(0));
      ex[x] = 1;
      ey[y] = 1;
      auto acc = L.apply_vectors(1, {L.apply(2, {x, y})});
      add_scaled(acc, -1, L.apply_vectors(2, {L.apply(1, {x}), ey}));
      add_scaled(acc, par[x] ? 1 : -1,
                 L.apply_vectors(2, {ex, L.apply(1, {y})}));
      add_scaled(acc, 1, L.apply_vectors(3, {c, ex, ey}));
      for (std::size_t k = 0; k < d; ++k)
        if (acc[k] != 0) {
          r.violations.push_back({"cross-check (c) fails at (e_" +
                                  std::to_string(x) + ",e_" +
                                  std::to_string(y) + ")"});
          break;
        }
    }
  // (d) the n = 3 identity
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        std::vector<Scalar> ex(d, Scalar(0)), ey(d, Scalar(0)),
            ez(d, Scalar(0));
        ex[x] = 1;
        ey[y] = 1;
        ez[z] = 1;
        auto acc = L.apply_vectors(1, {L.apply(3, {x, y, z})});
        add_scaled(acc, 1, L.apply_vectors(2, {L.apply(2, {x, y}), ez}));
        add_scaled(acc, (par[y] && par[z]) ? 1 : -1,
                   L.apply_vectors(2, {L.apply(2, {x, z}), ey}));
        add_scaled(acc, (par[x] && ((par[y] + par[z]) & 1)) ? -1 : 1,
                   L.apply_vectors(2, {L.apply(2, {y, z}), ex}));
        add_scaled(acc, 1, L.apply_vectors(3, {L.apply(1, {x}), ey, ez}));
        add_scaled(acc, par[x] ? -1 : 1,
                   L.apply_vectors(3, {ex, L.apply(1, {y}), ez}));
        add_scaled(acc, ((par[x] + par[y]) & 1) ? -1 : 1,
                   L.apply_vectors(3, {ex, ey, L.apply(1, {z})}));
        add_scaled(acc, 1, L.apply_vectors(4, {c, ex, ey, ez}));
        for (std::size_t k = 0; k < d; ++k)
          if (acc[k] != 0) {
            r.violations.push_back({"cross-check (d) fails at (e_" +
                                    std::to_string(x) + ",e_" +
                                    std::to_string(y) + ",e_" +
                                    std::to_string(z) + ")"});
            break;
          }
      }
}

}  // namespace

Report check_all_jacobi(const LinftyStructure& L) {
  Report r;
  r.notes.push_back("Jacobi certified for relation arities 0.." +
                    std::to_string(L.max_arity() - 1) +
                    " (operations truncated at arity " +
                    std::to_string(L.max_arity()) + ")");
  for (int n = 0; n + 1 <= L.max_arity(); ++n) {
    auto res = jacobi_residual(L, n);
    for (const auto& [t, v] : res) {
      bool bad = false;
      for (const auto& c : v)
        if (c != 0) bad = true;
      if (bad) {
        r.violations.push_back(
            {"Jacobi relation n=" + std::to_string(n) + " fails at inputs " +
             tuple_str(t)});
        break;
      }
    }
  }
  cross_check_small(L, r);
  return r;
}

std::vector<CyclicForm> cyclic_forms(const LinftyStructure& L) {
  auto rep = validate_structure(L);
  for (const auto& v : rep.violations)
    if (v.what.find("cyclic invariance") != std::string::npos)
      throw std::invalid_argument("cyclic_forms: " + v.what);
  std::vector<CyclicForm> forms;
  const std::size_t d = L.dim();
  for (int n = 0; n <= L.max_arity(); ++n) {
    CyclicForm f;
    f.arity = n + 1;
    std::vector<std::size_t> t(n + 1, 0);
    for (;;) {
      Scalar v = L.cyclic_value(t);
      if (v != 0) f.tensor[t] = v;
      std::size_t a = 0;
      while (a < t.size() && ++t[a] == d) t[a++] = 0;
      if (a == t.size()) break;
    }
    forms.push_back(std::move(f));
  }
  return forms;
}

}  // namespace lman
