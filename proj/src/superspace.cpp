#include "lman/superspace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lman {

std::size_t SuperSpace::even_dim() const {
  return std::count(parities.begin(), parities.end(), 0);
}

std::size_t SuperSpace::odd_dim() const {
  return std::count(parities.begin(), parities.end(), 1);
}

void SuperSpace::validate() const {
  if (labels.size() != parities.size())
    throw std::invalid_argument("SuperSpace: labels/parities size mismatch");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("SuperSpace: duplicate basis labels");
  for (Parity p : parities)
    if (p != 0 && p != 1)
      throw std::invalid_argument("SuperSpace: parity must be 0 or 1");
}

SuperSpace parity_shift(const SuperSpace& s) {
  SuperSpace t = s;
  for (Parity& p : t.parities) p ^= 1;
  return t;
}

int koszul_sign(const std::vector<Parity>& parities,
                const std::vector<std::size_t>& perm, bool antisymmetric) {
  const std::size_t n = perm.size();
  if (parities.size() != n)
    throw std::invalid_argument("koszul_sign: length mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t v : perm) {
    if (v >= n || seen[v])
      throw std::invalid_argument("koszul_sign: not a permutation");
    seen[v] = true;
  }
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) {
        if (parities[perm[i]] && parities[perm[j]]) sign = -sign;
        if (antisymmetric) sign = -sign;
      }
  return sign;
}

int shuffle_sign(const std::vector<Parity>& parities,
                 const std::vector<std::size_t>& s1,
                 const std::vector<std::size_t>& s2, bool antisymmetric) {
  std::vector<std::size_t> perm(s1.begin(), s1.end());
  perm.insert(perm.end(), s2.begin(), s2.end());
  std::vector<std::size_t> a = perm;
  std::sort(a.begin(), a.begin() + s1.size());
  std::sort(a.begin() + s1.size(), a.end());
  return koszul_sign(parities, a, antisymmetric);
}

void PairingForm::validate() const {
  space.validate();
  const std::size_t n = space.dim();
  if (matrix.size() != n)
    throw std::invalid_argument("PairingForm: matrix row count != dim");
  for (const auto& row : matrix)
    if (row.size() != n)
      throw std::invalid_argument("PairingForm: matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] == 0) continue;
      if (space.parities[i] != space.parities[j])
        throw std::invalid_argument(
            "PairingForm: entry (" + std::to_string(i) + "," +
            std::to_string(j) + ") violates evenness");
      int pp = space.parities[i] & space.parities[j];
      Scalar expected = kind == PairingKind::SymmetricEven
                            ? (pp ? -matrix[j][i] : matrix[j][i])
                            : (pp ? matrix[j][i] : -matrix[j][i]);
      if (matrix[i][j] != expected)
        throw std::invalid_argument(
            "PairingForm: entry (" + std::to_string(i) + "," +
            std::to_string(j) + ") violates the symmetry law");
    }
  inverse();  // throws if degenerate
}

std::vector<std::vector<Scalar>> matrix_inverse(
    const std::vector<std::vector<Scalar>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Scalar>> a = m;
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse: not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("matrix is degenerate");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar pv = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= pv;
      inv[col][j] /= pv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Scalar f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<std::vector<Scalar>> PairingForm::inverse() const {
  return matrix_inverse(matrix);
}

Casimir casimir_of(const PairingForm& form) {
  // Δ^{ik} g_{kj} = δ^i_j and g_{ik} Δ^{kj} = δ_i^j: the two-sided matrix
  // inverse, read as an element of V⊗V.
  return Casimir{form, form.inverse()};
}

}  // namespace lman
