#ifndef LMAN_SUPERSPACE_HPP
#define LMAN_SUPERSPACE_HPP

#include <string>
#include <vector>

#include "lman/scalar.hpp"

namespace lman {

using Parity = int;  // 0 = even, 1 = odd

// Finite dimensional Z/2-graded vector space with a fixed ordered basis.
struct SuperSpace {
  std::vector<std::string> labels;
  std::vector<Parity> parities;

  std::size_t dim() const { return labels.size(); }
  std::size_t even_dim() const;
  std::size_t odd_dim() const;
  void validate() const;  // throws on duplicate labels / size mismatch
};

// Same labels, flipped parities. Involutive.
SuperSpace parity_shift(const SuperSpace& s);

// Sign of applying `perm` to a sequence of graded elements: the product of
// (-1)^{p_i p_j} over inversions, with an extra (-1) per inversion when
// `antisymmetric` is set.  perm[i] = original position of the element now at
// slot i.  Multiplicative under composition.
int koszul_sign(const std::vector<Parity>& parities,
                const std::vector<std::size_t>& perm, bool antisymmetric);

// Sign of the shuffle arranging s1 (ascending) then s2 (ascending), where
// s1 ⊔ s2 = {0..n-1}.
int shuffle_sign(const std::vector<Parity>& parities,
                 const std::vector<std::size_t>& s1,
                 const std::vector<std::size_t>& s2, bool antisymmetric);

enum class PairingKind { SymmetricEven, AntisymmetricEven };

// Even non-degenerate bilinear form with constant coefficients.
// SymmetricEven is the g of the L∞ side, AntisymmetricEven the symplectic ω:
//   ω_{ij} = -(-1)^{p_i p_j} ω_{ji},   g_{ij} = (-1)^{p_i p_j} g_{ji},
// and both vanish unless p_i = p_j (purely even ground ring).
struct PairingForm {
  SuperSpace space;
  std::vector<std::vector<Scalar>> matrix;
  PairingKind kind = PairingKind::SymmetricEven;

  const Scalar& at(std::size_t i, std::size_t j) const { return matrix[i][j]; }
  // Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
  std::vector<std::vector<Scalar>> inverse() const;  // throws if degenerate
};

// Casimir element Δ ∈ V⊗V of a non-degenerate form: contracting either slot
// of Δ against the form gives the identity.
struct Casimir {
  PairingForm form;
  std::vector<std::vector<Scalar>> tensor;
};

Casimir casimir_of(const PairingForm& form);

std::vector<std::vector<Scalar>> matrix_inverse(
    const std::vector<std::vector<Scalar>>& m);

}  // namespace lman

#endif
