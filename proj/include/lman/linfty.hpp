#ifndef LMAN_LINFTY_HPP
#define LMAN_LINFTY_HPP

#include <map>
#include <string>
#include <vector>

#include "lman/superspace.hpp"

namespace lman {

// One violated constraint of a structure check, with enough indices to
// locate the offending entry.
struct Violation {
  std::string what;
};

struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Curved cyclic L∞ structure on a super space (the ΠV of the potential
// bijection), stored as structure-constant tensors against the fixed basis:
//   ℓ_n(e_{i_1},...,e_{i_n}) = Σ_k B^k_{i_1..i_n} e_k.
// Antisymmetry is enforced by keying on canonically ordered index tuples
// (non-decreasing, strictly increasing at even-parity indices) and expanding
// Koszul signs on access.
class LinftyStructure {
 public:
  LinftyStructure(SuperSpace space, PairingForm pairing, int max_arity);

  const SuperSpace& space() const { return space_; }
  const PairingForm& pairing() const { return pairing_; }
  int max_arity() const { return max_arity_; }
  std::size_t dim() const { return space_.dim(); }

  // Adds a structure constant; the index tuple may be in any order.
  // Returns false (and records a violation retrievable via validate) if the
  // entry is inconsistent with an earlier one or violates parity.
  void set_entry(int arity, const std::vector<std::size_t>& inputs,
                 std::size_t output, const Scalar& coeff);

  // ℓ_n applied to a basis tuple, as a coefficient vector.
  std::vector<Scalar> apply(int arity,
                            const std::vector<std::size_t>& inputs) const;

  // ℓ_n applied to arbitrary vectors (multilinear extension).
  std::vector<Scalar> apply_vectors(
      int arity, const std::vector<std::vector<Scalar>>& inputs) const;

  // Y_{n+1}(x_1..x_{n+1}) = g(ℓ_n(x_1..x_n), x_{n+1}) on a basis tuple.
  Scalar cyclic_value(const std::vector<std::size_t>& tuple) const;

  // Canonical tuples of the given length (iteration order of the tensors).
  std::vector<std::vector<std::size_t>> canonical_tuples(int arity) const;

  const std::map<std::vector<std::size_t>, std::vector<Scalar>>& raw(
      int arity) const {
    return ops_.at(arity);
  }

  bool is_zero() const;

 private:
  SuperSpace space_;
  PairingForm pairing_;
  int max_arity_;
  std::vector<std::map<std::vector<std::size_t>, std::vector<Scalar>>> ops_;
  std::vector<Violation> load_violations_;

  friend Report validate_structure(const LinftyStructure& L);
};

// Antisymmetry/parity/cyclicity checks; Jacobi is not part of this report.
Report validate_structure(const LinftyStructure& L);

// The n-th higher Jacobi map as a structure-constant tensor
// (input tuple -> output vector); zero everywhere iff relation n holds.
std::map<std::vector<std::size_t>, std::vector<Scalar>> jacobi_residual(
    const LinftyStructure& L, int n);

// All Jacobi relations for 0 <= n <= max_arity-1, cross-checked for n <= 3
// against independently hand-expanded identities.
Report check_all_jacobi(const LinftyStructure& L);

// Fully covariant cyclic tensor Y_{arity}.
struct CyclicForm {
  int arity;
  std::map<std::vector<std::size_t>, Scalar> tensor;
};

// Y_1..Y_{N+1}; throws std::invalid_argument if some Y fails the signed
// cyclic invariance of the definition (the input is not cyclic).
std::vector<CyclicForm> cyclic_forms(const LinftyStructure& L);

}  // namespace lman

#endif
