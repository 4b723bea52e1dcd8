#ifndef LMAN_DOCS_HPP
#define LMAN_DOCS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lman/formal.hpp"
#include "lman/linfty.hpp"

namespace lman {

// Thrown with a path-like location ("operations.2[3]") for every malformed
// document, so callers can report exactly what is wrong.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON document describing a curved cyclic L∞ structure by its structure
// constants.  Rationals travel as "p/q" strings; "format": 1.
struct AlgebraDocument {
  std::string name;
  SuperSpace space;
  std::vector<std::vector<Scalar>> pairing;
  int max_arity = 0;
  struct Entry {
    int arity;
    std::vector<std::size_t> inputs;
    std::size_t output;
    Scalar coeff;
  };
  std::vector<Entry> entries;
};

// JSON document describing a formal L-manifold chart: coordinates, symplectic
// matrix, and the potential as a monomial → coefficient list.
struct PotentialDocument {
  std::string name;
  SuperSpace coords;
  std::vector<std::vector<Scalar>> omega;
  int truncation = 0;
  std::vector<std::pair<std::vector<int>, Scalar>> terms;
};

enum class DocKind { Algebra, Potential };

DocKind document_kind(const std::string& text);
AlgebraDocument parse_algebra(const std::string& text);
PotentialDocument parse_potential(const std::string& text);

// Canonical serialization: sorted keys, fixed indentation, entries in
// canonical order.  parse ∘ serialize is the identity on documents.
std::string serialize(const AlgebraDocument& d);
std::string serialize(const PotentialDocument& d);

LinftyStructure to_structure(const AlgebraDocument& d);
AlgebraDocument algebra_document(const std::string& name,
                                 const LinftyStructure& l);
FormalLManifold to_manifold(const PotentialDocument& d);
PotentialDocument potential_document(const std::string& name,
                                     const FormalLManifold& m);

}  // namespace lman

#endif
