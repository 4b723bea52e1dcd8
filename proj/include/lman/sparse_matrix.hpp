#ifndef LMAN_SPARSE_MATRIX_HPP
#define LMAN_SPARSE_MATRIX_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "lman/scalar.hpp"

namespace lman {

// Sparse matrix over the rationals. Entries are stored without zeros;
// all eliminations are exact.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  Scalar get(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const { return entries_.size(); }
  const std::map<std::pair<std::size_t, std::size_t>, Scalar>& entries() const {
    return entries_;
  }

  SparseMatrix transpose() const;

  // Appends the rows of other (same column count) below this matrix.
  SparseMatrix vstack(const SparseMatrix& other) const;

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_rows(const std::vector<std::vector<Scalar>>& rows,
                                std::size_t cols);

 private:
  std::size_t rows_, cols_;
  std::map<std::pair<std::size_t, std::size_t>, Scalar> entries_;
};

std::size_t rank(const SparseMatrix& m);

// dim(rowspace(span)) - dim(rowspace(span) ∩ rowspace(relations)).
// Both matrices must share the column dimension (the generator set).
std::size_t quotient_dimension(const SparseMatrix& span,
                               const SparseMatrix& relations);

// Exact basis of the right kernel; empty iff the matrix is injective on columns.
std::vector<std::vector<Scalar>> nullspace_basis(const SparseMatrix& m);

// Row echelon view of a relation subspace: reduces vectors modulo the
// rowspace and names a basis of the quotient by the non-pivot columns.
// Generator ordering is whatever deterministic order the caller indexed by.
class RowSpace {
 public:
  RowSpace(const SparseMatrix& relations);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivot_col_.size(); }

  // Subtracts the projection onto the rowspace; the result has zeros in all
  // pivot columns and represents the class of v in the quotient.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;

  // Columns that survive as a basis of the quotient.
  const std::vector<std::size_t>& free_columns() const { return free_cols_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivot_col_; }
  const std::vector<Scalar>& rref_row(std::size_t i) const {
    return rref_rows_[i];
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<Scalar>> rref_rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<std::size_t> free_cols_;
};

}  // namespace lman

#endif
