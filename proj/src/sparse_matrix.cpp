#include "lman/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace lman {

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set");
  if (v == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add");
  auto it = entries_.find({r, c});
  if (it == entries_.end()) {
    if (v != 0) entries_[{r, c}] = v;
    return;
  }
  it->second += v;
  if (it->second == 0) entries_.erase(it);
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Scalar(0) : it->second;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
  return t;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& other) const {
  if (other.cols_ != cols_)
    throw std::invalid_argument("vstack: column dimension mismatch");
  SparseMatrix s(rows_ + other.rows_, cols_);
  for (const auto& [rc, v] : entries_) s.set(rc.first, rc.second, v);
  for (const auto& [rc, v] : other.entries_)
    s.set(rows_ + rc.first, rc.second, v);
  return s;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::from_rows(
    const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::invalid_argument("from_rows: ragged input");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

namespace {

// Row-list elimination working set. Rows are sparse column->value maps.
using Row = std::map<std::size_t, Scalar>;

std::vector<Row> to_rows(const SparseMatrix& m) {
  std::vector<Row> rows(m.rows());
  for (const auto& [rc, v] : m.entries()) rows[rc.first][rc.second] = v;
  return rows;
}

void axpy(Row& target, const Scalar& factor, const Row& source) {
  for (const auto& [c, v] : source) {
    auto it = target.find(c);
    if (it == target.end()) {
      Scalar nv = factor * v;
      if (nv != 0) target[c] = std::move(nv);
    } else {
      it->second += factor * v;
      if (it->second == 0) target.erase(it);
    }
  }
}

// Forward elimination with a Markowitz-flavored pivot choice (shortest
// eligible row, then sparsest column). Returns the pivot count.
std::size_t eliminate(std::vector<Row>& rows) {
  std::size_t pivots = 0;
  std::vector<bool> done(rows.size(), false);
  for (;;) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (done[r] || rows[r].empty()) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) break;
    done[best] = true;
    ++pivots;
    std::size_t pc = rows[best].begin()->first;
    Scalar pv = rows[best].begin()->second;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best || done[r]) continue;
      auto it = rows[r].find(pc);
      if (it == rows[r].end()) continue;
      Scalar factor = -it->second / pv;
      axpy(rows[r], factor, rows[best]);
    }
  }
  return pivots;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  auto rows = to_rows(m);
  return eliminate(rows);
}

std::size_t quotient_dimension(const SparseMatrix& span,
                               const SparseMatrix& relations) {
  if (span.cols() != relations.cols())
    throw std::invalid_argument("quotient_dimension: column mismatch");
  // dim(A) - dim(A ∩ B) = dim(A + B) - dim(B).
  return rank(span.vstack(relations)) - rank(relations);
}

std::vector<std::vector<Scalar>> nullspace_basis(const SparseMatrix& m) {
  RowSpace rs(m);
  std::vector<std::vector<Scalar>> basis;
  const auto& pivots = rs.pivot_columns();
  for (std::size_t fc : rs.free_columns()) {
    // x_fc = 1, pivot coordinates from the RREF rows, everything else 0.
    std::vector<Scalar> v(m.cols(), Scalar(0));
    v[fc] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -rs.rref_row(i)[fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Scalar> RowSpace::reduce(std::vector<Scalar> v) const {
  if (v.size() != cols_) throw std::invalid_argument("RowSpace::reduce size");
  for (std::size_t i = 0; i < rref_rows_.size(); ++i) {
    const Scalar& c = v[pivot_col_[i]];
    if (c == 0) continue;
    Scalar factor = c;  // rows are normalized to pivot 1
    for (std::size_t j = 0; j < cols_; ++j)
      if (rref_rows_[i][j] != 0) v[j] -= factor * rref_rows_[i][j];
  }
  return v;
}

RowSpace::RowSpace(const SparseMatrix& relations) : cols_(relations.cols()) {
  auto rows = to_rows(relations);
  // Gauss-Jordan to reduced row echelon form, leftmost pivot order.
  std::vector<Row> rref;
  for (auto& row : rows) {
    // Reduce against existing rref rows.
    for (auto& er : rref) {
      std::size_t pc = er.begin()->first;
      auto it = row.find(pc);
      if (it != row.end()) {
        Scalar factor = -it->second;  // er pivot normalized to 1
        axpy(row, factor, er);
      }
    }
    if (row.empty()) continue;
    // Normalize and insert; then clear the new pivot column from earlier rows.
    Scalar pv = row.begin()->second;
    for (auto& [c, val] : row) val /= pv;
    std::size_t pc = row.begin()->first;
    for (auto& er : rref) {
      auto it = er.find(pc);
      if (it != er.end()) {
        Scalar factor = -it->second;
        axpy(er, factor, row);
      }
    }
    rref.push_back(std::move(row));
  }
  std::sort(rref.begin(), rref.end(),
            [](const Row& a, const Row& b) {
              return a.begin()->first < b.begin()->first;
            });
  std::vector<bool> is_pivot(cols_, false);
  for (auto& row : rref) {
    pivot_col_.push_back(row.begin()->first);
    is_pivot[row.begin()->first] = true;
    std::vector<Scalar> dense(cols_, Scalar(0));
    for (const auto& [c, v] : row) dense[c] = v;
    rref_rows_.push_back(std::move(dense));
  }
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols_.push_back(c);
}

}  // namespace lman
