#ifndef OPAL_LINALG_HPP
#define OPAL_LINALG_HPP

#include "opal/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace opal {

/// Sparse row over an enumerated ambient basis: (column, coefficient)
/// pairs sorted by column, zero coefficients pruned.
using SparseRow = std::vector<std::pair<int, Rational>>;

SparseRow sparse_from(const std::map<int, Rational> &m);

/// Incrementally maintained reduced row echelon form over Q.
///
/// Rows are inserted one at a time and reduced against the current
/// pivots; the basis stays fully reduced (pivot coefficient 1, pivot
/// column eliminated from every other row), so `rank` and membership
/// queries are exact at any point.
class RowSpace {
public:
  explicit RowSpace(int ambient_dim) : dim_(ambient_dim) {}

  int ambient_dim() const { return dim_; }
  int rank() const { return (int)rows_.size(); }

  /// Reduces `row` against the basis; inserts the residual if nonzero.
  /// Returns true when the row enlarged the space.
  bool insert(SparseRow row);

  /// Residual of `row` after reduction; empty iff the row is in the span.
  SparseRow reduce(SparseRow row) const;

  bool contains(const SparseRow &row) const { return reduce(row).empty(); }

  /// Span equality via mutual containment (both sides fully reduced).
  bool same_space(const RowSpace &other) const;

  const std::vector<SparseRow> &rows() const { return rows_; }

private:
  int dim_;
  std::vector<SparseRow> rows_;        // reduced, ordered by pivot column
  std::vector<int> pivot_of_row_;      // pivot column per row
  std::map<int, int> row_of_pivot_;    // pivot column -> row index
};

/// Nullspace of the linear map given by `columns_of_matrix` acting on
/// coordinates 0..domain_dim-1: each entry is the image (as a sparse row
/// over the codomain) of the corresponding domain basis vector. Returns a
/// basis of the kernel as sparse rows over the domain.
std::vector<SparseRow> kernel_basis(int domain_dim,
                                    const std::vector<SparseRow> &images);

} // namespace opal

#endif
