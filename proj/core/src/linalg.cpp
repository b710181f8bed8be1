#include "opal/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace opal {

SparseRow sparse_from(const std::map<int, Rational> &m) {
  SparseRow r;
  r.reserve(m.size());
  for (const auto &[c, v] : m)
    if (!v.is_zero()) r.emplace_back(c, v);
  return r;
}

namespace {

// row -= coeff * other
void axpy(SparseRow &row, const Rational &coeff, const SparseRow &other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].first < row[i].first) {
      Rational v = Rational(0) - coeff * other[j].second;
      if (!v.is_zero()) out.emplace_back(other[j].first, v);
      ++j;
    } else {
      Rational v = row[i].second - coeff * other[j].second;
      if (!v.is_zero()) out.emplace_back(row[i].first, v);
      ++i, ++j;
    }
  }
  row = std::move(out);
}

void scale(SparseRow &row, const Rational &c) {
  for (auto &[col, v] : row) v *= c;
}

} // namespace

SparseRow RowSpace::reduce(SparseRow row) const {
  // Scan left to right; eliminating a pivot column only introduces
  // strictly larger columns, so one pass terminates.
  std::size_t k = 0;
  while (k < row.size()) {
    auto it = row_of_pivot_.find(row[k].first);
    if (it == row_of_pivot_.end()) {
      ++k;
      continue;
    }
    axpy(row, row[k].second, rows_[it->second]);
  }
  return row;
}

bool RowSpace::insert(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  scale(row, row.front().second.inverse());
  int pivot = row.front().first;
  if (pivot < 0 || pivot >= dim_)
    throw std::out_of_range("RowSpace::insert: column outside ambient basis");
  // Back-substitute the new pivot out of existing rows.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    auto &er = rows_[r];
    auto hit = std::lower_bound(er.begin(), er.end(), pivot,
                                [](const auto &p, int c) { return p.first < c; });
    if (hit != er.end() && hit->first == pivot) axpy(er, hit->second, row);
  }
  int idx = (int)rows_.size();
  rows_.push_back(std::move(row));
  pivot_of_row_.push_back(pivot);
  row_of_pivot_[pivot] = idx;
  return true;
}

bool RowSpace::same_space(const RowSpace &other) const {
  if (rank() != other.rank()) return false;
  for (const auto &r : rows_)
    if (!other.contains(r)) return false;
  return true;
}

std::vector<SparseRow> kernel_basis(int domain_dim,
                                    const std::vector<SparseRow> &images) {
  if ((int)images.size() != domain_dim)
    throw std::invalid_argument("kernel_basis: one image per domain basis vector");
  // Gaussian elimination on [image | domain tag] rows; rows whose image
  // part dies leave their tag part as a kernel vector.
  struct Tagged {
    SparseRow img;
    SparseRow tag;
  };
  std::vector<Tagged> echelon;
  std::map<int, int> row_of_pivot;
  std::vector<SparseRow> kernel;
  for (int v = 0; v < domain_dim; ++v) {
    Tagged t{images[v], {{v, Rational(1)}}};
    std::size_t k = 0;
    while (k < t.img.size()) {
      auto it = row_of_pivot.find(t.img[k].first);
      if (it == row_of_pivot.end()) {
        ++k;
        continue;
      }
      Rational c = t.img[k].second;
      axpy(t.img, c, echelon[it->second].img);
      axpy(t.tag, c, echelon[it->second].tag);
    }
    if (t.img.empty()) {
      kernel.push_back(std::move(t.tag));
    } else {
      Rational inv = t.img.front().second.inverse();
      scale(t.img, inv);
      scale(t.tag, inv);
      row_of_pivot[t.img.front().first] = (int)echelon.size();
      echelon.push_back(std::move(t));
    }
  }
  return kernel;
}

} // namespace opal
