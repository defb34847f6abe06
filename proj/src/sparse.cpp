#include "fvpg/sparse.hpp"

#include <algorithm>
#include <string>

#include "fvpg/errors.hpp"
#include "fvpg/parallel.hpp"

namespace fvpg {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw DimensionMismatch("triplet (" + std::to_string(t.row) + "," +
                              std::to_string(t.col) + ") outside a " +
                              std::to_string(n) + "x" + std::to_string(n) +
                              " matrix");
  }
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });

  SparseMatrix m;
  m.n_ = n;
  m.row_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < triplets.size();) {
    std::size_t j = i + 1;
    double sum = triplets[i].value;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col) {
      sum += triplets[j].value;
      ++j;
    }
    m.columns_.push_back(triplets[i].col);
    m.values_.push_back(sum);
    ++m.row_offsets_[triplets[i].row + 1];
    i = j;
  }
  for (int r = 0; r < n; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

double SparseMatrix::coeff(int i, int j) const {
  const auto cb = columns_.begin();
  const auto lo = cb + row_offsets_[i];
  const auto hi = cb + row_offsets_[i + 1];
  const auto it = std::lower_bound(lo, hi, j);
  if (it == hi || *it != j) return 0.0;
  return values_[it - cb];
}

bool SparseMatrix::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      if (coeff(columns_[k], i) != values_[k]) return false;
  return true;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw DimensionMismatch("matvec: vector size " + std::to_string(x.size()) +
                            " vs matrix dimension " + std::to_string(n_));
  parallel_for(n_, [&](std::ptrdiff_t i) {
    double s = 0.0;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[columns_[k]];
    y[i] = s;
  });
}

void SparseMatrix::multiply_serial(std::span<const double> x,
                                   std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw DimensionMismatch("matvec: vector size " + std::to_string(x.size()) +
                            " vs matrix dimension " + std::to_string(n_));
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[columns_[k]];
    y[i] = s;
  }
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x) {
  std::vector<double> y(x.size());
  a.multiply(x, y);
  return y;
}

std::vector<double> matvec_serial(const SparseMatrix& a, std::span<const double> x) {
  std::vector<double> y(x.size());
  a.multiply_serial(x, y);
  return y;
}

}  // namespace fvpg
