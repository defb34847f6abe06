#ifndef FVPG_SPARSE_HPP
#define FVPG_SPARSE_HPP

#include <span>
#include <vector>

namespace fvpg {

/// Square sparse matrix in compressed-row form with sorted, unique column
/// indices per row. Assembled once from triplets; immutable afterwards.
class SparseMatrix {
 public:
  struct Triplet {
    int row;
    int col;
    double value;
  };

  SparseMatrix() = default;

  /// Sums duplicate entries, sorts columns, drops nothing (explicit zeros kept).
  static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

  int rows() const { return n_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> columns() const { return columns_; }
  std::span<const double> values() const { return values_; }

  /// Entry lookup; 0 for absent entries.
  double coeff(int i, int j) const;

  /// True when every stored entry equals its transpose exactly.
  bool is_symmetric() const;

  /// y = A x. Parallel over rows; bit-identical for any thread count
  /// (each row is reduced in a fixed serial order).
  void multiply(std::span<const double> x, std::span<double> y) const;

  /// Plain-loop reference implementation, kept for testing and benchmarks.
  void multiply_serial(std::span<const double> x, std::span<double> y) const;

 private:
  int n_ = 0;
  std::vector<int> row_offsets_;
  std::vector<int> columns_;
  std::vector<double> values_;
};

/// Convenience wrapper; throws DimensionMismatch on size disagreement.
std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x);
std::vector<double> matvec_serial(const SparseMatrix& a, std::span<const double> x);

}  // namespace fvpg

#endif
