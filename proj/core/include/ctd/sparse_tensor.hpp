#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ctd {

using index_t = std::int64_t;

/// N-mode sparse tensor in coordinate format.
///
/// Entries are sorted lexicographically by index vector, coalesced, and never
/// store an exact zero. Instances are immutable after construction and safe
/// to read from multiple threads.
class SparseTensor {
 public:
  SparseTensor() = default;

  /// Empty tensor of the given shape.
  explicit SparseTensor(std::vector<index_t> shape);

  /// Build from raw COO data: `indices` holds nnz * order coordinates
  /// (entry i occupies indices[i*order .. i*order+order)). Duplicates are
  /// summed, zeros dropped, entries bounds-checked.
  SparseTensor(std::vector<index_t> shape, std::vector<index_t> indices,
               std::vector<double> values);

  /// Convenience constructor for small literals.
  SparseTensor(std::vector<index_t> shape,
               const std::vector<std::pair<std::vector<index_t>, double>>& entries);

  int order() const { return static_cast<int>(shape_.size()); }
  const std::vector<index_t>& shape() const { return shape_; }
  index_t extent(int mode) const { return shape_[static_cast<size_t>(mode)]; }
  index_t nnz() const { return static_cast<index_t>(values_.size()); }

  /// Index vector of the i-th entry (lexicographic order).
  std::span<const index_t> index(index_t i) const {
    const auto n = shape_.size();
    return {indices_.data() + static_cast<size_t>(i) * n, n};
  }
  double value(index_t i) const { return values_[static_cast<size_t>(i)]; }

  const std::vector<index_t>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }

  /// Product of all extents.
  index_t cell_count() const;

  bool operator==(const SparseTensor& other) const = default;

 private:
  void normalize();  // sort, coalesce, drop zeros, validate bounds

  std::vector<index_t> shape_;
  std::vector<index_t> indices_;  // nnz * order, row-concatenated
  std::vector<double> values_;
};

}  // namespace ctd
