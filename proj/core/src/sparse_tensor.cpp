#include "ctd/sparse_tensor.hpp"

#include <algorithm>
#include <numeric>

#include "ctd/error.hpp"

namespace ctd {

namespace {

bool lex_less(const index_t* a, const index_t* b, size_t n) {
  return std::lexicographical_compare(a, a + n, b, b + n);
}

bool lex_equal(const index_t* a, const index_t* b, size_t n) {
  return std::equal(a, a + n, b);
}

}  // namespace

SparseTensor::SparseTensor(std::vector<index_t> shape)
    : shape_(std::move(shape)) {
  for (index_t e : shape_) {
    if (e < 0) throw ArgumentError("tensor extent must be non-negative");
  }
}

SparseTensor::SparseTensor(std::vector<index_t> shape,
                           std::vector<index_t> indices,
                           std::vector<double> values)
    : shape_(std::move(shape)),
      indices_(std::move(indices)),
      values_(std::move(values)) {
  for (index_t e : shape_) {
    if (e < 0) throw ArgumentError("tensor extent must be non-negative");
  }
  const size_t n = shape_.size();
  if (n == 0 && !values_.empty())
    throw ShapeError("entries supplied for an order-0 tensor");
  if (n != 0 && indices_.size() != values_.size() * n)
    throw ShapeError("index data does not match entry count");
  normalize();
}

SparseTensor::SparseTensor(
    std::vector<index_t> shape,
    const std::vector<std::pair<std::vector<index_t>, double>>& entries)
    : shape_(std::move(shape)) {
  const size_t n = shape_.size();
  indices_.reserve(entries.size() * n);
  values_.reserve(entries.size());
  for (const auto& [idx, v] : entries) {
    if (idx.size() != n)
      throw ShapeError("entry index order does not match tensor order");
    indices_.insert(indices_.end(), idx.begin(), idx.end());
    values_.push_back(v);
  }
  normalize();
}

void SparseTensor::normalize() {
  const size_t n = shape_.size();
  const size_t count = values_.size();
  for (size_t i = 0; i < count; ++i) {
    for (size_t k = 0; k < n; ++k) {
      const index_t ix = indices_[i * n + k];
      if (ix < 0 || ix >= shape_[k])
        throw ShapeError("tensor entry index out of bounds");
    }
  }
  if (count == 0) return;

  std::vector<size_t> perm(count);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    return lex_less(indices_.data() + a * n, indices_.data() + b * n, n);
  });

  std::vector<index_t> out_idx;
  std::vector<double> out_val;
  out_idx.reserve(indices_.size());
  out_val.reserve(count);
  size_t i = 0;
  while (i < count) {
    const index_t* key = indices_.data() + perm[i] * n;
    double sum = values_[perm[i]];
    size_t j = i + 1;
    while (j < count &&
           lex_equal(indices_.data() + perm[j] * n, key, n)) {
      sum += values_[perm[j]];
      ++j;
    }
    if (sum != 0.0) {
      out_idx.insert(out_idx.end(), key, key + n);
      out_val.push_back(sum);
    }
    i = j;
  }
  indices_ = std::move(out_idx);
  values_ = std::move(out_val);
}

index_t SparseTensor::cell_count() const {
  index_t cells = 1;
  for (index_t e : shape_) cells *= e;
  return cells;
}

}  // namespace ctd
