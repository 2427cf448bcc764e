#include "ctd/factors.hpp"

#include "ctd/error.hpp"
#include "ctd/tensor_ops.hpp"

namespace ctd {

FiberId make_fiber_id(const std::vector<index_t>& shape, int mode,
                      index_t flat) {
  const auto strides = fiber_strides(shape, mode);
  index_t total = 1;
  for (size_t k = 0; k < shape.size(); ++k)
    if (static_cast<int>(k) != mode) total *= shape[k];
  if (flat < 0 || flat >= total)
    throw ArgumentError("fiber index out of range");
  FiberId id;
  id.flat = flat;
  id.coords.reserve(shape.size() - 1);
  index_t rem = flat;
  std::vector<index_t> per_mode(shape.size(), 0);
  for (size_t k = shape.size(); k-- > 0;) {
    if (static_cast<int>(k) == mode) continue;
    per_mode[k] = rem / strides[k];
    rem %= strides[k];
  }
  for (size_t k = 0; k < shape.size(); ++k)
    if (static_cast<int>(k) != mode) id.coords.push_back(per_mode[k]);
  return id;
}

index_t fiber_flat_index(const std::vector<index_t>& shape, int mode,
                         std::span<const index_t> coords) {
  if (coords.size() != shape.size() - 1)
    throw ShapeError("fiber coordinate count does not match tensor order");
  const auto strides = fiber_strides(shape, mode);
  index_t flat = 0;
  size_t c = 0;
  for (size_t k = 0; k < shape.size(); ++k) {
    if (static_cast<int>(k) == mode) continue;
    flat += coords[c++] * strides[k];
  }
  return flat;
}

std::vector<index_t> LRFactors::tensor_shape() const {
  std::vector<index_t> shape = C.shape();
  if (!shape.empty()) shape[static_cast<size_t>(mode)] = R.rows();
  return shape;
}

}  // namespace ctd
