#include "admm/boundary.hpp"

namespace admm {

BoundarySelector::BoundarySelector(MaskMap mask) : mask_(std::move(mask)) {
  mask_.require_nonempty();
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (!mask_.observed(i)) index_.push_back(i);
}

std::vector<double> BoundarySelector::gather(const ImageGrid& full) const {
  if (full.height() != mask_.height() || full.width() != mask_.width()) {
    throw DimensionError("BoundarySelector::gather: grid does not match the mask");
  }
  std::vector<double> out(index_.size());
  for (std::size_t k = 0; k < index_.size(); ++k) out[k] = full[index_[k]];
  return out;
}

ImageGrid BoundarySelector::scatter(std::span<const double> w) const {
  if (w.size() != index_.size()) throw DimensionError("BoundarySelector::scatter: length mismatch");
  ImageGrid out(mask_.height(), mask_.width());
  for (std::size_t k = 0; k < index_.size(); ++k) out[index_[k]] = w[k];
  return out;
}

}  // namespace admm
