#include "octshift/resample.hpp"

#include <cmath>

namespace octshift {

std::vector<int> nearest_index_map(int in_size, int out_size) {
  if (out_size < 1) throw DataError("target axis size must be >= 1");
  std::vector<int> map(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double src = std::floor((i + 0.5) * static_cast<double>(in_size) / out_size);
    map[i] = std::min(in_size - 1, std::max(0, static_cast<int>(src)));
  }
  return map;
}

namespace {

template <typename Grid, typename Value>
void gather(const Grid& in, Grid& out, Shape3 in_shape, Shape3 out_shape) {
  const auto rmap = nearest_index_map(in_shape.rows, out_shape.rows);
  const auto cmap = nearest_index_map(in_shape.cols, out_shape.cols);
  const auto kmap = nearest_index_map(in_shape.slices, out_shape.slices);
  std::size_t o = 0;
  for (int r = 0; r < out_shape.rows; ++r) {
    const std::size_t rbase = static_cast<std::size_t>(rmap[r]) * in_shape.cols;
    for (int c = 0; c < out_shape.cols; ++c) {
      const std::size_t cbase = (rbase + cmap[c]) * in_shape.slices;
      for (int k = 0; k < out_shape.slices; ++k) out[o++] = static_cast<Value>(in[cbase + kmap[k]]);
    }
  }
}

}  // namespace

Volume resample_nearest(const Volume& vol, Shape3 target_shape) {
  Volume::validate_shape(target_shape);
  const Shape3 in = vol.shape();
  Eigen::Array3f spacing = vol.spacing_um();
  spacing[0] *= static_cast<float>(in.rows) / target_shape.rows;
  spacing[1] *= static_cast<float>(in.cols) / target_shape.cols;
  spacing[2] *= static_cast<float>(in.slices) / target_shape.slices;

  Volume out(target_shape, spacing, vol.domain(), vol.patient_id(), vol.volume_id());
  out.set_provenance(vol.provenance());
  gather<std::vector<float>, float>(vol.voxels(), out.voxels(), in, target_shape);
  return out;
}

LabelMap resample_labels(const LabelMap& labels, Shape3 target_shape) {
  Volume::validate_shape(target_shape);
  LabelMap out(target_shape, labels.volume_id());
  gather<std::vector<std::uint8_t>, std::uint8_t>(labels.labels(), out.labels(), labels.shape(),
                                                  target_shape);
  return out;
}

}  // namespace octshift
