#pragma once

#include <vector>

#include "octshift/volume.hpp"

namespace octshift {

// Pixel-center nearest-neighbor index map for one axis:
//   src(i) = clamp(floor((i + 0.5) * in_size / out_size), 0, in_size - 1).
// Identity when in_size == out_size.
std::vector<int> nearest_index_map(int in_size, int out_size);

// Grid unification between device shapes (e.g. 1024x512x128 -> 496x512x49).
// Spacing is rescaled by in_size / out_size per axis; every output voxel is
// a copy of some input voxel.
Volume resample_nearest(const Volume& vol, Shape3 target_shape);

// Same index map applied to class ids; values are gathered, never
// interpolated.
LabelMap resample_labels(const LabelMap& labels, Shape3 target_shape);

}  // namespace octshift
