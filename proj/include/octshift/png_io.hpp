#pragma once

#include <filesystem>

#include "octshift/volume.hpp"

namespace octshift {

// 8-bit grayscale PNG for visual inspection of B-scans. Intensities in
// [0,1] are quantized with the same round-half-up rule as the u8 container
// payload.
void write_bscan_png(const Eigen::Ref<const ImageF>& bscan, const std::filesystem::path& path);

}  // namespace octshift
