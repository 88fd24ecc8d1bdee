#pragma once

#include <filesystem>
#include <string>

#include "octshift/volume.hpp"

namespace octshift {

// Volume container ("OCTVOL01") and label container ("OCTLAB01"):
//   8-byte magic,
//   u32 little-endian metadata length,
//   UTF-8 JSON metadata {shape, spacing_um, dtype, domain, patient_id,
//     volume_id[, provenance]},
//   voxel payload in row-major (rows, cols, slices) order, little-endian.
// dtype "f32" stores raw float bits (lossless); "u8" stores
// floor(v * 255 + 0.5) and loads back as byte / 255.

enum class PayloadType { U8, F32 };

Volume load_volume(const std::filesystem::path& path);
void save_volume(const Volume& vol, const std::filesystem::path& path,
                 PayloadType payload = PayloadType::F32);

LabelMap load_labels(const std::filesystem::path& path);
void save_labels(const LabelMap& labels, const std::filesystem::path& path);

SplitManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const SplitManifest& manifest, const std::filesystem::path& path);

// Write-temp-then-rename; on failure the temp file is removed and no
// partial target file remains.
void atomic_write_file(const std::filesystem::path& path, const std::string& bytes);

namespace detail {
std::uint8_t quantize_u8(float v);  // round half up
}

}  // namespace octshift
