#include "octshift/container_io.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

namespace octshift {

namespace {

using nlohmann::json;

constexpr char kVolumeMagic[8] = {'O', 'C', 'T', 'V', 'O', 'L', '0', '1'};
constexpr char kLabelMagic[8] = {'O', 'C', 'T', 'L', 'A', 'B', '0', '1'};

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_f32(std::string& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  append_u32(out, bits);
}

struct Reader {
  std::string bytes;
  std::size_t pos = 0;
  std::string path;

  void need(std::size_t n, const char* what) const {
    if (pos + n > bytes.size())
      throw DataError(path + ": truncated container while reading " + what);
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  float f32(const char* what) {
    const std::uint32_t bits = u32(what);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
};

Reader read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return Reader{std::move(bytes), 0, path.string()};
}

json read_header(Reader& r, const char magic[8], const char* kind) {
  r.need(8, "magic");
  if (std::memcmp(r.bytes.data(), magic, 8) != 0)
    throw DataError(r.path + ": bad magic, not a " + std::string(kind) + " container");
  r.pos = 8;
  const std::uint32_t len = r.u32("metadata length");
  r.need(len, "metadata");
  json meta;
  try {
    meta = json::parse(r.bytes.substr(r.pos, len));
  } catch (const json::exception& e) {
    throw DataError(r.path + ": malformed metadata JSON: " + e.what());
  }
  r.pos += len;
  return meta;
}

Shape3 shape_from_meta(const json& meta, const std::string& path) {
  if (!meta.contains("shape") || !meta["shape"].is_array() || meta["shape"].size() != 3)
    throw DataError(path + ": metadata missing 3-element shape");
  Shape3 s{meta["shape"][0].get<int>(), meta["shape"][1].get<int>(), meta["shape"][2].get<int>()};
  Volume::validate_shape(s);
  return s;
}

}  // namespace

namespace detail {
std::uint8_t quantize_u8(float v) {
  const float scaled = std::floor(v * 255.0f + 0.5f);
  return static_cast<std::uint8_t>(std::min(255.0f, std::max(0.0f, scaled)));
}
}  // namespace detail

void atomic_write_file(const std::filesystem::path& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  static std::atomic<unsigned> counter{0};
  const fs::path tmp =
      path.parent_path() /
      (path.filename().string() + ".tmp" + std::to_string(counter.fetch_add(1)) + "." +
       std::to_string(static_cast<unsigned>(::getpid())));
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot create file in " + path.parent_path().string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  const bool ok = out.good();
  out.close();
  if (!ok) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw DataError("write failed for " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DataError("rename failed for " + path.string() + ": " + ec.message());
  }
}

void save_volume(const Volume& vol, const std::filesystem::path& path, PayloadType payload) {
  json meta;
  meta["shape"] = {vol.rows(), vol.cols(), vol.slices()};
  meta["spacing_um"] = {vol.spacing_um()[0], vol.spacing_um()[1], vol.spacing_um()[2]};
  meta["dtype"] = payload == PayloadType::U8 ? "u8" : "f32";
  meta["domain"] = to_string(vol.domain());
  meta["patient_id"] = vol.patient_id();
  meta["volume_id"] = vol.volume_id();
  if (!vol.provenance().empty()) meta["provenance"] = vol.provenance();
  const std::string meta_str = meta.dump();

  std::string bytes;
  bytes.reserve(12 + meta_str.size() + vol.voxels().size() * (payload == PayloadType::U8 ? 1 : 4));
  bytes.append(kVolumeMagic, 8);
  append_u32(bytes, static_cast<std::uint32_t>(meta_str.size()));
  bytes += meta_str;
  if (payload == PayloadType::U8) {
    for (float v : vol.voxels()) bytes.push_back(static_cast<char>(detail::quantize_u8(v)));
  } else {
    for (float v : vol.voxels()) append_f32(bytes, v);
  }
  atomic_write_file(path, bytes);
}

Volume load_volume(const std::filesystem::path& path) {
  Reader r = read_all(path);
  const json meta = read_header(r, kVolumeMagic, "volume");
  const Shape3 shape = shape_from_meta(meta, r.path);
  const std::string dtype = meta.value("dtype", "f32");
  Eigen::Array3f spacing = Eigen::Array3f::Ones();
  if (meta.contains("spacing_um"))
    for (int i = 0; i < 3; ++i) spacing[i] = meta["spacing_um"][i].get<float>();

  Volume vol(shape, spacing, domain_from_string(meta.value("domain", "source")),
             meta.value("patient_id", ""), meta.value("volume_id", ""));
  if (meta.contains("provenance")) vol.set_provenance(meta["provenance"].get<std::string>());

  const std::size_t n = shape.count();
  if (dtype == "u8") {
    r.need(n, "u8 payload");
    for (std::size_t i = 0; i < n; ++i)
      vol.voxels()[i] =
          static_cast<float>(static_cast<unsigned char>(r.bytes[r.pos + i])) / 255.0f;
  } else if (dtype == "f32") {
    r.need(n * 4, "f32 payload");
    for (std::size_t i = 0; i < n; ++i) {
      const float v = r.f32("voxel");
      if (!(v >= 0.0f && v <= 1.0f))
        throw DataError(r.path + ": intensity " + std::to_string(v) +
                        " outside declared range [0,1]");
      vol.voxels()[i] = v;
    }
  } else {
    throw DataError(r.path + ": unknown dtype '" + dtype + "'");
  }
  return vol;
}

void save_labels(const LabelMap& labels, const std::filesystem::path& path) {
  json meta;
  const Shape3 s = labels.shape();
  meta["shape"] = {s.rows, s.cols, s.slices};
  meta["dtype"] = "u8";
  meta["volume_id"] = labels.volume_id();
  const std::string meta_str = meta.dump();

  std::string bytes;
  bytes.reserve(12 + meta_str.size() + labels.labels().size());
  bytes.append(kLabelMagic, 8);
  append_u32(bytes, static_cast<std::uint32_t>(meta_str.size()));
  bytes += meta_str;
  for (std::uint8_t v : labels.labels()) bytes.push_back(static_cast<char>(v));
  atomic_write_file(path, bytes);
}

LabelMap load_labels(const std::filesystem::path& path) {
  Reader r = read_all(path);
  const json meta = read_header(r, kLabelMagic, "label");
  const Shape3 shape = shape_from_meta(meta, r.path);
  LabelMap labels(shape, meta.value("volume_id", ""));
  const std::size_t n = shape.count();
  r.need(n, "label payload");
  for (std::size_t i = 0; i < n; ++i)
    labels.labels()[i] = static_cast<std::uint8_t>(r.bytes[r.pos + i]);
  labels.validate_classes();
  return labels;
}

void save_manifest(const SplitManifest& manifest, const std::filesystem::path& path) {
  json doc;
  doc["seed"] = manifest.seed;
  doc["partitions"] = json::object();
  for (const auto& [name, ids] : manifest.partitions) doc["partitions"][name] = ids;
  doc["patients"] = json::object();
  for (const auto& [vid, pid] : manifest.patient_index) doc["patients"][vid] = pid;
  atomic_write_file(path, doc.dump(2) + "\n");
}

SplitManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": malformed manifest JSON: " + e.what());
  }
  SplitManifest m;
  m.seed = doc.value("seed", 0ull);
  for (const auto& [name, ids] : doc.at("partitions").items())
    m.partitions[name] = ids.get<std::vector<std::string>>();
  for (const auto& [vid, pid] : doc.at("patients").items())
    m.patient_index[vid] = pid.get<std::string>();
  m.validate();
  return m;
}

}  // namespace octshift
