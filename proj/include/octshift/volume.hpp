#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "octshift/errors.hpp"

namespace octshift {

using ImageF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ImageI = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Domain { Source, Target };  // Spectralis-like vs Cirrus-like

inline const char* to_string(Domain d) { return d == Domain::Source ? "source" : "target"; }

inline Domain domain_from_string(const std::string& s) {
  if (s == "source") return Domain::Source;
  if (s == "target") return Domain::Target;
  throw DataError("unknown domain tag: " + s);
}

struct Shape3 {
  int rows = 0, cols = 0, slices = 0;
  bool operator==(const Shape3&) const = default;
  std::size_t count() const {
    return static_cast<std::size_t>(rows) * cols * slices;
  }
};

// 3D intensity grid in [0,1], stored row-major over (rows, cols, slices):
// the slice index is the fastest-varying axis, matching the on-disk payload
// order of the container format.
class Volume {
 public:
  Volume() = default;
  Volume(Shape3 shape, Eigen::Array3f spacing_um, Domain domain, std::string patient_id,
         std::string volume_id)
      : shape_(shape),
        spacing_um_(spacing_um),
        domain_(domain),
        patient_id_(std::move(patient_id)),
        volume_id_(std::move(volume_id)),
        voxels_(shape.count(), 0.0f) {
    validate_shape(shape);
    if (!(spacing_um_ > 0.0f).all()) throw DataError("spacing components must be > 0");
  }

  static void validate_shape(Shape3 s) {
    if (s.rows < 1 || s.cols < 1 || s.slices < 1)
      throw DataError("degenerate volume shape (" + std::to_string(s.rows) + ", " +
                      std::to_string(s.cols) + ", " + std::to_string(s.slices) + ")");
  }

  Shape3 shape() const { return shape_; }
  int rows() const { return shape_.rows; }
  int cols() const { return shape_.cols; }
  int slices() const { return shape_.slices; }
  Eigen::Array3f spacing_um() const { return spacing_um_; }
  Domain domain() const { return domain_; }
  const std::string& patient_id() const { return patient_id_; }
  const std::string& volume_id() const { return volume_id_; }
  const std::string& provenance() const { return provenance_; }

  void set_domain(Domain d) { domain_ = d; }
  void set_spacing_um(Eigen::Array3f s) { spacing_um_ = s; }
  void set_ids(std::string patient, std::string volume) {
    patient_id_ = std::move(patient);
    volume_id_ = std::move(volume);
  }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  std::size_t index(int r, int c, int k) const {
    return (static_cast<std::size_t>(r) * shape_.cols + c) * shape_.slices + k;
  }
  float at(int r, int c, int k) const { return voxels_[index(r, c, k)]; }
  float& at(int r, int c, int k) { return voxels_[index(r, c, k)]; }

  const std::vector<float>& voxels() const { return voxels_; }
  std::vector<float>& voxels() { return voxels_; }

  // B-scan k as a (rows x cols) image, by value.
  ImageF bscan(int k) const {
    check_slice(k);
    ImageF img(shape_.rows, shape_.cols);
    for (int r = 0; r < shape_.rows; ++r)
      for (int c = 0; c < shape_.cols; ++c) img(r, c) = at(r, c, k);
    return img;
  }

  void set_bscan(int k, const Eigen::Ref<const ImageF>& img) {
    check_slice(k);
    if (img.rows() != shape_.rows || img.cols() != shape_.cols)
      throw DataError("B-scan shape mismatch on set_bscan");
    for (int r = 0; r < shape_.rows; ++r)
      for (int c = 0; c < shape_.cols; ++c) at(r, c, k) = img(r, c);
  }

 private:
  void check_slice(int k) const {
    if (k < 0 || k >= shape_.slices)
      throw DataError("slice index " + std::to_string(k) + " out of range [0, " +
                      std::to_string(shape_.slices) + ")");
  }

  Shape3 shape_;
  Eigen::Array3f spacing_um_ = Eigen::Array3f::Ones();
  Domain domain_ = Domain::Source;
  std::string patient_id_;
  std::string volume_id_;
  std::string provenance_;
  std::vector<float> voxels_;
};

// Per-voxel class grid aligned with a Volume. Classes: 0=background,
// 1=IRC, 2=SRF.
class LabelMap {
 public:
  static constexpr std::uint8_t kBackground = 0;
  static constexpr std::uint8_t kIrc = 1;
  static constexpr std::uint8_t kSrf = 2;
  static constexpr int kNumClasses = 3;

  LabelMap() = default;
  LabelMap(Shape3 shape, std::string volume_id)
      : shape_(shape), volume_id_(std::move(volume_id)), labels_(shape.count(), 0) {
    Volume::validate_shape(shape);
  }

  Shape3 shape() const { return shape_; }
  const std::string& volume_id() const { return volume_id_; }
  void set_volume_id(std::string id) { volume_id_ = std::move(id); }

  std::size_t index(int r, int c, int k) const {
    return (static_cast<std::size_t>(r) * shape_.cols + c) * shape_.slices + k;
  }
  std::uint8_t at(int r, int c, int k) const { return labels_[index(r, c, k)]; }
  std::uint8_t& at(int r, int c, int k) { return labels_[index(r, c, k)]; }

  const std::vector<std::uint8_t>& labels() const { return labels_; }
  std::vector<std::uint8_t>& labels() { return labels_; }

  ImageI slice(int k) const {
    if (k < 0 || k >= shape_.slices) throw DataError("label slice index out of range");
    ImageI img(shape_.rows, shape_.cols);
    for (int r = 0; r < shape_.rows; ++r)
      for (int c = 0; c < shape_.cols; ++c) img(r, c) = at(r, c, k);
    return img;
  }

  void set_slice(int k, const Eigen::Ref<const ImageI>& img) {
    if (k < 0 || k >= shape_.slices) throw DataError("label slice index out of range");
    for (int r = 0; r < shape_.rows; ++r)
      for (int c = 0; c < shape_.cols; ++c) at(r, c, k) = img(r, c);
  }

  void validate_classes() const {
    for (std::uint8_t v : labels_)
      if (v >= kNumClasses) throw DataError("label value outside {0,1,2}");
  }
};

// Patient-distinct assignment of volume ids to partitions.
struct SplitManifest {
  std::map<std::string, std::vector<std::string>> partitions;  // name -> volume ids
  std::map<std::string, std::string> patient_index;            // volume id -> patient id
  std::uint64_t seed = 0;

  const std::vector<std::string>& partition(const std::string& name) const {
    auto it = partitions.find(name);
    if (it == partitions.end()) throw DataError("manifest has no partition '" + name + "'");
    return it->second;
  }

  // No patient may appear in more than one partition.
  void validate() const {
    std::map<std::string, std::string> patient_partition;
    for (const auto& [name, ids] : partitions) {
      for (const auto& id : ids) {
        auto pit = patient_index.find(id);
        if (pit == patient_index.end())
          throw DataError("manifest volume '" + id + "' missing from patient index");
        auto [it, inserted] = patient_partition.emplace(pit->second, name);
        if (!inserted && it->second != name)
          throw DataError("patient '" + pit->second + "' appears in partitions '" + it->second +
                          "' and '" + name + "'");
      }
    }
  }
};

}  // namespace octshift
