#pragma once

#include <cstdint>
#include <vector>

#include "octshift/rng.hpp"
#include "octshift/volume.hpp"

namespace octshift {

// Synthetic two-domain OCT-like data: retina-like bands built from smooth
// layer boundaries, dark IRC/SRF fluid blobs with exact ground-truth labels,
// and per-domain renderings that share anatomy but differ in intensity
// curve and noise character (clean additive noise for the Spectralis-like
// source, strong multiplicative speckle for the Cirrus-like target).
struct PhantomParams {
  Shape3 shape{128, 128, 8};
  int n_layers = 6;
  double irc_count = 3.0;  // expected blobs per volume (Poisson rate)
  double srf_count = 1.5;
  double source_noise_sigma = 0.02;
  double target_speckle_sigma = 0.30;
  double source_gamma = 1.0;
  double target_gamma = 0.60;
  std::uint64_t seed = 1234;

  void validate() const {
    Volume::validate_shape(shape);
    if (n_layers < 2) throw ConfigError("phantom n_layers must be >= 2");
    if (irc_count < 0 || srf_count < 0) throw ConfigError("phantom fluid counts must be >= 0");
    if (source_noise_sigma < 0 || target_speckle_sigma < 0)
      throw ConfigError("phantom noise sigmas must be >= 0");
    if (source_gamma <= 0 || target_gamma <= 0) throw ConfigError("phantom gammas must be > 0");
  }
};

// Clean intensity grid plus labels and the boundary fields the tests assert
// against. Boundary entry (c, k) is the fractional row of that surface in
// column c of B-scan k.
struct Anatomy {
  Shape3 shape;
  std::vector<float> clean;  // [0,1], row-major (rows, cols, slices)
  LabelMap labels;
  ImageF top_boundary;     // first layer boundary b_0
  ImageF bottom_boundary;  // last layer boundary b_n
};

Anatomy generate_anatomy(const PhantomParams& params, Rng& rng);

// Renders the clean grid into one domain. Source: gamma remap + additive
// Gaussian noise. Target: gamma remap + multiplicative speckle
// (v * (1 + eps)). Output clamped to [0,1]; ids left empty for the caller.
Volume render_domain(const std::vector<float>& clean, Shape3 shape, Domain domain,
                     const PhantomParams& params, Rng& rng);

struct PhantomDataset {
  std::vector<Volume> volumes;   // source and target rendering per anatomy
  std::vector<LabelMap> labels;  // parallel to volumes
  SplitManifest manifest;
};

// Patient-distinct dataset with largest-remainder partition sizes by
// patient count. Per-patient streams derive as
// child_seed = Rng::derive(seed, patient_index), so generation is
// reproducible and patients are independent.
PhantomDataset generate_dataset(int n_patients, int volumes_per_patient,
                                const PhantomParams& params,
                                const std::vector<double>& fractions = {0.7, 0.1, 0.2});

// Largest-remainder apportionment of n items to fractions (must sum to 1);
// ties broken by lowest partition index.
std::vector<int> largest_remainder_sizes(int n, const std::vector<double>& fractions);

}  // namespace octshift
