#include "octshift/filters.hpp"

#include <cmath>

#include "octshift/rng.hpp"

namespace octshift {

Volume median_axial(const Volume& vol) {
  Volume out = vol;
  const int slices = vol.slices();
  if (slices == 1) return out;
  const int rows = vol.rows(), cols = vol.cols();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int k = 0; k < slices; ++k) {
        const float a = vol.at(r, c, std::max(k - 1, 0));
        const float b = vol.at(r, c, k);
        const float d = vol.at(r, c, std::min(k + 1, slices - 1));
        out.at(r, c, k) = std::max(std::min(a, b), std::min(std::max(a, b), d));
      }
    }
  }
  return out;
}

Volume transform_T1(const Volume& vol) {
  Volume filtered = vol;
  for (int k = 0; k < vol.slices(); ++k) filtered.set_bscan(k, median2d(vol.bscan(k), 3));
  Volume out = median_axial(filtered);
  out.set_provenance("t1");
  return out;
}

TemplateRef choose_template(const std::vector<std::string>& source_train_ids, std::uint64_t seed,
                            int cdf_bins) {
  if (source_train_ids.empty())
    throw DataError("cannot choose histogram template: source training partition is empty");
  Rng rng(Rng::derive(seed, 0x7e3f));
  const auto idx = rng.below(source_train_ids.size());
  return TemplateRef{source_train_ids[idx], seed, cdf_bins};
}

namespace {

inline int bin_of(float v, int bins) {
  const int b = static_cast<int>(static_cast<double>(v) * bins);
  return std::min(bins - 1, std::max(0, b));
}

}  // namespace

Volume histogram_match(const Volume& vol, const Volume& tmpl, int bins) {
  if (bins < 2) throw ConfigError("histogram_match requires bins >= 2");
  if (vol.voxels().empty() || tmpl.voxels().empty())
    throw DataError("histogram_match requires nonempty volumes");

  std::vector<std::uint64_t> vol_counts(bins, 0), tpl_counts(bins, 0);
  std::vector<float> tpl_min(bins, 1.0f);
  for (float v : vol.voxels()) ++vol_counts[bin_of(v, bins)];
  for (float v : tmpl.voxels()) {
    const int b = bin_of(v, bins);
    ++tpl_counts[b];
    tpl_min[b] = std::min(tpl_min[b], v);
  }
  std::vector<std::uint64_t> vol_cum(bins), tpl_cum(bins);
  std::uint64_t acc = 0;
  for (int b = 0; b < bins; ++b) vol_cum[b] = (acc += vol_counts[b]);
  acc = 0;
  for (int b = 0; b < bins; ++b) tpl_cum[b] = (acc += tpl_counts[b]);
  const std::uint64_t n_vol = vol_cum[bins - 1];
  const std::uint64_t n_tpl = tpl_cum[bins - 1];

  // CDF comparison F_tpl[tb] >= F_vol[b] done on cross-multiplied integer
  // counts to keep the quantile lookup exact. Both query and answer move
  // monotonically, so a single sweep builds the whole lookup table.
  std::vector<float> lut(bins);
  int tb = 0;
  for (int b = 0; b < bins; ++b) {
    while (tb < bins - 1 && tpl_cum[tb] * n_vol < vol_cum[b] * n_tpl) ++tb;
    lut[b] = tpl_min[tb];
  }

  Volume out = vol;
  for (float& v : out.voxels()) v = lut[bin_of(v, bins)];
  return out;
}

Volume transform_T2(const Volume& vol, const Volume& tmpl, int bins) {
  Volume out = transform_T1(histogram_match(vol, tmpl, bins));
  out.set_provenance("t2:template=" + tmpl.volume_id());
  return out;
}

std::vector<double> volume_histogram(const Volume& vol, int bins) {
  std::vector<double> hist(bins, 0.0);
  for (float v : vol.voxels()) hist[bin_of(v, bins)] += 1.0;
  const double n = static_cast<double>(vol.voxels().size());
  for (double& h : hist) h /= n;
  return hist;
}

double wasserstein1(const std::vector<double>& hist_a, const std::vector<double>& hist_b) {
  if (hist_a.size() != hist_b.size()) throw DataError("histogram size mismatch in wasserstein1");
  double cdf_a = 0.0, cdf_b = 0.0, dist = 0.0;
  for (std::size_t b = 0; b < hist_a.size(); ++b) {
    cdf_a += hist_a[b];
    cdf_b += hist_b[b];
    dist += std::abs(cdf_a - cdf_b);
  }
  return dist / static_cast<double>(hist_a.size());
}

}  // namespace octshift
