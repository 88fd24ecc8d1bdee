#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <vector>

#include "octshift/errors.hpp"
#include "octshift/volume.hpp"

namespace octshift {

// Per-B-scan k x k median with edge replication; k must be odd. Output
// values are a subset of input values, so the range can only shrink.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> median2d(
    const Eigen::MatrixBase<Derived>& image, int k) {
  using Scalar = typename Derived::Scalar;
  if (k < 1 || k % 2 == 0) throw ConfigError("median kernel size must be odd and >= 1");
  const int rows = static_cast<int>(image.rows());
  const int cols = static_cast<int>(image.cols());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(rows, cols);
  if (k == 1) {
    out = image;
    return out;
  }
  const int half = k / 2;
  const int window = k * k;
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    std::vector<Scalar> buf(window);
    for (int c = 0; c < cols; ++c) {
      int n = 0;
      for (int dr = -half; dr <= half; ++dr) {
        const int rr = std::clamp(r + dr, 0, rows - 1);
        for (int dc = -half; dc <= half; ++dc)
          buf[n++] = image(rr, std::clamp(c + dc, 0, cols - 1));
      }
      std::nth_element(buf.begin(), buf.begin() + window / 2, buf.end());
      out(r, c) = buf[window / 2];
    }
  }
  return out;
}

// 1 x 1 x 3 median across B-scans with edge replication along the slice
// axis; a single-slice volume is returned unchanged.
Volume median_axial(const Volume& vol);

// median2d(k=3) applied B-scan-wise, followed by median_axial.
Volume transform_T1(const Volume& vol);

struct TemplateRef {
  std::string volume_id;
  std::uint64_t selection_seed = 0;
  int cdf_bins = 256;
};

// Seeded uniform draw from the source-domain training partition.
TemplateRef choose_template(const std::vector<std::string>& source_train_ids, std::uint64_t seed,
                            int cdf_bins = 256);

// Monotone map M(v) = Q_template(F_vol(v)) built from whole-volume empirical
// CDFs over `bins` uniform bins on [0,1]. Q is the left-continuous quantile:
// the smallest occupied template bin whose CDF reaches the query mass,
// realized as the minimum template intensity within that bin (which makes
// self-matching exact whenever each occupied bin holds a single value).
Volume histogram_match(const Volume& vol, const Volume& tmpl, int bins = 256);

// histogram_match against the template, then the T1 filter chain.
Volume transform_T2(const Volume& vol, const Volume& tmpl, int bins = 256);

// Whole-volume intensity histogram over uniform bins on [0,1], normalized
// to sum 1.
std::vector<double> volume_histogram(const Volume& vol, int bins = 256);

// 1D optimal-transport distance between two normalized histograms on the
// shared [0,1] grid: sum |CDF_a - CDF_b| * bin_width.
double wasserstein1(const std::vector<double>& hist_a, const std::vector<double>& hist_b);

// Mean absolute 4-neighbor Laplacian response with replicated edges; the
// per-B-scan noise feature used to characterize domain separation.
template <typename Derived>
double mean_abs_laplacian(const Eigen::MatrixBase<Derived>& image) {
  const int rows = static_cast<int>(image.rows());
  const int cols = static_cast<int>(image.cols());
  double acc = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double center = image(r, c);
      const double lap = image(std::max(r - 1, 0), c) + image(std::min(r + 1, rows - 1), c) +
                         image(r, std::max(c - 1, 0)) + image(r, std::min(c + 1, cols - 1)) -
                         4.0 * center;
      acc += std::abs(lap);
    }
  }
  return acc / (static_cast<double>(rows) * cols);
}

}  // namespace octshift
