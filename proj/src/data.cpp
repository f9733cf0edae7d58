#include "dogan/data.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dogan {

std::vector<Eigen::Vector2d> mode_centers(const GaussianMixtureConfig& cfg) {
  if (cfg.modes < 1) {
    throw std::invalid_argument("GaussianMixtureConfig: modes must be >= 1");
  }
  std::vector<Eigen::Vector2d> centers(cfg.modes);
  for (int k = 0; k < cfg.modes; ++k) {
    double angle = 2.0 * M_PI * k / cfg.modes;
    centers[k] = cfg.ring_radius * Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }
  return centers;
}

Eigen::MatrixXd sample_real(const GaussianMixtureConfig& cfg, int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample_real: n must be >= 1");
  if (cfg.cluster_std < 0.0) throw std::invalid_argument("sample_real: negative cluster_std");
  auto centers = mode_centers(cfg);
  std::uniform_int_distribution<int> mode(0, cfg.modes - 1);
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd out(n, 2);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d& c = centers[mode(rng)];
    out(i, 0) = c.x() + cfg.cluster_std * noise(rng);
    out(i, 1) = c.y() + cfg.cluster_std * noise(rng);
  }
  return out;
}

Eigen::MatrixXd sample_noise(int dim, int n, std::mt19937_64& rng) {
  if (dim < 1 || n < 1) throw std::invalid_argument("sample_noise: dim and n must be >= 1");
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd out(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) out(i, j) = noise(rng);
  }
  return out;
}

CoverageReport mode_coverage(const Eigen::MatrixXd& samples,
                             const GaussianMixtureConfig& cfg,
                             double assign_radius_mult, int min_count) {
  if (samples.rows() < 1 || samples.cols() != 2) {
    throw std::invalid_argument("mode_coverage: expects a non-empty n x 2 batch");
  }
  auto centers = mode_centers(cfg);
  const double radius = assign_radius_mult * cfg.cluster_std;
  CoverageReport r;
  r.per_mode_counts.assign(cfg.modes, 0);
  int assigned = 0;
  for (int i = 0; i < samples.rows(); ++i) {
    Eigen::Vector2d p = samples.row(i).transpose();
    int best = 0;
    double best_d = (p - centers[0]).norm();
    for (int k = 1; k < cfg.modes; ++k) {
      double d = (p - centers[k]).norm();
      if (d < best_d) { best = k; best_d = d; }
    }
    if (best_d <= radius) {
      ++r.per_mode_counts[best];
      ++assigned;
    }
  }
  for (int k = 0; k < cfg.modes; ++k) {
    if (r.per_mode_counts[k] >= min_count) ++r.modes_recovered;
  }
  r.high_quality_fraction = static_cast<double>(assigned) / samples.rows();
  return r;
}

void write_samples_csv(const Eigen::MatrixXd& samples, std::ostream& out) {
  out << "x,y\n";
  out.precision(17);
  for (int i = 0; i < samples.rows(); ++i) {
    out << samples(i, 0) << "," << samples(i, 1) << "\n";
  }
}

}  // namespace dogan
