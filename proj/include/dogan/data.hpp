#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace dogan {

// Modes sit at angles 2*pi*k/K on a circle of ring_radius; each sample picks
// a mode uniformly and adds isotropic Gaussian noise of cluster_std.
struct GaussianMixtureConfig {
  int modes = 8;
  double ring_radius = 2.0;
  double cluster_std = 0.1;
  std::uint64_t seed = 0;
};

std::vector<Eigen::Vector2d> mode_centers(const GaussianMixtureConfig& cfg);

Eigen::MatrixXd sample_real(const GaussianMixtureConfig& cfg, int n, std::mt19937_64& rng);

// i.i.d. standard normal batch, one sample per row.
Eigen::MatrixXd sample_noise(int dim, int n, std::mt19937_64& rng);

struct CoverageReport {
  int modes_recovered = 0;
  std::vector<int> per_mode_counts;
  double high_quality_fraction = 0.0;
};

// A sample counts toward its nearest mode when within
// assign_radius_mult * cluster_std of the center; a mode is recovered once
// its count reaches min_count.
CoverageReport mode_coverage(const Eigen::MatrixXd& samples,
                             const GaussianMixtureConfig& cfg,
                             double assign_radius_mult = 3.0, int min_count = 20);

void write_samples_csv(const Eigen::MatrixXd& samples, std::ostream& out);

}  // namespace dogan
