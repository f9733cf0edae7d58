#pragma once

#include <Eigen/Dense>

namespace dogan {

// Bias-corrected Adam. Defaults follow the vanilla-GAN training setup
// (lr 0.0002, beta1 0.5, beta2 0.999).
struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;
  double lr = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState init(int param_count, double lr = 2e-4, double beta1 = 0.5,
                        double beta2 = 0.999);
};

// One descent step; throws on non-finite gradients.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grads, AdamState& state);

}  // namespace dogan
