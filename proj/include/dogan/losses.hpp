#pragma once

#include <Eigen/Dense>

#include "dogan/mlp.hpp"

namespace dogan {

// Discriminator probabilities are clamped to [kProbClamp, 1 - kProbClamp]
// before any log, so saturated outputs cannot produce infinite losses.
inline constexpr double kProbClamp = 1e-7;

struct LossGrad {
  double loss = 0.0;
  Eigen::VectorXd grads;
};

// L_D = E[-log D(x)] + E[-log(1 - D(G(z)))], gradients w.r.t. D's parameters.
LossGrad d_loss(const Mlp& d, const Eigen::MatrixXd& real_batch,
                const Eigen::MatrixXd& fake_batch);

// Loss value only (no backward pass); used for payoff estimation.
double d_loss_value(const Mlp& d, const Eigen::MatrixXd& real_batch,
                    const Eigen::MatrixXd& fake_batch);

// Saturating generator loss L_G = E[log(1 - D(G(z)))], gradients w.r.t. G
// only; D is frozen.
LossGrad g_loss_saturating(const Mlp& d, const Mlp& g, const Eigen::MatrixXd& z_batch);

// Fisher diagonal and anchor parameters for the continual variant's penalty.
struct EwcState {
  Eigen::VectorXd fisher;
  Eigen::VectorXd anchor;
  double lambda = 0.0;
  double task_weight = 1.0;
};

// L_G = E[-log D(G(z))] + lambda * task_weight * sum_i F_i (pi_i - anchor_i)^2.
LossGrad g_loss_ewc(const Mlp& d, const Mlp& g, const Eigen::MatrixXd& z_batch,
                    const EwcState& ewc);

// Empirical diagonal Fisher information: mean over z of the squared
// per-parameter gradient of log D(G(z)) w.r.t. G's parameters.
Eigen::VectorXd fisher_diag(const Mlp& d, const Mlp& g, const Eigen::MatrixXd& z_samples);

}  // namespace dogan
