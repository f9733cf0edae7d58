#include "dogan/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace dogan {

namespace {

Eigen::ArrayXd clamped_probs(const Eigen::MatrixXd& out) {
  if (out.cols() != 1) {
    throw std::invalid_argument("discriminator must have a single output");
  }
  return out.col(0).array().max(kProbClamp).min(1.0 - kProbClamp);
}

void check_nonempty(const Eigen::MatrixXd& batch, const char* what) {
  if (batch.rows() < 1) {
    throw std::invalid_argument(std::string(what) + ": empty batch");
  }
}

}  // namespace

LossGrad d_loss(const Mlp& d, const Eigen::MatrixXd& real_batch,
                const Eigen::MatrixXd& fake_batch) {
  check_nonempty(real_batch, "d_loss real");
  check_nonempty(fake_batch, "d_loss fake");

  LossGrad r;
  r.grads = Eigen::VectorXd::Zero(d.arch().param_count());

  Mlp::Trace tr;
  Eigen::MatrixXd out_r = d.forward_traced(real_batch, tr);
  Eigen::ArrayXd p_r = clamped_probs(out_r);
  double br = static_cast<double>(real_batch.rows());
  r.loss += -p_r.log().sum() / br;
  Eigen::MatrixXd grad_r(out_r.rows(), 1);
  grad_r.col(0) = (-1.0 / (p_r * br)).matrix();
  d.backward(tr, std::move(grad_r), r.grads);

  Mlp::Trace tf;
  Eigen::MatrixXd out_f = d.forward_traced(fake_batch, tf);
  Eigen::ArrayXd p_f = clamped_probs(out_f);
  double bf = static_cast<double>(fake_batch.rows());
  r.loss += -(1.0 - p_f).log().sum() / bf;
  Eigen::MatrixXd grad_f(out_f.rows(), 1);
  grad_f.col(0) = (1.0 / ((1.0 - p_f) * bf)).matrix();
  d.backward(tf, std::move(grad_f), r.grads);

  return r;
}

double d_loss_value(const Mlp& d, const Eigen::MatrixXd& real_batch,
                    const Eigen::MatrixXd& fake_batch) {
  check_nonempty(real_batch, "d_loss real");
  check_nonempty(fake_batch, "d_loss fake");
  Eigen::ArrayXd p_r = clamped_probs(d.forward(real_batch));
  Eigen::ArrayXd p_f = clamped_probs(d.forward(fake_batch));
  return -p_r.log().mean() - (1.0 - p_f).log().mean();
}

LossGrad g_loss_saturating(const Mlp& d, const Mlp& g, const Eigen::MatrixXd& z_batch) {
  check_nonempty(z_batch, "g_loss_saturating");

  Mlp::Trace tg;
  Eigen::MatrixXd x_fake = g.forward_traced(z_batch, tg);
  Mlp::Trace td;
  Eigen::MatrixXd out = d.forward_traced(x_fake, td);
  Eigen::ArrayXd p = clamped_probs(out);
  double b = static_cast<double>(z_batch.rows());

  LossGrad r;
  r.loss = (1.0 - p).log().mean();
  Eigen::MatrixXd grad_p(out.rows(), 1);
  grad_p.col(0) = (-1.0 / ((1.0 - p) * b)).matrix();
  Eigen::VectorXd d_grads = Eigen::VectorXd::Zero(d.arch().param_count());
  Eigen::MatrixXd grad_x = d.backward(td, std::move(grad_p), d_grads);
  r.grads = Eigen::VectorXd::Zero(g.arch().param_count());
  g.backward(tg, std::move(grad_x), r.grads);
  return r;
}

LossGrad g_loss_ewc(const Mlp& d, const Mlp& g, const Eigen::MatrixXd& z_batch,
                    const EwcState& ewc) {
  check_nonempty(z_batch, "g_loss_ewc");
  const int n = g.arch().param_count();
  if (ewc.fisher.size() != n || ewc.anchor.size() != n) {
    throw std::invalid_argument("g_loss_ewc: EWC state does not match generator size");
  }

  Mlp::Trace tg;
  Eigen::MatrixXd x_fake = g.forward_traced(z_batch, tg);
  Mlp::Trace td;
  Eigen::MatrixXd out = d.forward_traced(x_fake, td);
  Eigen::ArrayXd p = clamped_probs(out);
  double b = static_cast<double>(z_batch.rows());

  LossGrad r;
  r.loss = -p.log().mean();
  Eigen::MatrixXd grad_p(out.rows(), 1);
  grad_p.col(0) = (-1.0 / (p * b)).matrix();
  Eigen::VectorXd d_grads = Eigen::VectorXd::Zero(d.arch().param_count());
  Eigen::MatrixXd grad_x = d.backward(td, std::move(grad_p), d_grads);
  r.grads = Eigen::VectorXd::Zero(n);
  g.backward(tg, std::move(grad_x), r.grads);

  const double w = ewc.lambda * ewc.task_weight;
  Eigen::VectorXd disp = g.params() - ewc.anchor;
  r.loss += w * (ewc.fisher.array() * disp.array().square()).sum();
  r.grads += 2.0 * w * (ewc.fisher.array() * disp.array()).matrix();
  return r;
}

Eigen::VectorXd fisher_diag(const Mlp& d, const Mlp& g, const Eigen::MatrixXd& z_samples) {
  check_nonempty(z_samples, "fisher_diag");
  const int n = g.arch().param_count();
  Eigen::VectorXd fisher = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad(n);
  for (int i = 0; i < z_samples.rows(); ++i) {
    Mlp::Trace tg;
    Eigen::MatrixXd x = g.forward_traced(z_samples.row(i), tg);
    Mlp::Trace td;
    Eigen::MatrixXd out = d.forward_traced(x, td);
    double p = std::clamp(out(0, 0), kProbClamp, 1.0 - kProbClamp);
    Eigen::MatrixXd grad_p(1, 1);
    grad_p(0, 0) = 1.0 / p;  // d(log p)/dp
    Eigen::VectorXd d_grads = Eigen::VectorXd::Zero(d.arch().param_count());
    Eigen::MatrixXd grad_x = d.backward(td, std::move(grad_p), d_grads);
    grad.setZero();
    g.backward(tg, std::move(grad_x), grad);
    fisher += grad.cwiseProduct(grad);
  }
  return fisher / static_cast<double>(z_samples.rows());
}

}  // namespace dogan
