#include "dogan/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace dogan {

AdamState AdamState::init(int param_count, double lr, double beta1, double beta2) {
  AdamState s;
  s.m = Eigen::VectorXd::Zero(param_count);
  s.v = Eigen::VectorXd::Zero(param_count);
  s.lr = lr;
  s.beta1 = beta1;
  s.beta2 = beta2;
  return s;
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grads, AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw std::invalid_argument("adam_step: size mismatch");
  }
  if (!grads.allFinite()) {
    throw std::runtime_error("adam_step: non-finite gradients");
  }
  state.step += 1;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grads;
  state.v = state.beta2 * state.v + (1.0 - state.beta2) * grads.cwiseProduct(grads);
  double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  Eigen::ArrayXd m_hat = state.m.array() / c1;
  Eigen::ArrayXd v_hat = state.v.array() / c2;
  params.array() -= state.lr * m_hat / (v_hat.sqrt() + state.eps);
}

}  // namespace dogan
