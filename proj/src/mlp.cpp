#include "dogan/mlp.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace dogan {

namespace {
std::atomic<std::int64_t> g_snapshot_counter{0};
}

int MlpArch::param_count() const {
  int n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    n += dims[l] * dims[l + 1] + dims[l + 1];
  }
  return n;
}

Mlp::Mlp(MlpArch arch) : arch_(std::move(arch)) {
  if (arch_.dims.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output dims");
  }
  for (std::size_t l = 0; l + 1 < arch_.dims.size(); ++l) {
    weights_.emplace_back(Eigen::MatrixXd::Zero(arch_.dims[l], arch_.dims[l + 1]));
    biases_.emplace_back(Eigen::RowVectorXd::Zero(arch_.dims[l + 1]));
  }
}

Mlp Mlp::random_init(const MlpArch& arch, std::mt19937_64& rng) {
  Mlp net(arch);
  for (std::size_t l = 0; l < net.weights_.size(); ++l) {
    int fan_in = arch.dims[l];
    int fan_out = arch.dims[l + 1];
    double a = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-a, a);
    for (int i = 0; i < fan_in; ++i) {
      for (int j = 0; j < fan_out; ++j) net.weights_[l](i, j) = dist(rng);
    }
  }
  return net;
}

namespace {

void apply_hidden(Hidden h, Eigen::MatrixXd& z) {
  if (h == Hidden::Tanh) {
    z = z.array().tanh();
  } else {
    z = z.cwiseMax(0.0);
  }
}

void apply_output(Output o, Eigen::MatrixXd& z) {
  if (o == Output::Sigmoid) {
    z = 1.0 / (1.0 + (-z.array()).exp());
  }
}

// Derivative of the activation from its post-activation value.
Eigen::ArrayXXd hidden_deriv(Hidden h, const Eigen::MatrixXd& a) {
  if (h == Hidden::Tanh) return 1.0 - a.array().square();
  return (a.array() > 0.0).cast<double>();
}

Eigen::ArrayXXd output_deriv(Output o, const Eigen::MatrixXd& a) {
  if (o == Output::Sigmoid) return a.array() * (1.0 - a.array());
  return Eigen::ArrayXXd::Ones(a.rows(), a.cols());
}

}  // namespace

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  Trace trace;
  return forward_traced(x, trace);
}

Eigen::MatrixXd Mlp::forward_traced(const Eigen::MatrixXd& x, Trace& trace) const {
  if (x.cols() != arch_.dims.front()) {
    throw std::invalid_argument("Mlp::forward: input width mismatch");
  }
  trace.acts.clear();
  trace.acts.reserve(weights_.size() + 1);
  trace.acts.push_back(x);
  Eigen::MatrixXd a = x;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = (a * weights_[l]).rowwise() + biases_[l];
    if (l + 1 < weights_.size()) {
      apply_hidden(arch_.hidden, z);
    } else {
      apply_output(arch_.output, z);
    }
    a = std::move(z);
    trace.acts.push_back(a);
  }
  return a;
}

Eigen::MatrixXd Mlp::backward(const Trace& trace, Eigen::MatrixXd grad_out,
                              Eigen::VectorXd& param_grads) const {
  if (param_grads.size() != arch_.param_count()) {
    throw std::invalid_argument("Mlp::backward: param_grads size mismatch");
  }
  const int layers = layer_count();
  int offset = arch_.param_count();
  Eigen::MatrixXd grad = std::move(grad_out);
  for (int l = layers - 1; l >= 0; --l) {
    const Eigen::MatrixXd& a = trace.acts[l + 1];
    Eigen::ArrayXXd deriv = (l == layers - 1) ? output_deriv(arch_.output, a)
                                              : hidden_deriv(arch_.hidden, a);
    Eigen::MatrixXd delta = grad.array() * deriv;
    const Eigen::MatrixXd& prev = trace.acts[l];
    int nb = static_cast<int>(biases_[l].size());
    int nw = static_cast<int>(weights_[l].size());
    offset -= nb;
    Eigen::Map<Eigen::RowVectorXd>(param_grads.data() + offset, nb) +=
        delta.colwise().sum();
    offset -= nw;
    Eigen::Map<Eigen::MatrixXd>(param_grads.data() + offset, weights_[l].rows(),
                                weights_[l].cols()) += prev.transpose() * delta;
    grad = delta * weights_[l].transpose();
  }
  return grad;
}

Eigen::VectorXd Mlp::params() const {
  Eigen::VectorXd flat(arch_.param_count());
  int offset = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    int nw = static_cast<int>(weights_[l].size());
    Eigen::Map<Eigen::MatrixXd>(flat.data() + offset, weights_[l].rows(),
                                weights_[l].cols()) = weights_[l];
    offset += nw;
    int nb = static_cast<int>(biases_[l].size());
    Eigen::Map<Eigen::RowVectorXd>(flat.data() + offset, nb) = biases_[l];
    offset += nb;
  }
  return flat;
}

void Mlp::set_params(const Eigen::VectorXd& flat) {
  if (flat.size() != arch_.param_count()) {
    throw std::invalid_argument("Mlp::set_params: parameter length mismatch");
  }
  int offset = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    int nw = static_cast<int>(weights_[l].size());
    weights_[l] = Eigen::Map<const Eigen::MatrixXd>(
        flat.data() + offset, weights_[l].rows(), weights_[l].cols());
    offset += nw;
    int nb = static_cast<int>(biases_[l].size());
    biases_[l] = Eigen::Map<const Eigen::RowVectorXd>(flat.data() + offset, nb);
    offset += nb;
  }
}

NetworkSnapshot snapshot(const Mlp& net, Role role) {
  NetworkSnapshot s;
  s.role = role;
  s.arch = net.arch();
  s.params = net.params();
  s.id = g_snapshot_counter.fetch_add(1);
  return s;
}

Mlp restore(const NetworkSnapshot& snap) {
  if (snap.params.size() != snap.arch.param_count()) {
    throw std::invalid_argument("restore: params do not match architecture");
  }
  Mlp net(snap.arch);
  net.set_params(snap.params);
  return net;
}

std::string snapshot_to_json(const NetworkSnapshot& snap) {
  nlohmann::json j;
  j["role"] = snap.role == Role::Generator ? "generator" : "discriminator";
  j["arch"]["dims"] = snap.arch.dims;
  j["arch"]["hidden"] = snap.arch.hidden == Hidden::Tanh ? "tanh" : "relu";
  j["arch"]["output"] = snap.arch.output == Output::Sigmoid ? "sigmoid" : "identity";
  j["params"] = std::vector<double>(snap.params.data(),
                                    snap.params.data() + snap.params.size());
  j["id"] = snap.id;
  return j.dump();
}

NetworkSnapshot snapshot_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NetworkSnapshot s;
  s.role = j.at("role") == "generator" ? Role::Generator : Role::Discriminator;
  s.arch.dims = j.at("arch").at("dims").get<std::vector<int>>();
  s.arch.hidden = j.at("arch").at("hidden") == "tanh" ? Hidden::Tanh : Hidden::Relu;
  s.arch.output = j.at("arch").at("output") == "sigmoid" ? Output::Sigmoid
                                                         : Output::Identity;
  auto p = j.at("params").get<std::vector<double>>();
  s.params = Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
  s.id = j.at("id").get<std::int64_t>();
  if (s.params.size() != s.arch.param_count()) {
    throw std::invalid_argument("snapshot_from_json: params do not match architecture");
  }
  return s;
}

}  // namespace dogan
