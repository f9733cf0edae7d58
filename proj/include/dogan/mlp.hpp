#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace dogan {

enum class Hidden { Tanh, Relu };
enum class Output { Identity, Sigmoid };
enum class Role { Generator, Discriminator };

struct MlpArch {
  std::vector<int> dims;  // input, hidden..., output
  Hidden hidden = Hidden::Tanh;
  Output output = Output::Identity;

  int param_count() const;
  bool operator==(const MlpArch&) const = default;
};

// Feed-forward network over row-major batches (one sample per row).
class Mlp {
 public:
  explicit Mlp(MlpArch arch);  // zero-initialized
  static Mlp random_init(const MlpArch& arch, std::mt19937_64& rng);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;

  // Post-activation values per layer; acts[0] is the input batch.
  struct Trace {
    std::vector<Eigen::MatrixXd> acts;
  };
  Eigen::MatrixXd forward_traced(const Eigen::MatrixXd& x, Trace& trace) const;

  // Backpropagates dL/d(output); accumulates flat parameter gradients into
  // param_grads (sized param_count, zeroed by the caller) and returns dL/dx.
  Eigen::MatrixXd backward(const Trace& trace, Eigen::MatrixXd grad_out,
                           Eigen::VectorXd& param_grads) const;

  Eigen::VectorXd params() const;
  void set_params(const Eigen::VectorXd& flat);

  const MlpArch& arch() const { return arch_; }
  int layer_count() const { return static_cast<int>(weights_.size()); }

 private:
  MlpArch arch_;
  std::vector<Eigen::MatrixXd> weights_;     // dims[l] x dims[l+1]
  std::vector<Eigen::RowVectorXd> biases_;   // dims[l+1]
};

// Frozen copy of a network's parameters: one pure strategy of the meta-game.
struct NetworkSnapshot {
  Role role = Role::Generator;
  MlpArch arch;
  Eigen::VectorXd params;
  std::int64_t id = -1;
};

NetworkSnapshot snapshot(const Mlp& net, Role role);
Mlp restore(const NetworkSnapshot& snap);

std::string snapshot_to_json(const NetworkSnapshot& snap);
NetworkSnapshot snapshot_from_json(const std::string& text);

}  // namespace dogan
