#include "dogan/oracles.hpp"

#include <stdexcept>

#include "dogan/adam.hpp"
#include "dogan/data.hpp"
#include "dogan/losses.hpp"
#include "dogan/rng.hpp"

namespace dogan {

int sample_index(const MixedStrategy& sigma, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  double acc = 0.0;
  for (int i = 0; i < sigma.size(); ++i) {
    acc += sigma(i);
    if (u < acc) return i;
  }
  return sigma.size() - 1;
}

namespace {

std::vector<Mlp> restore_all(const std::vector<NetworkSnapshot>& set) {
  std::vector<Mlp> nets;
  nets.reserve(set.size());
  for (const auto& s : set) nets.push_back(restore(s));
  return nets;
}

Eigen::MatrixXd mixture_batch(const std::vector<Mlp>& gens, const MixedStrategy& sigma,
                              int n, int noise_dim, std::mt19937_64& rng) {
  Eigen::MatrixXd z = sample_noise(noise_dim, n, rng);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = sample_index(sigma, rng);
  // Group rows by generator so each net does one batched forward.
  const int out_dim = gens.front().arch().dims.back();
  Eigen::MatrixXd fake(n, out_dim);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<int> rows;
    for (int i = 0; i < n; ++i) {
      if (idx[i] == static_cast<int>(gi)) rows.push_back(i);
    }
    if (rows.empty()) continue;
    Eigen::MatrixXd zg(rows.size(), noise_dim);
    for (std::size_t r = 0; r < rows.size(); ++r) zg.row(r) = z.row(rows[r]);
    Eigen::MatrixXd xg = gens[gi].forward(zg);
    for (std::size_t r = 0; r < rows.size(); ++r) fake.row(rows[r]) = xg.row(r);
  }
  return fake;
}

}  // namespace

Eigen::MatrixXd sample_mixture(const std::vector<NetworkSnapshot>& gens,
                               const MixedStrategy& sigma, int n,
                               std::mt19937_64& rng) {
  if (gens.empty()) throw std::invalid_argument("sample_mixture: empty generator set");
  if (static_cast<int>(gens.size()) != sigma.size()) {
    throw std::invalid_argument("sample_mixture: strategy/set size mismatch");
  }
  auto nets = restore_all(gens);
  return mixture_batch(nets, sigma, n, gens.front().arch.dims.front(), rng);
}

NetworkSnapshot generator_oracle(const MixedStrategy& sigma_d,
                                 const std::vector<NetworkSnapshot>& d_set,
                                 const OracleConfig& cfg, const MlpArch& gen_arch,
                                 std::mt19937_64& rng,
                                 const NetworkSnapshot* warm_from) {
  if (d_set.empty()) throw std::invalid_argument("generator_oracle: empty discriminator set");
  if (static_cast<int>(d_set.size()) != sigma_d.size()) {
    throw std::invalid_argument("generator_oracle: strategy/set size mismatch");
  }
  auto discs = restore_all(d_set);
  Mlp g = (cfg.warm_start && warm_from) ? restore(*warm_from)
                                        : Mlp::random_init(gen_arch, rng);
  AdamState opt = AdamState::init(gen_arch.param_count(), cfg.lr, cfg.beta1, cfg.beta2);
  Eigen::VectorXd params = g.params();
  const int noise_dim = gen_arch.dims.front();
  for (int it = 0; it < cfg.iterations; ++it) {
    Eigen::MatrixXd z = sample_noise(noise_dim, cfg.batch_size, rng);
    int di = sample_index(sigma_d, rng);
    LossGrad lg = g_loss_saturating(discs[di], g, z);
    adam_step(params, lg.grads, opt);
    g.set_params(params);
  }
  return snapshot(g, Role::Generator);
}

NetworkSnapshot discriminator_oracle(const MixedStrategy& sigma_g,
                                     const std::vector<NetworkSnapshot>& g_set,
                                     const OracleConfig& cfg, const MlpArch& disc_arch,
                                     const DataSampler& data, std::mt19937_64& rng,
                                     const NetworkSnapshot* warm_from) {
  if (g_set.empty()) throw std::invalid_argument("discriminator_oracle: empty generator set");
  if (static_cast<int>(g_set.size()) != sigma_g.size()) {
    throw std::invalid_argument("discriminator_oracle: strategy/set size mismatch");
  }
  if (!data) throw std::invalid_argument("discriminator_oracle: empty data source");
  auto gens = restore_all(g_set);
  Mlp d = (cfg.warm_start && warm_from) ? restore(*warm_from)
                                        : Mlp::random_init(disc_arch, rng);
  AdamState opt = AdamState::init(disc_arch.param_count(), cfg.lr, cfg.beta1, cfg.beta2);
  Eigen::VectorXd params = d.params();
  const int noise_dim = g_set.front().arch.dims.front();
  for (int it = 0; it < cfg.iterations; ++it) {
    Eigen::MatrixXd real = data(cfg.batch_size, rng);
    Eigen::MatrixXd fake = mixture_batch(gens, sigma_g, cfg.batch_size, noise_dim, rng);
    LossGrad lg = d_loss(d, real, fake);
    adam_step(params, lg.grads, opt);
    d.set_params(params);
  }
  return snapshot(d, Role::Discriminator);
}

double estimate_payoff(const NetworkSnapshot& g, const NetworkSnapshot& d,
                       const DataSampler& data, const OracleConfig& cfg) {
  if (g.role != Role::Generator || d.role != Role::Discriminator) {
    throw std::invalid_argument("estimate_payoff: snapshot roles are swapped or wrong");
  }
  if (cfg.payoff_batches < 1) {
    throw std::invalid_argument("estimate_payoff: payoff_batches must be >= 1");
  }
  Mlp gen = restore(g);
  Mlp disc = restore(d);
  // Private stream per (g, d) pair; safe for concurrent entry estimation.
  std::mt19937_64 rng = make_rng(mix_seed(cfg.seed, mix_seed(
      static_cast<std::uint64_t>(g.id), static_cast<std::uint64_t>(d.id))));
  const int noise_dim = g.arch.dims.front();
  double total = 0.0;
  for (int b = 0; b < cfg.payoff_batches; ++b) {
    Eigen::MatrixXd real = data(cfg.batch_size, rng);
    Eigen::MatrixXd fake = gen.forward(sample_noise(noise_dim, cfg.batch_size, rng));
    total += d_loss_value(disc, real, fake);
  }
  return total / cfg.payoff_batches;
}

}  // namespace dogan
