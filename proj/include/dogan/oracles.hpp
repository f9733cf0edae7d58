#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dogan/matrix_game.hpp"
#include "dogan/mlp.hpp"

namespace dogan {

// Produces a batch of real data (one sample per row) from a caller-owned
// seeded stream.
using DataSampler = std::function<Eigen::MatrixXd(int n, std::mt19937_64& rng)>;

struct OracleConfig {
  int iterations = 50;    // per-oracle training iterations (2D default)
  int batch_size = 64;
  double lr = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  int payoff_batches = 16;
  std::uint64_t seed = 0;
  // Off by default: fresh random init per oracle call. When set, training
  // continues from the opponent-facing player's previous best response.
  bool warm_start = false;
};

// Inverse-CDF draw from a mixed strategy.
int sample_index(const MixedStrategy& sigma, std::mt19937_64& rng);

// Trains a fresh generator (or a warm-started copy) against the fixed
// discriminator mixture: each iteration samples noise, draws one
// discriminator from sigma_d, and descends the saturating loss via Adam.
NetworkSnapshot generator_oracle(const MixedStrategy& sigma_d,
                                 const std::vector<NetworkSnapshot>& d_set,
                                 const OracleConfig& cfg, const MlpArch& gen_arch,
                                 std::mt19937_64& rng,
                                 const NetworkSnapshot* warm_from = nullptr);

// Trains a discriminator against the fixed generator mixture: each fake
// sample in a minibatch draws its generator independently from sigma_g.
NetworkSnapshot discriminator_oracle(const MixedStrategy& sigma_g,
                                     const std::vector<NetworkSnapshot>& g_set,
                                     const OracleConfig& cfg, const MlpArch& disc_arch,
                                     const DataSampler& data, std::mt19937_64& rng,
                                     const NetworkSnapshot* warm_from = nullptr);

// Meta-matrix entry U(g, d): mean of L_D over payoff_batches independent
// batches. Deterministic given cfg.seed and the snapshot ids, so distinct
// (g, d) pairs own private noise streams.
double estimate_payoff(const NetworkSnapshot& g, const NetworkSnapshot& d,
                       const DataSampler& data, const OracleConfig& cfg);

// Fake batch where each row draws its generator from sigma over `gens`.
Eigen::MatrixXd sample_mixture(const std::vector<NetworkSnapshot>& gens,
                               const MixedStrategy& sigma, int n,
                               std::mt19937_64& rng);

}  // namespace dogan
