#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dogan/data.hpp"
#include "dogan/matrix_game.hpp"
#include "dogan/mlp.hpp"
#include "dogan/oracles.hpp"

namespace dogan {

enum class Variant { Plain, Prune, Continual, Vanilla };

enum class RunStatus { Converged, MaxEpochs };

struct DoConfig {
  Variant variant = Variant::Plain;
  double epsilon = 5e-5;
  int support_limit = 10;       // s, prune variant
  int max_epochs = 400;
  OracleConfig oracle;
  int bootstrap_iterations = -1;  // <0: 10x oracle.iterations
  double lambda = 100.0;          // EWC weight, continual variant
  std::uint64_t seed = 0;
  GaussianMixtureConfig data;
  int noise_dim = 2;
  int hidden_width = 64;
  std::string run_dir;            // empty: keep everything in memory
  int sample_every = 0;           // dump samples-epoch-{t}.csv every N epochs
  int fisher_samples = 256;

  MlpArch generator_arch() const;
  MlpArch discriminator_arch() const;
  int resolved_bootstrap() const;
  void validate() const;
};

struct EpochLog {
  int t = 0;
  int m = 0;
  int n = 0;
  double value = 0.0;
  double gen_inc = 0.0;
  double dis_inc = 0.0;
  std::vector<std::int64_t> support_g;
  std::vector<std::int64_t> support_d;
  int snapshots_on_disk = 0;
  // Continual variant only: ||new task params - anchor||.
  double anchor_displacement = std::numeric_limits<double>::quiet_NaN();
};

struct RunRecord {
  std::vector<EpochLog> epochs;
  RunStatus status = RunStatus::MaxEpochs;
  PayoffMatrix payoffs;
  MixedStrategy sigma_g;
  MixedStrategy sigma_d;
  std::vector<NetworkSnapshot> generators;
  std::vector<NetworkSnapshot> discriminators;
};

// Runs the variant selected by cfg.variant end to end.
RunRecord run_do_gan(const DoConfig& cfg, const DataSampler& data);

std::string epoch_to_jsonl(const EpochLog& e);

// Double oracle on a fully known matrix with exact argmax/argmin best
// responses; ground-truth harness for the neural loop.
struct FiniteRecord {
  MetaSolution solution;  // strategies lifted to the full game's dimensions
  int iterations = 0;
  std::vector<int> rows;
  std::vector<int> cols;
};
FiniteRecord run_do_finite(const PayoffMatrix& full_game, double epsilon,
                           std::uint64_t seed);

}  // namespace dogan
