#include "doctest.h"

#include <cmath>

#include "dogan/data.hpp"
#include "dogan/losses.hpp"
#include "dogan/oracles.hpp"

using namespace dogan;

namespace {

const MlpArch kGen{{2, 16, 16, 2}, Hidden::Tanh, Output::Identity};
const MlpArch kDis{{2, 16, 16, 1}, Hidden::Relu, Output::Sigmoid};

DataSampler ring_sampler(const GaussianMixtureConfig& cfg) {
  return [cfg](int n, std::mt19937_64& rng) { return sample_real(cfg, n, rng); };
}

NetworkSnapshot random_snapshot(const MlpArch& arch, Role role, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return snapshot(Mlp::random_init(arch, rng), role);
}

MixedStrategy strat(std::initializer_list<double> p) {
  Eigen::VectorXd v(p.size());
  int i = 0;
  for (double x : p) v(i++) = x;
  return MixedStrategy(v);
}

}  // namespace

TEST_CASE("sample_index") {
  std::mt19937_64 rng(1);
  SUBCASE("point mass always hits its atom") {
    MixedStrategy pm = MixedStrategy::point_mass(5, 3);
    for (int i = 0; i < 200; ++i) CHECK(sample_index(pm, rng) == 3);
  }
  SUBCASE("zero-probability entries are never drawn") {
    MixedStrategy sigma = strat({0.5, 0.0, 0.5});
    for (int i = 0; i < 500; ++i) CHECK(sample_index(sigma, rng) != 1);
  }
  SUBCASE("frequencies track probabilities within 3 standard errors") {
    MixedStrategy sigma = strat({0.2, 0.5, 0.3});
    const int n = 20000;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) ++counts[sample_index(sigma, rng)];
    for (int k = 0; k < 3; ++k) {
      double p = sigma(k);
      double se = std::sqrt(n * p * (1 - p));
      CHECK(std::abs(counts[k] - n * p) <= 3 * se);
    }
  }
}

TEST_CASE("sample_mixture") {
  std::mt19937_64 rng(3);
  std::vector<NetworkSnapshot> gens = {random_snapshot(kGen, Role::Generator, 10),
                                       random_snapshot(kGen, Role::Generator, 11)};
  SUBCASE("point mass reproduces the single generator's pushforward") {
    std::mt19937_64 r1(7), r2(7);
    Eigen::MatrixXd mixed =
        sample_mixture(gens, MixedStrategy::point_mass(2, 1), 16, r1);
    Mlp g = restore(gens[1]);
    Eigen::MatrixXd direct = g.forward(sample_noise(2, 16, r2));
    CHECK((mixed - direct).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("shape and argument checks") {
    Eigen::MatrixXd out = sample_mixture(gens, MixedStrategy::uniform(2), 32, rng);
    CHECK(out.rows() == 32);
    CHECK(out.cols() == 2);
    CHECK_THROWS_AS(sample_mixture(gens, MixedStrategy::uniform(3), 4, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_mixture({}, MixedStrategy::uniform(2), 4, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("estimate_payoff") {
  GaussianMixtureConfig data_cfg;
  DataSampler data = ring_sampler(data_cfg);
  NetworkSnapshot g = random_snapshot(kGen, Role::Generator, 21);
  NetworkSnapshot d = random_snapshot(kDis, Role::Discriminator, 22);
  OracleConfig cfg;
  cfg.seed = 99;

  SUBCASE("deterministic per (seed, pair), distinct across pairs") {
    double a = estimate_payoff(g, d, data, cfg);
    double b = estimate_payoff(g, d, data, cfg);
    CHECK(a == b);
    NetworkSnapshot g2 = random_snapshot(kGen, Role::Generator, 23);
    CHECK(estimate_payoff(g2, d, data, cfg) != a);
    OracleConfig other = cfg;
    other.seed = 100;
    CHECK(estimate_payoff(g, d, data, other) != a);
  }
  SUBCASE("constant D = 0.5 gives exactly 2 ln 2") {
    Mlp half(kDis);  // zero weights -> logit 0 -> D = 0.5 everywhere
    NetworkSnapshot hd = snapshot(half, Role::Discriminator);
    double v = estimate_payoff(g, hd, data, cfg);
    CHECK(v == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("more batches shrink the estimator's spread") {
    auto spread = [&](int batches) {
      OracleConfig c = cfg;
      c.payoff_batches = batches;
      double lo = 1e300, hi = -1e300;
      for (std::uint64_t s = 0; s < 24; ++s) {
        c.seed = s;
        double v = estimate_payoff(g, d, data, c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return hi - lo;
    };
    CHECK(spread(32) < spread(1));
  }
  SUBCASE("swapped roles are rejected") {
    CHECK_THROWS_AS(estimate_payoff(d, g, data, cfg), std::invalid_argument);
  }
}

TEST_CASE("generator_oracle improves against the fixed mixture") {
  GaussianMixtureConfig data_cfg;
  data_cfg.modes = 2;
  DataSampler data = ring_sampler(data_cfg);
  std::mt19937_64 rng(31);

  std::vector<NetworkSnapshot> d_set = {random_snapshot(kDis, Role::Discriminator, 41),
                                        random_snapshot(kDis, Role::Discriminator, 42)};
  MixedStrategy sigma_d = strat({0.5, 0.5});
  OracleConfig cfg;
  cfg.iterations = 300;
  cfg.lr = 1e-3;
  cfg.seed = 7;

  // The generator maximizes L_D (minimizes its own saturating loss), so the
  // trained response should score at least as well as a random generator,
  // averaged over the discriminator mixture.
  NetworkSnapshot before = random_snapshot(kGen, Role::Generator, 43);
  NetworkSnapshot after = generator_oracle(sigma_d, d_set, cfg, kGen, rng);
  CHECK(after.role == Role::Generator);
  CHECK(after.arch == kGen);

  auto mixture_payoff = [&](const NetworkSnapshot& g) {
    double total = 0.0;
    for (std::size_t j = 0; j < d_set.size(); ++j) {
      total += sigma_d(static_cast<int>(j)) * estimate_payoff(g, d_set[j], data, cfg);
    }
    return total;
  };
  CHECK(mixture_payoff(after) > mixture_payoff(before));

  SUBCASE("seeded determinism") {
    std::mt19937_64 r1(55), r2(55);
    NetworkSnapshot a = generator_oracle(sigma_d, d_set, cfg, kGen, r1);
    NetworkSnapshot b = generator_oracle(sigma_d, d_set, cfg, kGen, r2);
    CHECK((a.params - b.params).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("warm start resumes from the given snapshot") {
    OracleConfig frozen = cfg;
    frozen.iterations = 1;
    frozen.lr = 0.0;  // zero step: output must equal the warm-start params
    frozen.warm_start = true;
    std::mt19937_64 r(66);
    NetworkSnapshot out = generator_oracle(sigma_d, d_set, frozen, kGen, r, &before);
    CHECK((out.params - before.params).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("discriminator_oracle improves against the fixed mixture") {
  GaussianMixtureConfig data_cfg;
  data_cfg.modes = 2;
  DataSampler data = ring_sampler(data_cfg);
  std::mt19937_64 rng(37);

  std::vector<NetworkSnapshot> g_set = {random_snapshot(kGen, Role::Generator, 51),
                                        random_snapshot(kGen, Role::Generator, 52)};
  MixedStrategy sigma_g = strat({0.25, 0.75});
  OracleConfig cfg;
  cfg.iterations = 300;
  cfg.lr = 1e-3;
  cfg.seed = 9;

  NetworkSnapshot before = random_snapshot(kDis, Role::Discriminator, 53);
  NetworkSnapshot after = discriminator_oracle(sigma_g, g_set, cfg, kDis, data, rng);
  CHECK(after.role == Role::Discriminator);

  // The discriminator minimizes L_D, i.e. the meta-payoff to the generator
  // mixture should drop.
  auto mixture_payoff = [&](const NetworkSnapshot& d) {
    double total = 0.0;
    for (std::size_t i = 0; i < g_set.size(); ++i) {
      total += sigma_g(static_cast<int>(i)) * estimate_payoff(g_set[i], d, data, cfg);
    }
    return total;
  };
  CHECK(mixture_payoff(after) < mixture_payoff(before));

  SUBCASE("seeded determinism") {
    std::mt19937_64 r1(77), r2(77);
    NetworkSnapshot a = discriminator_oracle(sigma_g, g_set, cfg, kDis, data, r1);
    NetworkSnapshot b = discriminator_oracle(sigma_g, g_set, cfg, kDis, data, r2);
    CHECK((a.params - b.params).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("untrained discriminator payoff is consistent with d_loss") {
    // One generator, one zero-init discriminator: U must be 2 ln 2 exactly
    // (constant D = 0.5 regardless of batches).
    NetworkSnapshot zero_d = snapshot(Mlp(kDis), Role::Discriminator);
    double u = estimate_payoff(g_set[0], zero_d, data, cfg);
    CHECK(u == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
  }
}
