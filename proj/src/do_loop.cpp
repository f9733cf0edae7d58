#include "dogan/do_loop.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "dogan/adam.hpp"
#include "dogan/losses.hpp"
#include "dogan/rng.hpp"

namespace fs = std::filesystem;

namespace dogan {

MlpArch DoConfig::generator_arch() const {
  return MlpArch{{noise_dim, hidden_width, hidden_width, 2}, Hidden::Tanh,
                 Output::Identity};
}

MlpArch DoConfig::discriminator_arch() const {
  return MlpArch{{2, hidden_width, hidden_width, 1}, Hidden::Relu, Output::Sigmoid};
}

int DoConfig::resolved_bootstrap() const {
  return bootstrap_iterations >= 0 ? bootstrap_iterations : 10 * oracle.iterations;
}

void DoConfig::validate() const {
  if (epsilon <= 0.0) throw std::invalid_argument("DoConfig: epsilon must be > 0");
  if (max_epochs < 1) throw std::invalid_argument("DoConfig: max_epochs must be >= 1");
  if (variant == Variant::Prune && support_limit < 2) {
    throw std::invalid_argument("DoConfig: prune variant needs s >= 2");
  }
  if (oracle.iterations < 1 || oracle.batch_size < 1 || oracle.payoff_batches < 1) {
    throw std::invalid_argument("DoConfig: oracle iterations, batch_size and payoff_batches must be >= 1");
  }
}

std::string epoch_to_jsonl(const EpochLog& e) {
  nlohmann::json j;
  j["t"] = e.t;
  j["m"] = e.m;
  j["n"] = e.n;
  j["value"] = e.value;
  j["genInc"] = e.gen_inc;
  j["disInc"] = e.dis_inc;
  j["support_g"] = e.support_g;
  j["support_d"] = e.support_d;
  j["snapshots_on_disk"] = e.snapshots_on_disk;
  if (!std::isnan(e.anchor_displacement)) {
    j["anchor_displacement"] = e.anchor_displacement;
  }
  return j.dump();
}

namespace {

// Snapshot files and the epochs.jsonl stream for one run directory; inert
// when the config has no run_dir.
class RunDir {
 public:
  explicit RunDir(const std::string& dir) : dir_(dir) {
    if (dir_.empty()) return;
    fs::create_directories(fs::path(dir_) / "snapshots");
    epochs_.open(fs::path(dir_) / "epochs.jsonl", std::ios::trunc);
    if (!epochs_) throw std::runtime_error("cannot open epochs.jsonl under " + dir_);
  }

  bool active() const { return !dir_.empty(); }

  void store(const NetworkSnapshot& s) {
    if (!active()) return;
    std::ofstream out(snapshot_path(s.role, s.id), std::ios::trunc);
    out << snapshot_to_json(s);
  }

  void drop(Role role, std::int64_t id) {
    if (!active()) return;
    fs::remove(snapshot_path(role, id));
  }

  int snapshot_files() const {
    if (!active()) return -1;
    int n = 0;
    for (const auto& e : fs::directory_iterator(fs::path(dir_) / "snapshots")) {
      if (e.is_regular_file()) ++n;
    }
    return n;
  }

  void log(const EpochLog& e) {
    if (!active()) return;
    epochs_ << epoch_to_jsonl(e) << "\n";
    epochs_.flush();
  }

  void dump_samples(int t, const Eigen::MatrixXd& samples) {
    if (!active()) return;
    std::ofstream out(fs::path(dir_) / ("samples-epoch-" + std::to_string(t) + ".csv"),
                      std::ios::trunc);
    write_samples_csv(samples, out);
  }

 private:
  fs::path snapshot_path(Role role, std::int64_t id) const {
    const char* name = role == Role::Generator ? "generator-" : "discriminator-";
    return fs::path(dir_) / "snapshots" / (name + std::to_string(id) + ".json");
  }

  std::string dir_;
  std::ofstream epochs_;
};

struct TrainedPair {
  Mlp g;
  Mlp d;
};

// Canonical alternating GAN training from random initialization.
TrainedPair bootstrap_pair(const DoConfig& cfg, const DataSampler& data,
                           std::mt19937_64& rng, int iterations) {
  Mlp g = Mlp::random_init(cfg.generator_arch(), rng);
  Mlp d = Mlp::random_init(cfg.discriminator_arch(), rng);
  AdamState g_opt = AdamState::init(g.arch().param_count(), cfg.oracle.lr,
                                    cfg.oracle.beta1, cfg.oracle.beta2);
  AdamState d_opt = AdamState::init(d.arch().param_count(), cfg.oracle.lr,
                                    cfg.oracle.beta1, cfg.oracle.beta2);
  Eigen::VectorXd gp = g.params();
  Eigen::VectorXd dp = d.params();
  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXd real = data(cfg.oracle.batch_size, rng);
    Eigen::MatrixXd fake =
        g.forward(sample_noise(cfg.noise_dim, cfg.oracle.batch_size, rng));
    LossGrad dl = d_loss(d, real, fake);
    adam_step(dp, dl.grads, d_opt);
    d.set_params(dp);

    Eigen::MatrixXd z = sample_noise(cfg.noise_dim, cfg.oracle.batch_size, rng);
    LossGrad gl = g_loss_saturating(d, g, z);
    adam_step(gp, gl.grads, g_opt);
    g.set_params(gp);
  }
  return {std::move(g), std::move(d)};
}

MixedStrategy renormalized(const MixedStrategy& sigma, const std::vector<int>& kept) {
  Eigen::VectorXd p(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) p(i) = sigma(kept[i]);
  double s = p.sum();
  if (s <= 0.0) throw std::runtime_error("prune removed all probability mass");
  return MixedStrategy(p / s);
}

Eigen::MatrixXd mixture_samples(const RunRecord& rec, int n, int noise_dim,
                                std::mt19937_64& rng) {
  (void)noise_dim;
  return sample_mixture(rec.generators, rec.sigma_g, n, rng);
}

RunRecord run_restricted_game(const DoConfig& cfg, const DataSampler& data) {
  const bool pruning = cfg.variant == Variant::Prune;
  std::mt19937_64 rng = make_rng(cfg.seed);
  RunDir dir(cfg.run_dir);

  // Ids are assigned per run in creation order so payoff estimation streams
  // (keyed on snapshot ids) do not depend on process history or on other
  // runs in the same process.
  std::int64_t next_id = 0;

  TrainedPair first = bootstrap_pair(cfg, data, rng, cfg.resolved_bootstrap());
  RunRecord rec;
  rec.generators.push_back(snapshot(first.g, Role::Generator));
  rec.discriminators.push_back(snapshot(first.d, Role::Discriminator));
  rec.generators[0].id = next_id++;
  rec.discriminators[0].id = next_id++;
  dir.store(rec.generators[0]);
  dir.store(rec.discriminators[0]);

  Eigen::MatrixXd u0(1, 1);
  u0(0, 0) = estimate_payoff(rec.generators[0], rec.discriminators[0], data, cfg.oracle);
  rec.payoffs = PayoffMatrix(u0);
  rec.sigma_g = MixedStrategy::point_mass(1, 0);
  rec.sigma_d = MixedStrategy::point_mass(1, 0);

  for (int t = 1; t <= cfg.max_epochs; ++t) {
    NetworkSnapshot new_g = generator_oracle(
        rec.sigma_d, rec.discriminators, cfg.oracle, cfg.generator_arch(), rng,
        &rec.generators.back());
    NetworkSnapshot new_d = discriminator_oracle(
        rec.sigma_g, rec.generators, cfg.oracle, cfg.discriminator_arch(), data, rng,
        &rec.discriminators.back());
    new_g.id = next_id++;
    new_d.id = next_id++;

    // New row first, then new column, then corner; cached entries are never
    // recomputed.
    Eigen::VectorXd new_row(rec.payoffs.cols());
    for (int j = 0; j < rec.payoffs.cols(); ++j) {
      new_row(j) = estimate_payoff(new_g, rec.discriminators[j], data, cfg.oracle);
    }
    Eigen::VectorXd new_col(rec.payoffs.rows());
    for (int i = 0; i < rec.payoffs.rows(); ++i) {
      new_col(i) = estimate_payoff(rec.generators[i], new_d, data, cfg.oracle);
    }
    double corner = estimate_payoff(new_g, new_d, data, cfg.oracle);
    if (!new_row.allFinite() || !new_col.allFinite() || !std::isfinite(corner)) {
      throw std::runtime_error("non-finite payoff entry at epoch " + std::to_string(t));
    }

    rec.generators.push_back(new_g);
    rec.discriminators.push_back(new_d);
    dir.store(new_g);
    dir.store(new_d);
    rec.payoffs = augment(rec.payoffs, new_row, new_col, corner);

    // The increments are measured against the equilibrium the oracles
    // actually trained on (previous epoch's sigma, zero mass on the new
    // strategies); against the re-solved equilibrium the newest column is
    // almost always in the support and the check degenerates to true.
    Eigen::VectorXd prev_g = Eigen::VectorXd::Zero(rec.payoffs.rows());
    prev_g.head(rec.sigma_g.size()) = rec.sigma_g.probs;
    Eigen::VectorXd prev_d = Eigen::VectorXd::Zero(rec.payoffs.cols());
    prev_d.head(rec.sigma_d.size()) = rec.sigma_d.probs;
    TerminationResult term = termination_check(
        rec.payoffs, MixedStrategy(prev_g), MixedStrategy(prev_d), cfg.epsilon);

    MetaSolution sol = solve_zero_sum(rec.payoffs);
    rec.sigma_g = sol.sigma_g;
    rec.sigma_d = sol.sigma_d;

    if (pruning) {
      PruneResult pr = prune(rec.payoffs, rec.sigma_g, rec.sigma_d, cfg.support_limit);
      auto apply = [&dir](std::vector<NetworkSnapshot>& set, const std::vector<int>& kept_idx,
                          Role role) {
        std::vector<NetworkSnapshot> kept;
        std::size_t ki = 0;
        for (std::size_t i = 0; i < set.size(); ++i) {
          if (ki < kept_idx.size() && kept_idx[ki] == static_cast<int>(i)) {
            kept.push_back(set[i]);
            ++ki;
          } else {
            dir.drop(role, set[i].id);
          }
        }
        set = std::move(kept);
      };
      if (pr.kept_rows.size() != rec.generators.size()) {
        apply(rec.generators, pr.kept_rows, Role::Generator);
        rec.sigma_g = renormalized(rec.sigma_g, pr.kept_rows);
      }
      if (pr.kept_cols.size() != rec.discriminators.size()) {
        apply(rec.discriminators, pr.kept_cols, Role::Discriminator);
        rec.sigma_d = renormalized(rec.sigma_d, pr.kept_cols);
      }
      rec.payoffs = std::move(pr.matrix);
    }

    EpochLog log;
    log.t = t;
    log.m = rec.payoffs.rows();
    log.n = rec.payoffs.cols();
    log.value = sol.value;
    log.gen_inc = term.gen_inc;
    log.dis_inc = term.dis_inc;
    for (const auto& s : rec.generators) log.support_g.push_back(s.id);
    for (const auto& s : rec.discriminators) log.support_d.push_back(s.id);
    log.snapshots_on_disk =
        dir.active() ? dir.snapshot_files()
                     : static_cast<int>(rec.generators.size() + rec.discriminators.size());
    rec.epochs.push_back(log);
    dir.log(log);

    if (dir.active() && cfg.sample_every > 0 && t % cfg.sample_every == 0) {
      std::mt19937_64 srng = make_rng(mix_seed(cfg.seed, 0x5a3d1eULL + t));
      dir.dump_samples(t, mixture_samples(rec, 512, cfg.noise_dim, srng));
    }
    if (term.terminate) {
      rec.status = RunStatus::Converged;
      break;
    }
  }
  if (dir.active()) {
    std::mt19937_64 srng = make_rng(mix_seed(cfg.seed, 0xf1a71ULL));
    dir.dump_samples(rec.epochs.empty() ? 0 : rec.epochs.back().t,
                     mixture_samples(rec, 512, cfg.noise_dim, srng));
  }
  return rec;
}

RunRecord run_continual(const DoConfig& cfg, const DataSampler& data) {
  std::mt19937_64 rng = make_rng(cfg.seed);
  RunDir dir(cfg.run_dir);

  TrainedPair nets = bootstrap_pair(cfg, data, rng, cfg.resolved_bootstrap());
  AdamState g_opt = AdamState::init(nets.g.arch().param_count(), cfg.oracle.lr,
                                    cfg.oracle.beta1, cfg.oracle.beta2);
  AdamState d_opt = AdamState::init(nets.d.arch().param_count(), cfg.oracle.lr,
                                    cfg.oracle.beta1, cfg.oracle.beta2);

  // Per-run ids; see run_restricted_game.
  std::int64_t next_id = 0;

  RunRecord rec;
  rec.generators.push_back(snapshot(nets.g, Role::Generator));
  rec.discriminators.push_back(snapshot(nets.d, Role::Discriminator));
  rec.generators[0].id = next_id++;
  rec.discriminators[0].id = next_id++;
  dir.store(rec.generators[0]);
  dir.store(rec.discriminators[0]);

  Eigen::MatrixXd u0(1, 1);
  u0(0, 0) = estimate_payoff(rec.generators[0], rec.discriminators[0], data, cfg.oracle);
  rec.payoffs = PayoffMatrix(u0);
  rec.sigma_g = MixedStrategy::point_mass(1, 0);
  rec.sigma_d = MixedStrategy::point_mass(1, 0);

  for (int t = 1; t <= cfg.max_epochs; ++t) {
    // Fisher and anchor at the previous task's optimum.
    EwcState ewc;
    ewc.anchor = nets.g.params();
    ewc.fisher = fisher_diag(nets.d, nets.g,
                             sample_noise(cfg.noise_dim, cfg.fisher_samples, rng));
    ewc.lambda = cfg.lambda;
    ewc.task_weight = rec.sigma_g(rec.sigma_g.size() - 1);

    // New generator task, trained against the retained discriminator tasks.
    std::vector<Mlp> disc_tasks;
    for (const auto& s : rec.discriminators) disc_tasks.push_back(restore(s));
    Eigen::VectorXd gp = nets.g.params();
    for (int it = 0; it < cfg.oracle.iterations; ++it) {
      Eigen::MatrixXd z = sample_noise(cfg.noise_dim, cfg.oracle.batch_size, rng);
      int di = sample_index(rec.sigma_d, rng);
      LossGrad lg = g_loss_ewc(disc_tasks[di], nets.g, z, ewc);
      adam_step(gp, lg.grads, g_opt);
      nets.g.set_params(gp);
    }
    double displacement = (nets.g.params() - ewc.anchor).norm();
    NetworkSnapshot new_g = snapshot(nets.g, Role::Generator);
    new_g.id = next_id++;

    // New discriminator task against the generator mixture (old tasks only).
    std::vector<NetworkSnapshot> old_gens = rec.generators;
    std::vector<NetworkSnapshot> old_dis = rec.discriminators;
    MixedStrategy prev_sigma_g = rec.sigma_g;
    MixedStrategy prev_sigma_d = rec.sigma_d;
    Eigen::VectorXd dp = nets.d.params();
    for (int it = 0; it < cfg.oracle.iterations; ++it) {
      Eigen::MatrixXd real = data(cfg.oracle.batch_size, rng);
      Eigen::MatrixXd fake = sample_mixture(old_gens, rec.sigma_g,
                                            cfg.oracle.batch_size, rng);
      LossGrad dl = d_loss(nets.d, real, fake);
      adam_step(dp, dl.grads, d_opt);
      nets.d.set_params(dp);
    }
    NetworkSnapshot new_d = snapshot(nets.d, Role::Discriminator);
    new_d.id = next_id++;

    // Retain only tasks t-1 and t per player.
    rec.generators.push_back(new_g);
    rec.discriminators.push_back(new_d);
    dir.store(new_g);
    dir.store(new_d);
    while (rec.generators.size() > 2) {
      dir.drop(Role::Generator, rec.generators.front().id);
      rec.generators.erase(rec.generators.begin());
    }
    while (rec.discriminators.size() > 2) {
      dir.drop(Role::Discriminator, rec.discriminators.front().id);
      rec.discriminators.erase(rec.discriminators.begin());
    }

    // The meta-matrix over retained tasks is rebuilt every epoch.
    Eigen::MatrixXd u(rec.generators.size(), rec.discriminators.size());
    for (int i = 0; i < u.rows(); ++i) {
      for (int j = 0; j < u.cols(); ++j) {
        u(i, j) = estimate_payoff(rec.generators[i], rec.discriminators[j], data,
                                  cfg.oracle);
      }
    }
    if (!u.allFinite()) {
      throw std::runtime_error("non-finite payoff entry at epoch " + std::to_string(t));
    }
    rec.payoffs = PayoffMatrix(u);

    // Reference strategies for the increments: the previous equilibrium
    // projected (by task id) onto the retained members; dropped mass is
    // renormalized away, falling back to the older retained task.
    auto project = [](const MixedStrategy& prev, const std::vector<NetworkSnapshot>& old_set,
                      const std::vector<NetworkSnapshot>& new_set) {
      Eigen::VectorXd p = Eigen::VectorXd::Zero(new_set.size());
      for (std::size_t i = 0; i < new_set.size(); ++i) {
        for (std::size_t j = 0; j < old_set.size(); ++j) {
          if (new_set[i].id == old_set[j].id) p(i) = prev(static_cast<int>(j));
        }
      }
      double mass = p.sum();
      if (mass <= 0.0) {
        p.setZero();
        p(0) = 1.0;
      } else {
        p /= mass;
      }
      return MixedStrategy(p);
    };
    TerminationResult term = termination_check(
        rec.payoffs, project(prev_sigma_g, old_gens, rec.generators),
        project(prev_sigma_d, old_dis, rec.discriminators), cfg.epsilon);

    MetaSolution sol = solve_zero_sum(rec.payoffs);
    rec.sigma_g = sol.sigma_g;
    rec.sigma_d = sol.sigma_d;

    EpochLog log;
    log.t = t;
    log.m = rec.payoffs.rows();
    log.n = rec.payoffs.cols();
    log.value = sol.value;
    log.gen_inc = term.gen_inc;
    log.dis_inc = term.dis_inc;
    for (const auto& s : rec.generators) log.support_g.push_back(s.id);
    for (const auto& s : rec.discriminators) log.support_d.push_back(s.id);
    log.snapshots_on_disk =
        dir.active() ? dir.snapshot_files()
                     : static_cast<int>(rec.generators.size() + rec.discriminators.size());
    log.anchor_displacement = displacement;
    rec.epochs.push_back(log);
    dir.log(log);

    if (dir.active() && cfg.sample_every > 0 && t % cfg.sample_every == 0) {
      std::mt19937_64 srng = make_rng(mix_seed(cfg.seed, 0x5a3d1eULL + t));
      dir.dump_samples(t, mixture_samples(rec, 512, cfg.noise_dim, srng));
    }
    if (term.terminate) {
      rec.status = RunStatus::Converged;
      break;
    }
  }
  if (dir.active()) {
    std::mt19937_64 srng = make_rng(mix_seed(cfg.seed, 0xf1a71ULL));
    dir.dump_samples(rec.epochs.empty() ? 0 : rec.epochs.back().t,
                     mixture_samples(rec, 512, cfg.noise_dim, srng));
  }
  return rec;
}

// Single-network baseline with the same total update budget as the DO run.
RunRecord run_vanilla(const DoConfig& cfg, const DataSampler& data) {
  std::mt19937_64 rng = make_rng(cfg.seed);
  RunDir dir(cfg.run_dir);
  const int total = cfg.resolved_bootstrap() + cfg.max_epochs * cfg.oracle.iterations;

  Mlp g = Mlp::random_init(cfg.generator_arch(), rng);
  Mlp d = Mlp::random_init(cfg.discriminator_arch(), rng);
  AdamState g_opt = AdamState::init(g.arch().param_count(), cfg.oracle.lr,
                                    cfg.oracle.beta1, cfg.oracle.beta2);
  AdamState d_opt = AdamState::init(d.arch().param_count(), cfg.oracle.lr,
                                    cfg.oracle.beta1, cfg.oracle.beta2);
  Eigen::VectorXd gp = g.params();
  Eigen::VectorXd dp = d.params();

  RunRecord rec;
  double last_loss = 0.0;
  int epoch = 0;
  for (int it = 1; it <= total; ++it) {
    Eigen::MatrixXd real = data(cfg.oracle.batch_size, rng);
    Eigen::MatrixXd fake =
        g.forward(sample_noise(cfg.noise_dim, cfg.oracle.batch_size, rng));
    LossGrad dl = d_loss(d, real, fake);
    adam_step(dp, dl.grads, d_opt);
    d.set_params(dp);
    last_loss = dl.loss;

    Eigen::MatrixXd z = sample_noise(cfg.noise_dim, cfg.oracle.batch_size, rng);
    LossGrad gl = g_loss_saturating(d, g, z);
    adam_step(gp, gl.grads, g_opt);
    g.set_params(gp);

    if (it % cfg.oracle.iterations == 0) {
      ++epoch;
      EpochLog log;
      log.t = epoch;
      log.m = 1;
      log.n = 1;
      log.value = last_loss;
      log.snapshots_on_disk = dir.active() ? dir.snapshot_files() : 2;
      rec.epochs.push_back(log);
      dir.log(log);
    }
  }
  rec.generators.push_back(snapshot(g, Role::Generator));
  rec.discriminators.push_back(snapshot(d, Role::Discriminator));
  rec.generators[0].id = 0;
  rec.discriminators[0].id = 1;
  dir.store(rec.generators[0]);
  dir.store(rec.discriminators[0]);
  Eigen::MatrixXd u0(1, 1);
  u0(0, 0) = last_loss;
  rec.payoffs = PayoffMatrix(u0);
  rec.sigma_g = MixedStrategy::point_mass(1, 0);
  rec.sigma_d = MixedStrategy::point_mass(1, 0);
  rec.status = RunStatus::MaxEpochs;
  if (dir.active()) {
    std::mt19937_64 srng = make_rng(mix_seed(cfg.seed, 0xf1a71ULL));
    dir.dump_samples(rec.epochs.empty() ? 0 : rec.epochs.back().t,
                     mixture_samples(rec, 512, cfg.noise_dim, srng));
  }
  return rec;
}

}  // namespace

RunRecord run_do_gan(const DoConfig& cfg, const DataSampler& data) {
  cfg.validate();
  if (!data) throw std::invalid_argument("run_do_gan: empty data source");
  switch (cfg.variant) {
    case Variant::Plain:
    case Variant::Prune:
      return run_restricted_game(cfg, data);
    case Variant::Continual:
      return run_continual(cfg, data);
    case Variant::Vanilla:
      return run_vanilla(cfg, data);
  }
  throw std::logic_error("run_do_gan: unknown variant");
}

FiniteRecord run_do_finite(const PayoffMatrix& full_game, double epsilon,
                           std::uint64_t seed) {
  if (epsilon <= 0.0) throw std::invalid_argument("run_do_finite: epsilon must be > 0");
  const int m = full_game.rows();
  const int n = full_game.cols();
  std::mt19937_64 rng = make_rng(seed);
  std::vector<int> rows{std::uniform_int_distribution<int>(0, m - 1)(rng)};
  std::vector<int> cols{std::uniform_int_distribution<int>(0, n - 1)(rng)};

  FiniteRecord rec;
  MetaSolution sub_sol;
  while (true) {
    Eigen::MatrixXd sub(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        sub(i, j) = full_game(rows[i], cols[j]);
      }
    }
    sub_sol = solve_zero_sum(PayoffMatrix(sub));
    ++rec.iterations;

    // Exact best responses against the restricted equilibrium.
    int best_row = 0;
    double best_row_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        v += sub_sol.sigma_d(j) * full_game(i, cols[j]);
      }
      if (v > best_row_val) { best_row_val = v; best_row = i; }
    }
    int best_col = 0;
    double best_col_val = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        v += sub_sol.sigma_g(i) * full_game(rows[i], j);
      }
      if (v < best_col_val) { best_col_val = v; best_col = j; }
    }

    double gen_gain = best_row_val - sub_sol.value;
    double dis_gain = sub_sol.value - best_col_val;
    bool grew = false;
    if (gen_gain >= epsilon && std::find(rows.begin(), rows.end(), best_row) == rows.end()) {
      rows.push_back(best_row);
      grew = true;
    }
    if (dis_gain >= epsilon && std::find(cols.begin(), cols.end(), best_col) == cols.end()) {
      cols.push_back(best_col);
      grew = true;
    }
    if (!grew) break;
  }

  Eigen::VectorXd full_g = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < rows.size(); ++i) full_g(rows[i]) = sub_sol.sigma_g(i);
  Eigen::VectorXd full_d = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < cols.size(); ++j) full_d(cols[j]) = sub_sol.sigma_d(j);
  rec.solution.sigma_g = MixedStrategy(full_g);
  rec.solution.sigma_d = MixedStrategy(full_d);
  rec.solution.value = sub_sol.value;
  rec.rows = std::move(rows);
  rec.cols = std::move(cols);
  return rec;
}

}  // namespace dogan
