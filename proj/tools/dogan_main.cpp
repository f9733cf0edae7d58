#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dogan/data.hpp"
#include "dogan/do_loop.hpp"
#include "dogan/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string variant_name(dogan::Variant v) {
  switch (v) {
    case dogan::Variant::Plain: return "plain";
    case dogan::Variant::Prune: return "do-p";
    case dogan::Variant::Continual: return "do-c";
    case dogan::Variant::Vanilla: return "vanilla";
  }
  return "plain";
}

dogan::Variant parse_variant(const std::string& s) {
  if (s == "plain") return dogan::Variant::Plain;
  if (s == "do-p" || s == "prune") return dogan::Variant::Prune;
  if (s == "do-c" || s == "continual") return dogan::Variant::Continual;
  if (s == "vanilla") return dogan::Variant::Vanilla;
  throw CLI::ValidationError("variant", "unknown variant '" + s + "'");
}

struct TrainSettings {
  dogan::DoConfig cfg;
  std::string out_dir;
};

json settings_to_json(const TrainSettings& s) {
  json j;
  j["version"] = kVersion;
  j["variant"] = variant_name(s.cfg.variant);
  j["seed"] = s.cfg.seed;
  j["epsilon"] = s.cfg.epsilon;
  j["s"] = s.cfg.support_limit;
  j["max_epochs"] = s.cfg.max_epochs;
  j["modes"] = s.cfg.data.modes;
  j["ring_radius"] = s.cfg.data.ring_radius;
  j["cluster_std"] = s.cfg.data.cluster_std;
  j["noise_dim"] = s.cfg.noise_dim;
  j["hidden_width"] = s.cfg.hidden_width;
  j["lambda"] = s.cfg.lambda;
  j["iterations"] = s.cfg.oracle.iterations;
  j["batch_size"] = s.cfg.oracle.batch_size;
  j["lr"] = s.cfg.oracle.lr;
  j["beta1"] = s.cfg.oracle.beta1;
  j["beta2"] = s.cfg.oracle.beta2;
  j["payoff_batches"] = s.cfg.oracle.payoff_batches;
  j["warm_start"] = s.cfg.oracle.warm_start;
  j["bootstrap_iterations"] = s.cfg.resolved_bootstrap();
  j["sample_every"] = s.cfg.sample_every;
  j["out_dir"] = s.out_dir;
  return j;
}

void apply_json_key(TrainSettings& s, const std::string& key, const json& v) {
  if (key == "version") return;
  else if (key == "variant") s.cfg.variant = parse_variant(v.get<std::string>());
  else if (key == "seed") s.cfg.seed = v.get<std::uint64_t>();
  else if (key == "epsilon") s.cfg.epsilon = v.get<double>();
  else if (key == "s") s.cfg.support_limit = v.get<int>();
  else if (key == "max_epochs") s.cfg.max_epochs = v.get<int>();
  else if (key == "modes") s.cfg.data.modes = v.get<int>();
  else if (key == "ring_radius") s.cfg.data.ring_radius = v.get<double>();
  else if (key == "cluster_std") s.cfg.data.cluster_std = v.get<double>();
  else if (key == "noise_dim") s.cfg.noise_dim = v.get<int>();
  else if (key == "hidden_width") s.cfg.hidden_width = v.get<int>();
  else if (key == "lambda") s.cfg.lambda = v.get<double>();
  else if (key == "iterations") s.cfg.oracle.iterations = v.get<int>();
  else if (key == "batch_size") s.cfg.oracle.batch_size = v.get<int>();
  else if (key == "lr") s.cfg.oracle.lr = v.get<double>();
  else if (key == "beta1") s.cfg.oracle.beta1 = v.get<double>();
  else if (key == "beta2") s.cfg.oracle.beta2 = v.get<double>();
  else if (key == "payoff_batches") s.cfg.oracle.payoff_batches = v.get<int>();
  else if (key == "warm_start") s.cfg.oracle.warm_start = v.get<bool>();
  else if (key == "bootstrap_iterations") s.cfg.bootstrap_iterations = v.get<int>();
  else if (key == "sample_every") s.cfg.sample_every = v.get<int>();
  else if (key == "out_dir") s.out_dir = v.get<std::string>();
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

json scalar_from_string(const std::string& raw) {
  if (raw == "true") return json(true);
  if (raw == "false") return json(false);
  try {
    std::size_t used = 0;
    if (raw.find_first_of(".eE") != std::string::npos) {
      double d = std::stod(raw, &used);
      if (used == raw.size()) return json(d);
    } else {
      long long i = std::stoll(raw, &used);
      if (used == raw.size()) return json(i);
    }
  } catch (const std::exception&) {
  }
  return json(raw);
}

// Accepts either a JSON manifest or a flat key=value file.
void load_config_file(TrainSettings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    for (auto it = j.begin(); it != j.end(); ++it) apply_json_key(s, it.key(), it.value());
    return;
  }
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string v) {
      std::size_t b = v.find_first_not_of(" \t\r");
      std::size_t e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    apply_json_key(s, key, scalar_from_string(value));
  }
}

dogan::DataSampler make_data_sampler(const dogan::GaussianMixtureConfig& cfg) {
  return [cfg](int n, std::mt19937_64& rng) { return dogan::sample_real(cfg, n, rng); };
}

int scaled_min_count(int n_samples) {
  return std::max(1, static_cast<int>(std::lround(20.0 * n_samples / 512.0)));
}

json coverage_to_json(const dogan::CoverageReport& r) {
  json j;
  j["modes_recovered"] = r.modes_recovered;
  j["per_mode_counts"] = r.per_mode_counts;
  j["high_quality_fraction"] = r.high_quality_fraction;
  return j;
}

int cmd_train(const TrainSettings& settings) {
  TrainSettings s = settings;
  fs::path out(s.out_dir);
  s.cfg.run_dir = out.string();
  s.cfg.validate();
  fs::create_directories(out);
  {
    std::ofstream mf(out / "manifest.json", std::ios::trunc);
    mf << settings_to_json(s).dump(2) << "\n";
  }

  dogan::RunRecord rec = dogan::run_do_gan(s.cfg, make_data_sampler(s.cfg.data));

  std::mt19937_64 rng = dogan::make_rng(dogan::mix_seed(s.cfg.seed, 0xe7a1ULL));
  Eigen::MatrixXd samples = dogan::sample_mixture(rec.generators, rec.sigma_g, 512, rng);
  dogan::CoverageReport cov = dogan::mode_coverage(samples, s.cfg.data, 3.0, 20);

  json summary;
  summary["status"] = rec.status == dogan::RunStatus::Converged ? "converged" : "max_epochs";
  summary["epochs"] = rec.epochs.size();
  summary["value"] = rec.epochs.empty() ? 0.0 : rec.epochs.back().value;
  summary["sigma_g"] = std::vector<double>(rec.sigma_g.probs.data(),
                                           rec.sigma_g.probs.data() + rec.sigma_g.size());
  summary["sigma_d"] = std::vector<double>(rec.sigma_d.probs.data(),
                                           rec.sigma_d.probs.data() + rec.sigma_d.size());
  json gids = json::array(), dids = json::array();
  for (const auto& g : rec.generators) gids.push_back(g.id);
  for (const auto& d : rec.discriminators) dids.push_back(d.id);
  summary["support_g"] = gids;
  summary["support_d"] = dids;
  summary["variant"] = variant_name(s.cfg.variant);
  summary["seed"] = s.cfg.seed;
  summary["modes"] = s.cfg.data.modes;
  summary["ring_radius"] = s.cfg.data.ring_radius;
  summary["cluster_std"] = s.cfg.data.cluster_std;
  summary["coverage"] = coverage_to_json(cov);
  {
    std::ofstream sf(out / "summary.json", std::ios::trunc);
    sf << summary.dump(2) << "\n";
  }
  {
    std::ofstream pf(out / "payoffs.csv", std::ios::trunc);
    dogan::write_csv(rec.payoffs, pf);
  }
  std::cout << summary.dump(2) << std::endl;
  return rec.status == dogan::RunStatus::Converged ? 0 : 2;
}

int cmd_finite(const std::string& matrix_path, double epsilon, std::uint64_t seed) {
  std::ifstream in(matrix_path);
  if (!in) {
    std::cerr << "cannot open matrix file '" << matrix_path << "'\n";
    return 1;
  }
  dogan::PayoffMatrix full = dogan::parse_matrix_csv(in);
  dogan::FiniteRecord rec = dogan::run_do_finite(full, epsilon, seed);
  dogan::MetaSolution lp = dogan::solve_zero_sum(full);
  double diff = std::abs(rec.solution.value - lp.value);
  json j;
  j["do_value"] = rec.solution.value;
  j["lp_value"] = lp.value;
  j["difference"] = diff;
  j["iterations"] = rec.iterations;
  j["row_support"] = rec.rows.size();
  j["col_support"] = rec.cols.size();
  std::cout << j.dump(2) << std::endl;
  return diff <= epsilon ? 0 : 1;
}

int cmd_eval(const std::string& run_dir, int n_samples, std::uint64_t seed) {
  fs::path dir(run_dir);
  std::ifstream sf(dir / "summary.json");
  if (!sf) {
    std::cerr << "no summary.json under '" << run_dir << "'\n";
    return 1;
  }
  json summary = json::parse(sf);

  std::vector<dogan::NetworkSnapshot> gens;
  for (const auto& id : summary.at("support_g")) {
    fs::path p = dir / "snapshots" /
                 ("generator-" + std::to_string(id.get<std::int64_t>()) + ".json");
    std::ifstream gf(p);
    if (!gf) {
      std::cerr << "missing snapshot " << p << "\n";
      return 1;
    }
    std::stringstream buf;
    buf << gf.rdbuf();
    gens.push_back(dogan::snapshot_from_json(buf.str()));
  }
  auto probs = summary.at("sigma_g").get<std::vector<double>>();
  dogan::MixedStrategy sigma_g(Eigen::Map<const Eigen::VectorXd>(probs.data(), probs.size()));

  dogan::GaussianMixtureConfig data;
  data.modes = summary.at("modes").get<int>();
  data.ring_radius = summary.at("ring_radius").get<double>();
  data.cluster_std = summary.at("cluster_std").get<double>();

  std::mt19937_64 rng = dogan::make_rng(dogan::mix_seed(seed, 0xe7a1ULL));
  Eigen::MatrixXd samples = dogan::sample_mixture(gens, sigma_g, n_samples, rng);
  dogan::CoverageReport cov =
      dogan::mode_coverage(samples, data, 3.0, scaled_min_count(n_samples));
  {
    std::ofstream out(dir / "eval-samples.csv", std::ios::trunc);
    dogan::write_samples_csv(samples, out);
  }
  std::cout << coverage_to_json(cov).dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-oracle adversarial training toolkit"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Run a training variant end to end");
  std::string config_path, variant_str, out_dir;
  TrainSettings s;
  const char* root_env = std::getenv("DOGAN_OUT_ROOT");
  s.out_dir = (fs::path(root_env ? root_env : ".") / "run").string();
  train->add_option("--config", config_path, "Config file (key=value or manifest.json)");
  auto* opt_variant = train->add_option("--variant", variant_str, "plain|do-p|do-c|vanilla");
  auto* opt_modes = train->add_option("--modes", s.cfg.data.modes, "Gaussian mixture modes");
  auto* opt_s = train->add_option("--s", s.cfg.support_limit, "Support set size limit");
  auto* opt_eps = train->add_option("--epsilon", s.cfg.epsilon, "Termination epsilon");
  auto* opt_seed = train->add_option("--seed", s.cfg.seed, "Root seed");
  auto* opt_epochs = train->add_option("--max-epochs", s.cfg.max_epochs, "Epoch cap");
  auto* opt_iters = train->add_option("--iterations", s.cfg.oracle.iterations,
                                      "Oracle training iterations per epoch");
  auto* opt_batch = train->add_option("--batch-size", s.cfg.oracle.batch_size, "Batch size");
  auto* opt_lr = train->add_option("--lr", s.cfg.oracle.lr, "Adam learning rate");
  auto* opt_pb = train->add_option("--payoff-batches", s.cfg.oracle.payoff_batches,
                                   "Batches per payoff entry");
  auto* opt_boot = train->add_option("--bootstrap", s.cfg.bootstrap_iterations,
                                     "First-pair training iterations");
  auto* opt_lambda = train->add_option("--lambda", s.cfg.lambda, "EWC weight");
  auto* opt_warm = train->add_flag("--warm-start", s.cfg.oracle.warm_start,
                                   "Warm-start oracles from the previous best response");
  auto* opt_sample = train->add_option("--sample-every", s.cfg.sample_every,
                                       "Dump samples every N epochs");
  auto* opt_out = train->add_option("--out", out_dir, "Run output directory");

  // finite
  auto* finite = app.add_subcommand("finite", "Double oracle on a CSV matrix game");
  std::string matrix_path;
  double fin_eps = 1e-6;
  std::uint64_t fin_seed = 0;
  finite->add_option("--matrix", matrix_path, "Numeric CSV, no header")->required();
  finite->add_option("--epsilon", fin_eps, "Best-response tolerance");
  finite->add_option("--seed", fin_seed, "Initial strategy seed");

  // eval
  auto* eval = app.add_subcommand("eval", "Mode coverage of a finished run");
  std::string run_dir;
  int n_samples = 512;
  std::uint64_t eval_seed = 0;
  eval->add_option("--run", run_dir, "Run directory")->required();
  eval->add_option("--samples", n_samples, "Samples to draw from the mixture");
  eval->add_option("--seed", eval_seed, "Sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      TrainSettings cli = s;  // values as parsed from argv
      if (!config_path.empty()) load_config_file(s, config_path);
      // Explicit flags override the config file.
      if (opt_variant->count()) s.cfg.variant = parse_variant(variant_str);
      if (opt_modes->count()) s.cfg.data.modes = cli.cfg.data.modes;
      if (opt_s->count()) s.cfg.support_limit = cli.cfg.support_limit;
      if (opt_eps->count()) s.cfg.epsilon = cli.cfg.epsilon;
      if (opt_seed->count()) s.cfg.seed = cli.cfg.seed;
      if (opt_epochs->count()) s.cfg.max_epochs = cli.cfg.max_epochs;
      if (opt_iters->count()) s.cfg.oracle.iterations = cli.cfg.oracle.iterations;
      if (opt_batch->count()) s.cfg.oracle.batch_size = cli.cfg.oracle.batch_size;
      if (opt_lr->count()) s.cfg.oracle.lr = cli.cfg.oracle.lr;
      if (opt_pb->count()) s.cfg.oracle.payoff_batches = cli.cfg.oracle.payoff_batches;
      if (opt_boot->count()) s.cfg.bootstrap_iterations = cli.cfg.bootstrap_iterations;
      if (opt_lambda->count()) s.cfg.lambda = cli.cfg.lambda;
      if (opt_warm->count()) s.cfg.oracle.warm_start = cli.cfg.oracle.warm_start;
      if (opt_sample->count()) s.cfg.sample_every = cli.cfg.sample_every;
      if (opt_out->count()) s.out_dir = out_dir;
      return cmd_train(s);
    }
    if (finite->parsed()) return cmd_finite(matrix_path, fin_eps, fin_seed);
    if (eval->parsed()) return cmd_eval(run_dir, n_samples, eval_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
