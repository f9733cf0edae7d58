#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

// Path of the built binary, injected by the build.
const std::string kCli = DOGAN_CLI_PATH;

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CmdResult run_cli(const std::string& args, const fs::path& scratch) {
  fs::path out_file = scratch / "stdout.txt";
  std::string cmd = kCli + " " + args + " > " + out_file.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_file);
  return r;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("dogan-cli-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Small budgets: these tests exercise plumbing, not sample quality.
std::string tiny_train_args(const fs::path& out, const std::string& extra = "") {
  return "train --max-epochs 2 --iterations 4 --batch-size 16 --payoff-batches 2 "
         "--bootstrap 4 --epsilon 1e-12 --seed 3 --out " +
         out.string() + (extra.empty() ? "" : " " + extra);
}

}  // namespace

TEST_CASE("train writes a complete run directory") {
  TempDir dir("train");
  fs::path run = dir.path / "run";
  CmdResult r = run_cli(tiny_train_args(run), dir.path);
  // 0 = converged, 2 = epoch cap; both are successful runs.
  CHECK((r.exit_code == 0 || r.exit_code == 2));
  CHECK(fs::exists(run / "manifest.json"));
  CHECK(fs::exists(run / "summary.json"));
  CHECK(fs::exists(run / "payoffs.csv"));
  CHECK(fs::exists(run / "epochs.jsonl"));
  CHECK(fs::exists(run / "snapshots"));
  CHECK(r.out.find("\"status\"") != std::string::npos);
  CHECK(r.out.find("\"coverage\"") != std::string::npos);

  SUBCASE("eval consumes the run and is deterministic") {
    CmdResult e1 = run_cli("eval --run " + run.string() + " --samples 64 --seed 5", dir.path);
    CHECK(e1.exit_code == 0);
    CHECK(e1.out.find("modes_recovered") != std::string::npos);
    CHECK(fs::exists(run / "eval-samples.csv"));
    std::string first = slurp(run / "eval-samples.csv");
    CmdResult e2 = run_cli("eval --run " + run.string() + " --samples 64 --seed 5", dir.path);
    CHECK(e2.out == e1.out);
    CHECK(slurp(run / "eval-samples.csv") == first);
  }
  SUBCASE("rerunning from the manifest reproduces the log bit for bit") {
    std::string epochs = slurp(run / "epochs.jsonl");
    fs::path run2 = dir.path / "run2";
    CmdResult r2 = run_cli("train --config " + (run / "manifest.json").string() +
                           " --out " + run2.string(),
                       dir.path);
    CHECK(r2.exit_code == r.exit_code);
    CHECK(slurp(run2 / "epochs.jsonl") == epochs);
    CHECK(slurp(run2 / "payoffs.csv") == slurp(run / "payoffs.csv"));
  }
}

TEST_CASE("train variants run through the same entry point") {
  for (const std::string v : {"do-p", "do-c", "vanilla"}) {
    TempDir dir("variant-" + v);
    fs::path run = dir.path / "run";
    CmdResult r = run_cli(tiny_train_args(run, "--variant " + v + " --s 2"), dir.path);
    CHECK((r.exit_code == 0 || r.exit_code == 2));
    CHECK(fs::exists(run / "summary.json"));
    CHECK(r.out.find("\"variant\": \"" + v + "\"") != std::string::npos);
  }
}

TEST_CASE("train rejects a missing config without leaving debris") {
  TempDir dir("missing");
  fs::path run = dir.path / "run";
  CmdResult r = run_cli("train --config " + (dir.path / "nope.json").string() +
                        " --out " + run.string(),
                    dir.path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error:") != std::string::npos);
  CHECK_FALSE(fs::exists(run));
}

TEST_CASE("train rejects invalid settings") {
  TempDir dir("badcfg");
  CmdResult r = run_cli(tiny_train_args(dir.path / "run", "--variant do-p --s 1"), dir.path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("key=value config files work and flags override them") {
  TempDir dir("kv");
  fs::path cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# tiny run\n"
      << "max_epochs = 2\n"
      << "iterations = 4\n"
      << "batch_size = 16\n"
      << "payoff_batches = 2\n"
      << "bootstrap_iterations = 4\n"
      << "epsilon = 1e-12\n"
      << "seed = 11\n";
  }
  fs::path run = dir.path / "run";
  CmdResult r = run_cli("train --config " + cfg.string() + " --seed 12 --out " + run.string(),
                    dir.path);
  CHECK((r.exit_code == 0 || r.exit_code == 2));
  std::string manifest = slurp(run / "manifest.json");
  CHECK(manifest.find("\"seed\": 12") != std::string::npos);      // flag wins
  CHECK(manifest.find("\"max_epochs\": 2") != std::string::npos); // file applies
}

TEST_CASE("finite subcommand") {
  TempDir dir("finite");
  SUBCASE("solves a matrix within tolerance") {
    fs::path csv = dir.path / "game.csv";
    {
      std::ofstream f(csv);
      f << "3,0\n1,2\n";
    }
    CmdResult r = run_cli("finite --matrix " + csv.string() + " --epsilon 1e-9", dir.path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"do_value\": 1.5") != std::string::npos);
    CHECK(r.out.find("\"difference\"") != std::string::npos);
  }
  SUBCASE("malformed cell reports its position") {
    fs::path csv = dir.path / "bad.csv";
    {
      std::ofstream f(csv);
      f << "1,2\n3,oops\n";
    }
    CmdResult r = run_cli("finite --matrix " + csv.string(), dir.path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("row 2") != std::string::npos);
  }
  SUBCASE("missing file") {
    CmdResult r = run_cli("finite --matrix " + (dir.path / "ghost.csv").string(), dir.path);
    CHECK(r.exit_code == 1);
  }
}

TEST_CASE("eval on a missing run directory fails cleanly") {
  TempDir dir("noeval");
  CmdResult r = run_cli("eval --run " + (dir.path / "nothing").string(), dir.path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("summary.json") != std::string::npos);
}
