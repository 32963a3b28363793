// efcce: run coarse-trigger self-play on benchmark games, print game sizes,
// and run the self-check suites.
//
// Exit codes: 0 success, 1 runtime failure (including failed checks),
// 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "efcce/efcce.hpp"
#include "efcce/oracle.hpp"
#include "efcce/verify.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Thrown for inputs that parse but are not acceptable.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GameFlags {
  std::string game = "kuhn3";
  std::optional<int> ranks;
  int grid_width = 3;
  int grid_height = 2;
  int rounds = 3;
  int ship_length = 2;
  double loss_multiplier = 2.0;
  std::string game_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--game", game, "Generated game")
        ->check(CLI::IsMember({"kuhn2", "kuhn3", "goofspiel3", "leduc3", "battleship"}))
        ->capture_default_str();
    cmd->add_option("--ranks", ranks, "Card ranks (default: kuhn2 2, kuhn3 4, goofspiel3/leduc3 3)");
    cmd->add_option("--grid-width", grid_width, "Battleship grid width")->capture_default_str();
    cmd->add_option("--grid-height", grid_height, "Battleship grid height")->capture_default_str();
    cmd->add_option("--rounds", rounds, "Battleship shots per player")->capture_default_str();
    cmd->add_option("--ship-length", ship_length, "Battleship ship length")->capture_default_str();
    cmd->add_option("--loss-multiplier", loss_multiplier, "Battleship loss multiplier")
        ->capture_default_str();
    cmd->add_option("--game-file", game_file, "Load an efg-seq file instead of generating")
        ->check(CLI::ExistingFile);
  }

  std::string describe() const {
    if (!game_file.empty()) return game_file;
    if (game == "battleship") {
      return "battleship grid=" + std::to_string(grid_width) + "x" + std::to_string(grid_height) +
             " rounds=" + std::to_string(rounds);
    }
    return game + " ranks=" + std::to_string(spec().ranks);
  }

  efcce::GameSpec spec() const {
    efcce::GameSpec s;
    s.kind = efcce::parse_game_kind(game);
    if (ranks) {
      s.ranks = *ranks;
    } else {
      s.ranks = s.kind == efcce::GameKind::kKuhn2 ? 2 : s.kind == efcce::GameKind::kKuhn3 ? 4 : 3;
    }
    s.grid_width = grid_width;
    s.grid_height = grid_height;
    s.rounds = rounds;
    s.ship_length = ship_length;
    s.loss_multiplier = loss_multiplier;
    return s;
  }

  efcce::Game make() const {
    if (!game_file.empty()) {
      std::ifstream in(game_file);
      if (!in) throw std::runtime_error("cannot open " + game_file);
      return efcce::load(in);
    }
    const efcce::GameSpec s = spec();
    try {
      efcce::check_spec(s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return efcce::generate(s);
  }
};

int worker_threads(int players) {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("EFCCE_THREADS")) {
    const int v = std::atoi(cap);
    if (v >= 1) n = std::min(n, v);
  }
  return std::min(n, players);
}

std::size_t total_sequences(const efcce::Game& game) {
  std::size_t total = 0;
  for (const auto& tp : game.treeplexes()) total += tp.num_sequences();
  return total;
}

struct RunFlags {
  int iterations = 1000;
  std::optional<int> gap_every;
  std::string out;
  bool oracle = false;
  std::size_t vertex_cap = 1000000;
  bool canonical = false;
};

int cmd_run(const GameFlags& gf, const RunFlags& rf) {
  if (rf.iterations < 1) throw UsageError("--iters must be at least 1");
  if (rf.gap_every && *rf.gap_every < 1) throw UsageError("--gap-every must be at least 1");
  const efcce::Game game = gf.make();

  efcce::RunConfig config;
  config.iterations = rf.iterations;
  // gap evaluation costs about one iteration; thin it out on large games
  config.gap_every = rf.gap_every.value_or(total_sequences(game) <= 50000 ? 1 : 10);
  config.record_iterates = rf.oracle;
  config.threads = rf.canonical ? 1 : worker_threads(game.num_players());

  std::ofstream file;
  std::ostream* csv = &std::cout;
  if (!rf.out.empty()) {
    file.open(rf.out, std::ios::out | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + rf.out);
    csv = &file;
  }
  std::string header = "iter,elapsed_ms,gap";
  for (int i = 1; i <= game.num_players(); ++i) header += ",gap_p" + std::to_string(i);
  *csv << header << '\n';
  auto on_checkpoint = [&](const efcce::Checkpoint& cp) {
    std::string row = std::to_string(cp.iteration);
    row += ',';
    row += rf.canonical ? "0" : efcce::format_real(cp.elapsed_ms);
    row += ',';
    row += efcce::format_real(cp.gap.overall);
    for (double g : cp.gap.per_player) (row += ',') += efcce::format_real(g);
    *csv << row << '\n';
    csv->flush();
    if (!*csv) throw std::runtime_error("write failed");
  };
  const efcce::RunResult result = efcce::run_dynamics(game, config, on_checkpoint);

  std::ostream& summary = rf.out.empty() ? std::cerr : std::cout;
  const efcce::GapReport& last = result.checkpoints.back().gap;
  summary << "game: " << gf.describe() << '\n';
  for (int i = 0; i < game.num_players(); ++i) {
    summary << "player " << i + 1 << ": " << game.treeplex(i).num_infosets() << " infosets, "
            << game.treeplex(i).num_sequences() << " sequences\n";
  }
  summary << "iterations: " << rf.iterations << '\n';
  summary << "gap: " << efcce::format_real(last.overall) << '\n';
  if (rf.oracle) {
    const efcce::GapReport brute = efcce::oracle::brute_force_gap(game, result.iterates, rf.vertex_cap);
    const double diff = std::abs(brute.overall - last.overall);
    summary << "brute-force gap: " << efcce::format_real(brute.overall)
            << " (difference " << efcce::format_real(diff) << ")\n";
    if (!(diff <= efcce::verify::kGapTolerance)) {
      std::cerr << "error: gap disagrees with brute-force enumeration\n";
      return kExitRuntime;
    }
  }
  return 0;
}

int cmd_gensize(const GameFlags& gf, const std::string& save_path) {
  const efcce::Game game = gf.make();
  std::cout << "player,infosets,sequences\n";
  for (int i = 0; i < game.num_players(); ++i) {
    std::cout << i + 1 << ',' << game.treeplex(i).num_infosets() << ','
              << game.treeplex(i).num_sequences() << '\n';
  }
  if (!save_path.empty()) {
    std::ofstream out(save_path, std::ios::out | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + save_path);
    efcce::save(game, out);
  }
  return 0;
}

struct VerifyFlags {
  std::vector<std::string> suites;
  std::string fault;
  efcce::verify::Options options;
};

int cmd_verify(VerifyFlags vf) {
  if (vf.suites.empty()) vf.suites = efcce::verify::suite_names();
  if (vf.fault == "skip-uniform-branch") {
    vf.options.fixed_point = efcce::verify::fixed_point_skipping_uniform_branch;
  }
  bool all = true;
  for (const std::string& name : vf.suites) {
    const efcce::verify::SuiteResult r = efcce::verify::run_suite(name, vf.options);
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
    if (!r.passed) std::cout << ": " << r.failure;
    std::cout << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarse-trigger no-regret self-play and EFCCE gap evaluation"};
  app.require_subcommand(1);

  GameFlags run_game;
  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run the dynamics and write a CSV convergence log");
  run_game.attach(run);
  run->add_option("--iters", run_flags.iterations, "Iterations")->capture_default_str();
  run->add_option("--gap-every", run_flags.gap_every,
                  "Gap evaluation cadence (default 1, or 10 above 50000 total sequences)");
  run->add_option("--out", run_flags.out, "CSV output path (default: standard output)");
  run->add_flag("--oracle", run_flags.oracle, "Also compute the gap by brute-force enumeration");
  run->add_option("--vertex-cap", run_flags.vertex_cap, "Enumeration cap for --oracle")
      ->capture_default_str();
  run->add_flag("--canonical,--single-threaded", run_flags.canonical,
                "One thread and elapsed_ms written as 0, for byte-identical logs");

  GameFlags size_game;
  std::string save_path;
  CLI::App* gensize = app.add_subcommand("gensize", "Print infoset and sequence counts per player");
  size_game.attach(gensize);
  gensize->add_option("--save", save_path, "Also write the game in efg-seq format");

  VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "Run self-check suites");
  verify->add_option("--suite", verify_flags.suites, "Suite to run (repeatable; default all)")
      ->check(CLI::IsMember(efcce::verify::suite_names()));
  verify->add_option("--inject-fault", verify_flags.fault, "Replace the fixed point with a broken variant")
      ->check(CLI::IsMember({"skip-uniform-branch"}));
  verify->add_option("--seed", verify_flags.options.seed, "Sampling seed")->capture_default_str();
  verify->add_option("--deviations", verify_flags.options.deviations,
                     "Random deviations per game in the fixed-point suite")
      ->capture_default_str();
  verify->add_option("--rounds", verify_flags.options.rounds, "Rounds in the regret suite")
      ->capture_default_str();
  verify->add_option("--vertex-cap", verify_flags.options.vertex_cap, "Enumeration cap")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_game, run_flags);
    if (*gensize) return cmd_gensize(size_game, save_path);
    if (*verify) return cmd_verify(verify_flags);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
