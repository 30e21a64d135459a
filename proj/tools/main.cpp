#include <atomic>
#include <csignal>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void onInterrupt(int) { g_cancel.store(true); }

void addOptimizerFlags(CLI::App* cmd, gme::cli::OptimizerFlags& f) {
  cmd->add_option("--restarts", f.restarts, "random restarts of the seesaw optimizer")->capture_default_str();
  cmd->add_option("--max-iterations", f.max_iterations, "sweeps per restart")->capture_default_str();
  cmd->add_option("--tolerance", f.tolerance, "objective change that ends a restart")->capture_default_str();
  cmd->add_option("--seed", f.seed, "base seed; all randomness derives from it")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (0: GME_THREADS or hardware concurrency)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gme::cli;

  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Geometric measure of entanglement: closed forms, seesaw optimization and two-copy scans"};
  app.set_version_flag("--version", std::string(gme::kVersion));
  app.require_subcommand(1);

  GmeOptions gme_opt;
  auto* gme_cmd = app.add_subcommand("gme", "GME of one state, optionally of two copies");
  gme_cmd->add_option("--state", gme_opt.state, "pi-minus | phi-plus | werner:L | omega:X,Y | tau:P12,P13");
  gme_cmd->add_option("--family", gme_opt.family, "omega | tau")->check(CLI::IsMember({"omega", "tau"}));
  gme_cmd->add_option("--x", gme_opt.x, "family parameter x")->capture_default_str();
  gme_cmd->add_option("--y", gme_opt.y, "family parameter y")->capture_default_str();
  gme_cmd->add_option("--d", gme_opt.d, "local dimension")->capture_default_str();
  gme_cmd->add_option("--p", gme_opt.weights, "tau weights p_12,p_13,...,p_23,... (lexicographic pairs)");
  gme_cmd->add_option("--mode", gme_opt.mode, "complex | real")->capture_default_str();
  gme_cmd->add_flag("--two-copy", gme_opt.two_copy, "optimize over two copies grouped AA'|BB'");
  gme_cmd->add_option("--threshold", gme_opt.threshold, "relative violation threshold")->capture_default_str();
  gme_cmd->add_flag("--json", gme_opt.json, "print one JSON document");
  addOptimizerFlags(gme_cmd, gme_opt.optimizer);

  ScanOptions scan_opt;
  auto* scan_cmd = app.add_subcommand("scan", "two-copy scan over the (x, y) simplex grid");
  scan_cmd->add_option("--family", scan_opt.family, "omega | tau")->capture_default_str();
  scan_cmd->add_option("--step", scan_opt.step, "grid step; must divide 1")->capture_default_str();
  scan_cmd->add_option("--mode", scan_opt.mode, "complex | real | mixed")->capture_default_str();
  scan_cmd->add_option("--threshold", scan_opt.threshold, "relative violation threshold")->capture_default_str();
  scan_cmd->add_option("--d", scan_opt.d, "local dimension (omega only)")->capture_default_str();
  scan_cmd->add_option("--out", scan_opt.out_path, "output file (default stdout)");
  scan_cmd->add_option("--format", scan_opt.format, "csv | json")->capture_default_str();
  addOptimizerFlags(scan_cmd, scan_opt.optimizer);

  CrossoverOptions cross_opt;
  auto* cross_cmd = app.add_subcommand("crossover", "crossover y along x = 0 for a range of d");
  cross_cmd->add_option("--d-min", cross_opt.d_min)->capture_default_str();
  cross_cmd->add_option("--d-max", cross_opt.d_max)->capture_default_str();
  cross_cmd->add_option("--out", cross_opt.out_path, "output file (default stdout)");

  CheckSeparableOptions sep_opt;
  auto* sep_cmd = app.add_subcommand("check-separable", "two-copy multiplicativity for separable states");
  sep_cmd->add_option("--trials", sep_opt.trials)->capture_default_str();
  sep_cmd->add_flag("--real-example", sep_opt.real_example, "run the real-mode two-qubit counterexample instead");
  addOptimizerFlags(sep_cmd, sep_opt.optimizer);

  ChannelPurityOptions ch_opt;
  auto* ch_cmd = app.add_subcommand("channel-purity", "maximal output infinity-purity from a Choi operator");
  ch_cmd->add_option("--choi", ch_opt.choi_path, "Choi file: 'dA dB' then rows of re+imj entries");
  ch_cmd->add_option("--channel", ch_opt.channel, "identity | pi-minus | random");
  ch_cmd->add_option("--d", ch_opt.d, "dimension of named channels")->capture_default_str();
  ch_cmd->add_option("--rank", ch_opt.rank, "Kraus rank of the random channel")->capture_default_str();
  ch_cmd->add_option("--write-choi", ch_opt.write_choi, "also write the Choi operator to this file");
  addOptimizerFlags(ch_cmd, ch_opt.optimizer);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::signal(SIGINT, onInterrupt);

  try {
    if (*gme_cmd) return cmdGme(gme_opt, command_line, std::cout, std::cerr);
    if (*scan_cmd) return cmdScan(scan_opt, command_line, std::cout, std::cerr, &g_cancel);
    if (*cross_cmd) return cmdCrossover(cross_opt, command_line, std::cout, std::cerr);
    if (*sep_cmd) return cmdCheckSeparable(sep_opt, command_line, std::cout, std::cerr);
    if (*ch_cmd) return cmdChannelPurity(ch_opt, command_line, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
