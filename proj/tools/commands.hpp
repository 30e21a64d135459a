#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gme/analytic.hpp"
#include "gme/lab.hpp"
#include "gme/seesaw.hpp"
#include "gme/states.hpp"

namespace gme::cli {

enum ExitCode : int {
  kOk = 0,
  kContractFailed = 1,  // a numeric check of the command did not hold
  kUsage = 2,           // invalid parameters or input
  kRuntime = 3,         // I/O or unexpected failure
  kInterrupted = 130,
};

inline constexpr const char* kCsvSchema = "gme-scan-csv/1";

/// Header echoed into every output: how the data was produced.
struct Manifest {
  std::string command;
  std::string command_line;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  bool truncated = false;
  nlohmann::json config = nlohmann::json::object();

  /// "# key: value" lines.
  void writeComment(std::ostream& out) const;
  nlohmann::json toJson() const;
};

/// Fixed 12 significant digits, the format of every printed float.
std::string formatNumber(double v);

struct OptimizerFlags {
  int restarts = 64;
  int max_iterations = 1000;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  OptimizerConfig toConfig(Field field) const;
  nlohmann::json toJson() const;
};

/// A state resolved from a family/parameter description or a named shortcut.
struct ResolvedState {
  std::string label;
  DensityMatrix rho;
  std::optional<OmegaParams> omega;
  std::optional<TauParams> tau;
};

/// Named shortcuts: pi-minus, phi-plus, werner:LAMBDA, omega:X,Y, tau:P12,P13 (d = 3).
/// `d` applies to pi-minus, phi-plus, werner and omega.
ResolvedState resolveNamedState(const std::string& text, std::size_t d);
/// family omega uses (x, y, d); tau uses `weights` when non-empty, otherwise (x, y).
ResolvedState resolveFamily(const std::string& family, double x, double y, std::size_t d,
                            const std::vector<double>& weights);
/// Closed-form single-copy value for the field, when one exists.
std::optional<GmeValue> analyticValue(const ResolvedState& state, Field field);

std::vector<double> parseNumberList(const std::string& text);

// ---------------------------------------------------------------------------

struct GmeOptions {
  std::string state;   // named shortcut; overrides family
  std::string family;  // omega | tau
  double x = 0.0;
  double y = 0.0;
  std::size_t d = 3;
  std::string weights;  // comma-separated tau weights
  std::string mode = "complex";
  bool two_copy = false;
  double threshold = Tolerances::default_violation_relative;
  bool json = false;
  OptimizerFlags optimizer;
};

/// Single-copy (or two-copy) GME of one state. Exit kOk iff the numeric value agrees with
/// the closed form within 1e-6 whenever a closed form exists.
int cmdGme(const GmeOptions& opt, const std::string& command_line, std::ostream& out, std::ostream& err);

struct ScanOptions {
  std::string family = "omega";
  double step = 0.025;
  std::string mode = "complex";
  double threshold = Tolerances::default_violation_relative;
  std::size_t d = 3;
  std::string out_path;  // empty: stdout
  std::string format = "csv";
  OptimizerFlags optimizer{.restarts = 256};
};

/// Two-copy grid scan. Writes the report, then a summary line to `err`.
/// Exit kInterrupted when `cancel` stopped the scan, kContractFailed when a point failed.
int cmdScan(const ScanOptions& opt, const std::string& command_line, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* cancel = nullptr);

void writeScanCsv(std::ostream& out, const Manifest& manifest, const std::vector<ScanRecord>& records);
nlohmann::json scanJson(const Manifest& manifest, const std::vector<ScanRecord>& records);

struct ScanSummary {
  std::size_t points = 0;
  std::size_t flagged = 0;
  std::size_t separable = 0;
  std::size_t flagged_separable = 0;
  std::size_t unconverged = 0;
  std::size_t failed = 0;
};
ScanSummary summarize(const std::vector<ScanRecord>& records);

struct CrossoverOptions {
  std::size_t d_min = 3;
  std::size_t d_max = 15;
  std::string out_path;
};

/// Table of crossover values. Exit kContractFailed if the sequence decreases or a
/// residual exceeds 1e-12; coinciding neighbours are reported on `err`.
int cmdCrossover(const CrossoverOptions& opt, const std::string& command_line, std::ostream& out, std::ostream& err);

struct CheckSeparableOptions {
  int trials = 100;
  bool real_example = false;
  OptimizerFlags optimizer{.restarts = 256};
};

/// Separable multiplicativity harness (exit kOk iff max deviation <= 1e-6), or with
/// real_example the real-mode counterexample (exit kOk iff it reproduces).
int cmdCheckSeparable(const CheckSeparableOptions& opt, const std::string& command_line, std::ostream& out,
                      std::ostream& err);

struct ChannelPurityOptions {
  std::string choi_path;
  std::string channel;  // identity | pi-minus | random
  std::size_t d = 3;
  int rank = 2;
  std::string write_choi;  // also write the Choi operator here
  OptimizerFlags optimizer;
};

/// gamma_infinity by both paths. Exit kOk iff they agree within 1e-6.
int cmdChannelPurity(const ChannelPurityOptions& opt, const std::string& command_line, std::ostream& out,
                     std::ostream& err);

}  // namespace gme::cli
