#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gme/channel.hpp"
#include "gme/random.hpp"

namespace gme::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Doubles are stored rounded to the printed precision so JSON and text agree.
json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(formatNumber(v));
}

std::string formatBool(bool b) { return b ? "true" : "false"; }

std::string formatComplex(cplx z) {
  std::string re = formatNumber(z.real());
  const double im = z.imag();
  return re + (im < 0.0 ? "-" : "+") + formatNumber(std::abs(im)) + "j";
}

std::string formatVector(const Vector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + formatComplex(v(i));
  return s + "]";
}

json vectorJson(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({number(v(i).real()), number(v(i).imag())});
  return a;
}

json ansatzJson(const ProductAnsatz& ansatz) {
  json parties = json::array();
  for (const auto& p : ansatz.parties()) parties.push_back(vectorJson(p.vec()));
  return {{"field", std::string(to_string(ansatz.field()))}, {"grouping", ansatz.grouping()}, {"parties", parties}};
}

Field parseField(const std::string& mode) {
  if (mode == "complex") return Field::Complex;
  if (mode == "real") return Field::Real;
  throw std::invalid_argument("mode must be 'complex' or 'real', got '" + mode + "'");
}

// Output file if a path is given, otherwise the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("failed writing output");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emitKeyValues(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  for (const auto& [k, v] : rows) out << k << ": " << v << '\n';
}

}  // namespace

std::string formatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

void Manifest::writeComment(std::ostream& out) const {
  out << "# command: " << command << '\n';
  out << "# command_line: " << command_line << '\n';
  out << "# version: " << kVersion << '\n';
  out << "# seed: " << seed << '\n';
  out << "# wall_seconds: " << formatNumber(wall_seconds) << '\n';
  out << "# truncated: " << formatBool(truncated) << '\n';
  out << "# config: " << config.dump() << '\n';
}

json Manifest::toJson() const {
  return {{"command", command},
          {"command_line", command_line},
          {"version", std::string(kVersion)},
          {"seed", seed},
          {"wall_seconds", number(wall_seconds)},
          {"truncated", truncated},
          {"config", config}};
}

OptimizerConfig OptimizerFlags::toConfig(Field field) const {
  OptimizerConfig c;
  c.restarts = restarts;
  c.max_iterations = max_iterations;
  c.objective_tolerance = tolerance;
  c.seed = seed;
  c.field = field;
  c.threads = threads;
  c.validate();
  return c;
}

json OptimizerFlags::toJson() const {
  return {{"restarts", restarts}, {"max_iterations", max_iterations}, {"objective_tolerance", tolerance},
          {"seed", seed}};
}

std::vector<double> parseNumberList(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + item + "' in list '" + text + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "' in list '" + text + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ResolvedState resolveNamedState(const std::string& text, std::size_t d) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto expect = [&](std::size_t n) {
    const auto v = parseNumberList(args);
    if (v.size() != n) throw std::invalid_argument("state '" + text + "' needs " + std::to_string(n) + " parameter(s)");
    return v;
  };
  auto omega = [&](const std::string& label, OmegaParams p) {
    return ResolvedState{label, omegaState(p), p, std::nullopt};
  };

  if (name == "pi-minus" && args.empty()) return omega("pi-minus (d=" + std::to_string(d) + ")", {0.0, 1.0, d});
  if (name == "phi-plus" && args.empty()) return omega("phi-plus (d=" + std::to_string(d) + ")", {0.0, 0.0, d});
  if (name == "omega") {
    const auto v = expect(2);
    return omega("omega(x=" + formatNumber(v[0]) + ", y=" + formatNumber(v[1]) + ", d=" + std::to_string(d) + ")",
                 {v[0], v[1], d});
  }
  if (name == "werner") {
    const WernerParams w{expect(1)[0], d};
    ResolvedState s{"werner(lambda=" + formatNumber(w.lambda) + ", d=" + std::to_string(d) + ")", wernerState(w),
                    std::nullopt, std::nullopt};
    if (d >= 3) s.omega = w.asOmega();
    return s;
  }
  if (name == "tau") {
    const auto v = expect(2);
    const TauParams p = TauParams::fromXY(v[0], v[1]);
    return {"tau(p12=" + formatNumber(v[0]) + ", p13=" + formatNumber(v[1]) + ")", tauState(p), std::nullopt, p};
  }
  throw std::invalid_argument("unknown state '" + text +
                              "' (expected pi-minus, phi-plus, werner:L, omega:X,Y or tau:P12,P13)");
}

ResolvedState resolveFamily(const std::string& family, double x, double y, std::size_t d,
                            const std::vector<double>& weights) {
  if (family == "omega") {
    const OmegaParams p{x, y, d};
    return {"omega(x=" + formatNumber(x) + ", y=" + formatNumber(y) + ", d=" + std::to_string(d) + ")", omegaState(p),
            p, std::nullopt};
  }
  if (family == "tau") {
    const TauParams p = weights.empty() ? TauParams::fromXY(x, y) : TauParams::fromWeights(weights);
    std::string label = "tau(p=";
    for (std::size_t k = 0; k < p.weights.size(); ++k) label += (k ? "," : "") + formatNumber(p.weights[k]);
    label += ", d=" + std::to_string(p.d) + ")";
    return {label, tauState(p), std::nullopt, p};
  }
  throw std::invalid_argument("unknown family '" + family + "' (expected omega or tau)");
}

std::optional<GmeValue> analyticValue(const ResolvedState& state, Field field) {
  if (state.omega) return field == Field::Real ? gmeOmegaReal(*state.omega) : gmeOmega(*state.omega);
  if (state.tau) return gmeTau(*state.tau);
  return std::nullopt;
}

// ---------------------------------------------------------------------------

int cmdGme(const GmeOptions& opt, const std::string& command_line, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Manifest manifest{.command = "gme", .command_line = command_line, .seed = opt.optimizer.seed};
  std::optional<ResolvedState> state;
  OptimizerConfig config;
  Field field = Field::Complex;
  try {
    field = parseField(opt.mode);
    if (!opt.state.empty()) {
      state = resolveNamedState(opt.state, opt.d);
    } else {
      if (opt.family.empty()) throw std::invalid_argument("give --state or --family");
      state = resolveFamily(opt.family, opt.x, opt.y, opt.d,
                            opt.weights.empty() ? std::vector<double>{} : parseNumberList(opt.weights));
    }
    OptimizerFlags flags = opt.optimizer;
    if (opt.two_copy && flags.restarts == OptimizerFlags{}.restarts)
      flags.restarts = ScanConfig::defaultTwoCopyOptimizer().restarts;
    config = flags.toConfig(field);
    manifest.config = {{"state", state->label}, {"mode", opt.mode}, {"two_copy", opt.two_copy},
                       {"optimizer", flags.toJson()}};
    if (opt.two_copy) manifest.config["threshold"] = opt.threshold;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const std::optional<GmeValue> analytic = analyticValue(*state, field);
  std::vector<std::pair<std::string, std::string>> rows{{"state", state->label}, {"mode", opt.mode}};
  json result = {{"state", state->label}, {"mode", opt.mode}};
  bool agree = true;

  auto reportSingle = [&](const GmeEstimate& est) {
    if (analytic) {
      const double disc = std::abs(analytic->value - est.best_value);
      agree = disc <= 1e-6;
      rows.emplace_back("analytic", formatNumber(analytic->value));
      rows.emplace_back("branch", analytic->branch);
      rows.emplace_back("numeric", formatNumber(est.best_value));
      rows.emplace_back("discrepancy", formatNumber(disc));
      result["analytic"] = number(analytic->value);
      result["branch"] = analytic->branch;
      result["discrepancy"] = number(disc);
    } else {
      rows.emplace_back("analytic", "none");
      rows.emplace_back("numeric", formatNumber(est.best_value));
    }
    rows.emplace_back("upper_bound", formatNumber(est.upper_bound));
    rows.emplace_back("converged", formatBool(est.converged));
    result["numeric"] = number(est.best_value);
    result["upper_bound"] = number(est.upper_bound);
    result["converged"] = est.converged;
  };

  try {
    if (!opt.two_copy) {
      const GmeEstimate est = seesawMaximize(state->rho.op(), trivialGrouping(2), config);
      reportSingle(est);
      for (std::size_t k = 0; k < est.best_ansatz.size(); ++k)
        rows.emplace_back("maximizer_" + std::to_string(k), formatVector(est.best_ansatz.parties()[k].vec()));
      result["maximizer"] = ansatzJson(est.best_ansatz);
    } else {
      const std::size_t d = state->rho.subsystem_dims()[0];
      if (state->rho.subsystem_dims()[1] == d)
        config.warm_starts.emplace_back(std::vector<UnitVector>{UnitVector(phiPlusVector(d), Field::Real),
                                                                UnitVector(phiPlusVector(d), Field::Real)},
                                        twoCopyGrouping());
      const TwoCopyEstimate est = twoCopyGme(state->rho, state->rho, config);
      reportSingle(est.first);
      const double local = analytic ? analytic->value : est.first.best_value;
      const double local_sq = local * local;
      const double gap = est.joint.best_value - local_sq;
      const bool violation = isViolation(local_sq, gap, opt.threshold);
      const double witness =
          productExpectation(kron(state->rho, state->rho).op(), est.joint.best_ansatz);
      rows.emplace_back("local_gme_sq", formatNumber(local_sq));
      rows.emplace_back("two_copy_gme", formatNumber(est.joint.best_value));
      rows.emplace_back("two_copy_upper_bound", formatNumber(est.joint.upper_bound));
      rows.emplace_back("gap", formatNumber(gap));
      rows.emplace_back("violation", violation ? "VIOLATION" : "no violation found at budget");
      rows.emplace_back("witness_value", formatNumber(witness));
      result["local_gme_sq"] = number(local_sq);
      result["two_copy_gme"] = number(est.joint.best_value);
      result["two_copy_upper_bound"] = number(est.joint.upper_bound);
      result["gap"] = number(gap);
      result["violation"] = violation;
      result["witness"] = ansatzJson(est.joint.best_ansatz);
      result["witness_value"] = number(witness);
      if (state->omega) {
        const double bound = phiPlusTwoCopyLowerBound(*state->omega);
        rows.emplace_back("phi_plus_bound", formatNumber(bound));
        result["phi_plus_bound"] = number(bound);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }

  manifest.wall_seconds = secondsSince(start);
  if (opt.json) {
    out << json{{"manifest", manifest.toJson()}, {"result", result}}.dump(2) << '\n';
  } else {
    manifest.writeComment(out);
    emitKeyValues(out, rows);
  }
  if (!agree) {
    err << "numeric value disagrees with the closed form by more than 1e-6\n";
    return kContractFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

ScanSummary summarize(const std::vector<ScanRecord>& records) {
  ScanSummary s;
  s.points = records.size();
  for (const auto& r : records) {
    s.flagged += r.violation;
    const bool sep = r.separable.value_or(false);
    s.separable += sep;
    s.flagged_separable += sep && r.violation;
    s.unconverged += !r.converged;
    s.failed += !r.error.empty();
  }
  return s;
}

void writeScanCsv(std::ostream& out, const Manifest& manifest, const std::vector<ScanRecord>& records) {
  manifest.writeComment(out);
  out << "x,y,mode,local_gme,local_gme_sq,two_copy_gme,gap,violation,separable,branch,converged\n";
  for (const auto& r : records) {
    out << formatNumber(r.x) << ',' << formatNumber(r.y) << ',' << to_string(r.mode) << ','
        << formatNumber(r.local_gme) << ',' << formatNumber(r.local_gme_squared) << ','
        << formatNumber(r.two_copy_gme) << ',' << formatNumber(r.gap) << ',' << formatBool(r.violation) << ','
        << (r.separable ? formatBool(*r.separable) : "") << ',' << r.branch << ',' << formatBool(r.converged)
        << '\n';
  }
}

json scanJson(const Manifest& manifest, const std::vector<ScanRecord>& records) {
  json rows = json::array();
  for (const auto& r : records) {
    json row = {{"x", number(r.x)},
                {"y", number(r.y)},
                {"mode", std::string(to_string(r.mode))},
                {"local_gme", number(r.local_gme)},
                {"local_gme_sq", number(r.local_gme_squared)},
                {"two_copy_gme", number(r.two_copy_gme)},
                {"gap", number(r.gap)},
                {"violation", r.violation},
                {"separable", r.separable ? json(*r.separable) : json(nullptr)},
                {"branch", r.branch},
                {"converged", r.converged}};
    if (r.violation && r.witness) row["witness"] = ansatzJson(*r.witness);
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return {{"manifest", manifest.toJson()}, {"records", rows}};
}

int cmdScan(const ScanOptions& opt, const std::string& command_line, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* cancel) {
  const auto start = Clock::now();
  ScanConfig config;
  Manifest manifest{.command = "scan", .command_line = command_line, .seed = opt.optimizer.seed};
  std::size_t expected = 0;
  try {
    config.family = parseFamily(opt.family);
    config.mode = parseScanMode(opt.mode);
    config.step = opt.step;
    config.threshold = opt.threshold;
    config.d = opt.d;
    config.optimizer = opt.optimizer.toConfig(Field::Complex);
    config.threads = opt.optimizer.threads;
    config.validate();
    if (opt.format != "csv" && opt.format != "json")
      throw std::invalid_argument("format must be 'csv' or 'json'");
    expected = simplexGridSize(config.intervals());
    manifest.config = {{"schema", kCsvSchema},
                       {"family", opt.family},
                       {"mode", opt.mode},
                       {"step", opt.step},
                       {"threshold", opt.threshold},
                       {"d", opt.d},
                       {"grid_points", expected},
                       {"grid", "derived: all (i, j) * step with i + j <= 1 / step"},
                       {"violation_rule", "gap > threshold * local_gme_sq and gap > 1e-9"},
                       {"optimizer", opt.optimizer.toJson()}};
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::vector<ScanRecord> records;
  try {
    Sink sink(opt.out_path, out);
    ScanHooks hooks;
    hooks.cancel = cancel;
    records = scanFamily(config, hooks);
    manifest.truncated = records.size() < expected;
    manifest.wall_seconds = secondsSince(start);
    if (opt.format == "json")
      sink.get() << scanJson(manifest, records).dump(1) << '\n';
    else
      writeScanCsv(sink.get(), manifest, records);
    sink.finish();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }

  const ScanSummary s = summarize(records);
  err << "points " << s.points << "/" << expected << ", flagged " << s.flagged << ", separable " << s.separable
      << " (flagged " << s.flagged_separable << "), unconverged " << s.unconverged << ", failed " << s.failed
      << "; unflagged points mean no violation found at budget\n";
  if (manifest.truncated) {
    err << "scan interrupted: partial results written\n";
    return kInterrupted;
  }
  return s.failed ? kContractFailed : kOk;
}

// ---------------------------------------------------------------------------

int cmdCrossover(const CrossoverOptions& opt, const std::string& command_line, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  if (opt.d_min < 3 || opt.d_max < opt.d_min) {
    err << "error: need 3 <= d-min <= d-max\n";
    return kUsage;
  }
  std::vector<Crossover> rows;
  try {
    for (std::size_t d = opt.d_min; d <= opt.d_max; ++d) rows.push_back(crossover(d));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  bool ok = true;
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ok = ok && rows[i].residual <= 1e-12;
    if (i == 0) continue;
    const double rise = rows[i].y - rows[i - 1].y;
    ok = ok && rise > -1e-12;
    if (std::abs(rise) <= 1e-12) ties.push_back(rows[i].d);
  }

  Manifest manifest{.command = "crossover", .command_line = command_line};
  manifest.config = {{"d_min", opt.d_min}, {"d_max", opt.d_max}, {"x", 0}};
  manifest.wall_seconds = secondsSince(start);
  try {
    Sink sink(opt.out_path, out);
    manifest.writeComment(sink.get());
    sink.get() << "d,y_star,y_closed_form,residual\n";
    for (const auto& c : rows)
      sink.get() << c.d << ',' << formatNumber(c.y) << ',' << formatNumber(c.y_closed_form) << ','
                 << formatNumber(c.residual) << '\n';
    sink.finish();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  for (std::size_t d : ties) err << "note: y*(" << d - 1 << ") and y*(" << d << ") coincide\n";
  if (!ok) {
    err << "crossover table decreases or a residual exceeds 1e-12\n";
    return kContractFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmdCheckSeparable(const CheckSeparableOptions& opt, const std::string& command_line, std::ostream& out,
                      std::ostream& err) {
  const auto start = Clock::now();
  Manifest manifest{.command = "check-separable", .command_line = command_line, .seed = opt.optimizer.seed};
  OptimizerConfig config;
  try {
    if (opt.trials < 1) throw std::invalid_argument("trials must be at least 1");
    config = opt.optimizer.toConfig(Field::Complex);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  manifest.config = {{"optimizer", opt.optimizer.toJson()}};
  std::ostringstream body;

  try {
    if (opt.real_example) {
      manifest.config["check"] = "real two-qubit example";
      const RealCounterexampleReport r = realCounterexampleCheck(config);
      emitKeyValues(body, {{"real_local_gme", formatNumber(r.local_real)},
                           {"real_local_gme_sq", formatNumber(r.local_real * r.local_real)},
                           {"real_two_copy_gme", formatNumber(r.two_copy_real)},
                           {"real_gap", formatNumber(r.gap)},
                           {"real_mode", r.gap > Tolerances::violation_absolute ? "VIOLATION" : "no violation found"},
                           {"singlet_witness_value", formatNumber(r.witness_value)},
                           {"complex_local_gme", formatNumber(r.local_complex)},
                           {"complex_two_copy_gme", formatNumber(r.two_copy_complex)},
                           {"complex_mode", r.complex_multiplicative ? "multiplicative" : "NOT multiplicative"}});
      manifest.wall_seconds = secondsSince(start);
      manifest.writeComment(out);
      out << body.str();
      if (!r.passed()) {
        err << "real-mode counterexample did not reproduce\n";
        return kContractFailed;
      }
      return kOk;
    }

    manifest.config["trials"] = opt.trials;
    const SeparableReport report = verifySeparableMultiplicativity(opt.trials, opt.optimizer.seed, config);
    body << "trial,seed,terms,rho_gme,sigma_gme,joint_gme,deviation\n";
    for (std::size_t t = 0; t < report.results.size(); ++t) {
      const auto& r = report.results[t];
      body << t << ',' << r.seed << ',' << r.terms << ',' << formatNumber(r.rho_gme) << ','
           << formatNumber(r.sigma_gme) << ',' << formatNumber(r.joint_gme) << ',' << formatNumber(r.deviation)
           << '\n';
    }
    body << "max_deviation: " << formatNumber(report.max_deviation) << '\n';
    body << "result: " << (report.passed() ? "PASS" : "FAIL") << '\n';
    manifest.wall_seconds = secondsSince(start);
    manifest.writeComment(out);
    out << body.str();
    if (!report.passed()) {
      err << "deviation above " << formatNumber(report.tolerance) << " for trial seeds:";
      for (const auto& c : report.counterexamples) err << ' ' << c.seed;
      err << '\n';
      return kContractFailed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmdChannelPurity(const ChannelPurityOptions& opt, const std::string& command_line, std::ostream& out,
                     std::ostream& err) {
  const auto start = Clock::now();
  Manifest manifest{.command = "channel-purity", .command_line = command_line, .seed = opt.optimizer.seed};
  std::optional<ChoiOperator> choi;
  std::optional<double> expected;
  OptimizerConfig config;
  try {
    if (opt.choi_path.empty() == opt.channel.empty()) throw std::invalid_argument("give exactly one of --choi or --channel");
    config = opt.optimizer.toConfig(Field::Complex);
    const double d = static_cast<double>(opt.d);
    if (!opt.choi_path.empty()) {
      choi = readChoiFile(opt.choi_path);
      manifest.config["choi"] = opt.choi_path;
    } else if (opt.channel == "identity") {
      choi = ChoiOperator(phiPlusState(opt.d).op());
      expected = 1.0 / d;
    } else if (opt.channel == "pi-minus") {
      choi = ChoiOperator(omegaState({0.0, 1.0, opt.d}).op());
      expected = 1.0 / (d * (d - 1.0));
    } else if (opt.channel == "random") {
      if (opt.rank < 1) throw std::invalid_argument("rank must be positive");
      Rng rng(deriveSeed(opt.optimizer.seed, 0x6b726175));
      choi = choiFromKraus(randomKraus(opt.d, opt.d, static_cast<std::size_t>(opt.rank), rng));
      manifest.config["rank"] = opt.rank;
    } else {
      throw std::invalid_argument("unknown channel '" + opt.channel + "' (expected identity, pi-minus or random)");
    }
    if (!opt.channel.empty()) {
      manifest.config["channel"] = opt.channel;
      manifest.config["d"] = opt.d;
    }
    manifest.config["optimizer"] = opt.optimizer.toJson();
    if (!opt.write_choi.empty()) {
      std::ofstream f(opt.write_choi);
      if (!f) throw std::runtime_error("cannot open '" + opt.write_choi + "'");
      writeChoi(f, *choi);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }

  try {
    const GammaInfinity g = gammaInfinity(*choi, config);
    manifest.wall_seconds = secondsSince(start);
    manifest.writeComment(out);
    std::vector<std::pair<std::string, std::string>> rows{
        {"input_dim", std::to_string(choi->inputDim())},
        {"output_dim", std::to_string(choi->outputDim())},
        {"gamma_infinity", formatNumber(g.value)},
        {"gme_path", formatNumber(g.gme_path)},
        {"channel_path", formatNumber(g.channel_path)},
        {"disagreement", formatNumber(g.disagreement)},
        {"input_state", formatVector(g.input.vec())},
        {"output_state", formatVector(g.output.vec())}};
    if (expected) rows.emplace_back("expected", formatNumber(*expected));
    emitKeyValues(out, rows);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kContractFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}

}  // namespace gme::cli
