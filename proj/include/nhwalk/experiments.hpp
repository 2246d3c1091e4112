#pragma once

// Named experiment runner and serialization. Every experiment is a
// deterministic map from a RunConfig to a flat table of doubles plus a
// metadata block; CSV and JSON render that table byte-reproducibly. Grid
// cells are independent, so the runner may fan out over threads (capped by
// NHWALK_THREADS); results land in index order regardless of schedule.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nhwalk/analysis.hpp"
#include "nhwalk/coin.hpp"
#include "nhwalk/hilbert.hpp"
#include "nhwalk/version.hpp"
#include "nhwalk/walk.hpp"

namespace nhwalk {

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment { Fig1, Fig2, Fig3, Fig4, Fig5, Table1, Fig6, Custom };
enum class OutputFormat { Csv, Json };

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
};

struct RunConfig {
  Experiment experiment = Experiment::Custom;
  std::optional<double> alpha;   // Hermitian coin parameter
  std::optional<double> alpha1;  // non-Hermitian coin pair
  std::optional<double> alpha2;
  std::optional<double> lambda;  // dimer coin: leak rate
  std::optional<double> tau;     // dimer coin: waiting interval
  double V = 1.0;                // dimer coin: tunneling energy
  std::optional<int> steps;
  ShiftKind shift = ShiftKind::Generalized;
  InitialStateKind initial = InitialStateKind::Localized;
  std::vector<SweepAxis> sweeps;  // up to two
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json metadata;
};

// ---------------------------------------------------------------------------
// string conversions

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Fig1: return "fig1";
    case Experiment::Fig2: return "fig2";
    case Experiment::Fig3: return "fig3";
    case Experiment::Fig4: return "fig4";
    case Experiment::Fig5: return "fig5";
    case Experiment::Table1: return "table1";
    case Experiment::Fig6: return "fig6";
    case Experiment::Custom: return "custom";
  }
  return "?";
}

inline const char* to_string(ShiftKind k) {
  return k == ShiftKind::Conditional ? "conditional" : "generalized";
}

inline const char* to_string(InitialStateKind k) {
  return k == InitialStateKind::Localized ? "localized" : "symmetric";
}

inline const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

inline Experiment experiment_from_string(const std::string& s) {
  for (Experiment e : {Experiment::Fig1, Experiment::Fig2, Experiment::Fig3, Experiment::Fig4,
                       Experiment::Fig5, Experiment::Table1, Experiment::Fig6, Experiment::Custom})
    if (s == to_string(e)) return e;
  throw config_error("unknown experiment '" + s + "' (expected fig1..fig6, table1 or custom)");
}

inline ShiftKind shift_from_string(const std::string& s) {
  if (s == "conditional") return ShiftKind::Conditional;
  if (s == "generalized") return ShiftKind::Generalized;
  throw config_error("unknown shift '" + s + "' (expected conditional or generalized)");
}

inline InitialStateKind initial_from_string(const std::string& s) {
  if (s == "localized") return InitialStateKind::Localized;
  if (s == "symmetric") return InitialStateKind::Symmetric;
  throw config_error("unknown initial state '" + s + "' (expected localized or symmetric)");
}

inline OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw config_error("unknown format '" + s + "' (expected csv or json)");
}

// ---------------------------------------------------------------------------
// helpers

inline std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw config_error("sweep count must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = start;
    return v;
  }
  for (int i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] = start + (stop - start) * static_cast<double>(i) / (count - 1);
  return v;
}

namespace detail {

inline double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error(where + ": '" + s + "' is not a number");
  }
}

inline int parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error(where + ": '" + s + "' is not an integer");
  }
}

inline unsigned max_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("NHWALK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && cap >= 1 && static_cast<unsigned long>(cap) < hw)
      hw = static_cast<unsigned>(cap);
  }
  return hw;
}

// Runs body(i) for i in [0, n); each index owns its output slot, so the
// result is schedule-independent.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::min<std::size_t>(max_workers(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      std::size_t i;
      while (!failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < n) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline PositionDistribution walk_distribution(const CoinOp& coin, int steps, ShiftKind shift,
                                              InitialStateKind initial) {
  WalkState s(initial, steps);
  return position_distribution(evolve(s, coin, shift, steps).final);
}

inline SweepAxis resolve_axis(const RunConfig& cfg, std::size_t index, SweepAxis fallback) {
  if (cfg.sweeps.size() > index) {
    const SweepAxis& ax = cfg.sweeps[index];
    if (ax.name != fallback.name)
      throw config_error(std::string(to_string(cfg.experiment)) + ": sweep axis " +
                         std::to_string(index + 1) + " must be named '" + fallback.name + "'");
    if (ax.count < 1) throw config_error("sweep count must be >= 1");
    return ax;
  }
  return fallback;
}

inline void require_max_sweeps(const RunConfig& cfg, std::size_t n) {
  if (cfg.sweeps.size() > n)
    throw config_error(std::string(to_string(cfg.experiment)) + ": accepts at most " +
                       std::to_string(n) + " sweep axis(es)");
}

inline nlohmann::ordered_json axis_json(const SweepAxis& ax) {
  return {{"name", ax.name}, {"start", ax.start}, {"stop", ax.stop}, {"count", ax.count}};
}

inline nlohmann::ordered_json base_metadata(const RunConfig& cfg) {
  nlohmann::ordered_json md;
  md["experiment"] = to_string(cfg.experiment);
  md["version"] = kVersion;
  md["hbar"] = 1;
  md["units_note"] = "time in inverse energy units";
  md["shift"] = to_string(cfg.shift);
  md["initial"] = to_string(cfg.initial);
  return md;
}

inline void append_distribution_rows(SweepResult& result, const std::vector<double>& prefix,
                                     const PositionDistribution& dist) {
  for (int m = dist.min_pos; m <= dist.max_pos(); ++m) {
    std::vector<double> row = prefix;
    row.push_back(static_cast<double>(m));
    row.push_back(dist.at(m));
    result.rows.push_back(std::move(row));
  }
}

inline void append_measurement_rows(SweepResult& result, const std::vector<double>& prefix,
                                    const std::vector<MeasurementRecord>& records) {
  for (const auto& rec : records) {
    std::vector<double> row = prefix;
    row.push_back(static_cast<double>(rec.coin));
    row.push_back(static_cast<double>(rec.position));
    row.push_back(rec.probability);
    row.push_back(static_cast<double>(rec.sign));
    result.rows.push_back(std::move(row));
  }
}

// --- named experiments -----------------------------------------------------

inline SweepResult run_fig1(const RunConfig& cfg) {
  require_max_sweeps(cfg, 1);
  const SweepAxis ax = resolve_axis(cfg, 0, SweepAxis{"alpha", 0.0, 1.0, 51});
  const int steps = cfg.steps.value_or(50);
  const std::vector<double> alphas = linspace(ax.start, ax.stop, ax.count);

  std::vector<PositionDistribution> cells(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    cells[i] = walk_distribution(hermitian_coin(alphas[i]), steps, cfg.shift, cfg.initial);
  });

  SweepResult r;
  r.columns = {"alpha", "position", "probability"};
  for (std::size_t i = 0; i < alphas.size(); ++i) append_distribution_rows(r, {alphas[i]}, cells[i]);
  r.metadata = base_metadata(cfg);
  r.metadata["steps"] = steps;
  r.metadata["axes"] = nlohmann::ordered_json::array({axis_json(ax)});
  return r;
}

inline SweepResult run_fig2(const RunConfig& cfg) {
  require_max_sweeps(cfg, 1);
  const SweepAxis ax = resolve_axis(cfg, 0, SweepAxis{"inv_tau", 1.0, 10.0, 46});
  const int steps = cfg.steps.value_or(40);
  const std::vector<double> lambdas =
      cfg.lambda ? std::vector<double>{*cfg.lambda} : std::vector<double>{0.0, 0.15};
  const std::vector<double> inv_taus = linspace(ax.start, ax.stop, ax.count);

  std::vector<PositionDistribution> cells(lambdas.size() * inv_taus.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const double lam = lambdas[i / inv_taus.size()];
    const double inv_tau = inv_taus[i % inv_taus.size()];
    cells[i] = walk_distribution(dimer_coin(cfg.V, lam, 1.0 / inv_tau), steps, cfg.shift, cfg.initial);
  });

  SweepResult r;
  r.columns = {"lambda", "inv_tau", "position", "probability"};
  for (std::size_t i = 0; i < cells.size(); ++i)
    append_distribution_rows(r, {lambdas[i / inv_taus.size()], inv_taus[i % inv_taus.size()]}, cells[i]);
  r.metadata = base_metadata(cfg);
  r.metadata["V"] = cfg.V;
  r.metadata["lambda"] = lambdas;
  r.metadata["steps"] = steps;
  r.metadata["axes"] = nlohmann::ordered_json::array({axis_json(ax)});
  return r;
}

inline SweepResult run_fig3(const RunConfig& cfg) {
  require_max_sweeps(cfg, 1);
  const SweepAxis ax = resolve_axis(cfg, 0, SweepAxis{"lambda", 0.0, 4.0, 41});
  const double tau = cfg.tau.value_or(1.0);
  const std::vector<int> step_list =
      cfg.steps ? std::vector<int>{*cfg.steps} : std::vector<int>{20, 30, 40, 50};
  const std::vector<double> lambdas = linspace(ax.start, ax.stop, ax.count);

  std::vector<PositionDistribution> cells(step_list.size() * lambdas.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const int steps = step_list[i / lambdas.size()];
    const double lam = lambdas[i % lambdas.size()];
    cells[i] = walk_distribution(dimer_coin(cfg.V, lam, tau), steps, cfg.shift, cfg.initial);
  });

  SweepResult r;
  r.columns = {"steps", "lambda", "position", "probability"};
  for (std::size_t i = 0; i < cells.size(); ++i)
    append_distribution_rows(
        r, {static_cast<double>(step_list[i / lambdas.size()]), lambdas[i % lambdas.size()]}, cells[i]);
  r.metadata = base_metadata(cfg);
  r.metadata["V"] = cfg.V;
  r.metadata["tau"] = tau;
  r.metadata["steps"] = step_list;
  r.metadata["axes"] = nlohmann::ordered_json::array({axis_json(ax)});
  return r;
}

inline SweepResult run_fig4(const RunConfig& cfg) {
  require_max_sweeps(cfg, 1);
  const SweepAxis ax = resolve_axis(cfg, 0, SweepAxis{"lambda", 0.0, 4.5, 91});
  const int steps = cfg.steps.value_or(50);
  const std::vector<double> taus =
      cfg.tau ? std::vector<double>{*cfg.tau} : std::vector<double>{1.0 / 5.0, 1.0 / 25.0, 1.0 / 50.0};
  const std::vector<double> lambdas = linspace(ax.start, ax.stop, ax.count);

  std::vector<double> entropy(taus.size() * lambdas.size());
  parallel_for(entropy.size(), [&](std::size_t i) {
    const double tau = taus[i / lambdas.size()];
    const double lam = lambdas[i % lambdas.size()];
    const PositionDistribution dist =
        walk_distribution(dimer_coin(cfg.V, lam, tau), steps, cfg.shift, cfg.initial);
    entropy[i] = von_neumann_entropy_avg(dist, steps);
  });

  SweepResult r;
  r.columns = {"tau", "lambda", "entropy"};
  for (std::size_t i = 0; i < entropy.size(); ++i)
    r.rows.push_back({taus[i / lambdas.size()], lambdas[i % lambdas.size()], entropy[i]});
  r.metadata = base_metadata(cfg);
  r.metadata["V"] = cfg.V;
  r.metadata["tau"] = taus;
  r.metadata["steps"] = steps;
  r.metadata["axes"] = nlohmann::ordered_json::array({axis_json(ax)});
  return r;
}

inline SweepResult run_fig5(const RunConfig& cfg) {
  require_max_sweeps(cfg, 0);
  const double lambda = cfg.lambda.value_or(3.9);
  const std::vector<double> taus =
      cfg.tau ? std::vector<double>{*cfg.tau} : std::vector<double>{0.1, 0.5};
  const std::vector<int> step_list = cfg.steps ? std::vector<int>{*cfg.steps} : std::vector<int>{2, 5};

  SweepResult r;
  r.columns = {"steps", "tau", "coin", "position", "probability", "sign"};
  for (int steps : step_list) {
    for (double tau : taus) {
      WalkState s(cfg.initial, steps);
      const WalkState done = evolve(s, dimer_coin(cfg.V, lambda, tau), cfg.shift, steps).final;
      append_measurement_rows(r, {static_cast<double>(steps), tau}, measure(done));
    }
  }
  r.metadata = base_metadata(cfg);
  r.metadata["V"] = cfg.V;
  r.metadata["lambda"] = lambda;
  r.metadata["tau"] = taus;
  r.metadata["steps"] = step_list;
  return r;
}

inline SweepResult run_table1(const RunConfig& cfg) {
  require_max_sweeps(cfg, 0);
  const double a1 = cfg.alpha1.value_or(0.6);
  const double a2 = cfg.alpha2.value_or(0.3);
  const int steps = cfg.steps.value_or(2);

  WalkState s(cfg.initial, steps);
  const WalkState done = evolve(s, nonhermitian_coin(a1, a2), cfg.shift, steps).final;

  SweepResult r;
  r.columns = {"coin", "position", "probability", "sign"};
  append_measurement_rows(r, {}, measure(done));
  r.metadata = base_metadata(cfg);
  r.metadata["alpha1"] = a1;
  r.metadata["alpha2"] = a2;
  r.metadata["steps"] = steps;
  return r;
}

inline SweepResult run_fig6(const RunConfig& cfg) {
  require_max_sweeps(cfg, 2);
  const SweepAxis axT = resolve_axis(cfg, 0, SweepAxis{"T", 0.01, 1.0, 100});
  const SweepAxis axTau = resolve_axis(cfg, 1, SweepAxis{"tau", 0.01, 1.0, 100});
  const double tau_prime = 1e-5;
  const std::vector<double> lambdas =
      cfg.lambda ? std::vector<double>{*cfg.lambda} : std::vector<double>{0.0, 3.0};
  const std::vector<double> Ts = linspace(axT.start, axT.stop, axT.count);
  const std::vector<double> taus = linspace(axTau.start, axTau.stop, axTau.count);

  std::vector<double> d(lambdas.size() * Ts.size() * taus.size());
  parallel_for(d.size(), [&](std::size_t i) {
    const std::size_t per_lambda = Ts.size() * taus.size();
    const double lam = lambdas[i / per_lambda];
    const double T = Ts[(i % per_lambda) / taus.size()];
    const double tau = taus[i % taus.size()];
    d[i] = nm_witness(cfg.V, lam, T, tau, tau_prime);
  });

  SweepResult r;
  r.columns = {"lambda", "T", "tau", "D"};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::size_t per_lambda = Ts.size() * taus.size();
    r.rows.push_back({lambdas[i / per_lambda], Ts[(i % per_lambda) / taus.size()],
                      taus[i % taus.size()], d[i]});
  }
  r.metadata = base_metadata(cfg);
  r.metadata["V"] = cfg.V;
  r.metadata["lambda"] = lambdas;
  r.metadata["tau_prime"] = tau_prime;
  r.metadata["axes"] = nlohmann::ordered_json::array({axis_json(axT), axis_json(axTau)});
  return r;
}

inline SweepResult run_custom(const RunConfig& cfg) {
  require_max_sweeps(cfg, 2);
  static const std::vector<std::string> sweepable = {"alpha", "alpha1", "alpha2", "lambda", "tau"};
  for (const auto& ax : cfg.sweeps) {
    bool known = false;
    for (const auto& name : sweepable) known = known || (ax.name == name);
    if (!known) throw config_error("custom: axis '" + ax.name + "' is not sweepable");
    if (ax.count < 1) throw config_error("sweep count must be >= 1");
  }
  if (cfg.sweeps.size() == 2 && cfg.sweeps[0].name == cfg.sweeps[1].name)
    throw config_error("custom: the two sweep axes must differ");

  auto available = [&](const char* name, const std::optional<double>& flag) {
    if (flag) return true;
    for (const auto& ax : cfg.sweeps)
      if (ax.name == name) return true;
    return false;
  };
  const bool has_alpha = available("alpha", cfg.alpha);
  const bool has_a1 = available("alpha1", cfg.alpha1);
  const bool has_a2 = available("alpha2", cfg.alpha2);
  const bool has_lambda = available("lambda", cfg.lambda);
  const bool has_tau = available("tau", cfg.tau);

  enum class Family { Hermitian, NonHermitian, Dimer } family;
  if (has_lambda || has_tau) {
    if (has_alpha || has_a1 || has_a2)
      throw config_error("custom: mixing dimer parameters with alpha coins is ambiguous");
    if (!(has_lambda && has_tau))
      throw config_error("custom: the dimer coin needs both lambda and tau");
    family = Family::Dimer;
  } else if (has_a1 || has_a2) {
    if (has_alpha) throw config_error("custom: mixing alpha with alpha1/alpha2 is ambiguous");
    if (!(has_a1 && has_a2)) throw config_error("custom: the non-Hermitian coin needs alpha1 and alpha2");
    family = Family::NonHermitian;
  } else if (has_alpha) {
    family = Family::Hermitian;
  } else {
    throw config_error("custom: no coin specified (set alpha, alpha1/alpha2 or lambda/tau)");
  }

  const int steps = cfg.steps.value_or(50);

  std::vector<std::vector<double>> grids;
  for (const auto& ax : cfg.sweeps) grids.push_back(linspace(ax.start, ax.stop, ax.count));
  std::size_t cells = 1;
  for (const auto& g : grids) cells *= g.size();

  auto coin_for = [&](const std::vector<double>& axis_values) {
    auto value_of = [&](const char* name, const std::optional<double>& flag) {
      for (std::size_t k = 0; k < cfg.sweeps.size(); ++k)
        if (cfg.sweeps[k].name == name) return axis_values[k];
      return *flag;
    };
    switch (family) {
      case Family::Hermitian: return hermitian_coin(value_of("alpha", cfg.alpha));
      case Family::NonHermitian:
        return nonhermitian_coin(value_of("alpha1", cfg.alpha1), value_of("alpha2", cfg.alpha2));
      case Family::Dimer:
      default:
        return dimer_coin(cfg.V, value_of("lambda", cfg.lambda), value_of("tau", cfg.tau));
    }
  };

  std::vector<std::vector<double>> cell_axis_values(cells);
  std::vector<PositionDistribution> cell_dist(cells);
  parallel_for(cells, [&](std::size_t i) {
    std::vector<double> axis_values;
    if (grids.size() == 1) {
      axis_values = {grids[0][i]};
    } else if (grids.size() == 2) {
      axis_values = {grids[0][i / grids[1].size()], grids[1][i % grids[1].size()]};
    }
    cell_dist[i] = walk_distribution(coin_for(axis_values), steps, cfg.shift, cfg.initial);
    cell_axis_values[i] = std::move(axis_values);
  });

  SweepResult r;
  for (const auto& ax : cfg.sweeps) r.columns.push_back(ax.name);
  r.columns.push_back("position");
  r.columns.push_back("probability");
  for (std::size_t i = 0; i < cells; ++i) append_distribution_rows(r, cell_axis_values[i], cell_dist[i]);

  r.metadata = base_metadata(cfg);
  r.metadata["steps"] = steps;
  if (family == Family::Dimer) r.metadata["V"] = cfg.V;
  if (cfg.alpha) r.metadata["alpha"] = *cfg.alpha;
  if (cfg.alpha1) r.metadata["alpha1"] = *cfg.alpha1;
  if (cfg.alpha2) r.metadata["alpha2"] = *cfg.alpha2;
  if (cfg.lambda) r.metadata["lambda"] = *cfg.lambda;
  if (cfg.tau) r.metadata["tau"] = *cfg.tau;
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const auto& ax : cfg.sweeps) axes.push_back(axis_json(ax));
  r.metadata["axes"] = axes;
  return r;
}

}  // namespace detail

inline SweepResult run_experiment(const RunConfig& cfg) {
  if (cfg.steps && *cfg.steps < 1) throw config_error("steps must be a positive integer");
  switch (cfg.experiment) {
    case Experiment::Fig1: return detail::run_fig1(cfg);
    case Experiment::Fig2: return detail::run_fig2(cfg);
    case Experiment::Fig3: return detail::run_fig3(cfg);
    case Experiment::Fig4: return detail::run_fig4(cfg);
    case Experiment::Fig5: return detail::run_fig5(cfg);
    case Experiment::Table1: return detail::run_table1(cfg);
    case Experiment::Fig6: return detail::run_fig6(cfg);
    case Experiment::Custom: return detail::run_custom(cfg);
  }
  throw config_error("unhandled experiment");
}

// ---------------------------------------------------------------------------
// serialization

namespace detail {

// round-trippable rendering for CSV cells
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline std::string metadata_value_string(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace detail

inline std::string render_csv(const SweepResult& result) {
  std::string out;
  for (const auto& item : result.metadata.items())
    out += "# " + item.key() + " = " + detail::metadata_value_string(item.value()) + "\n";
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out += ",";
    out += result.columns[c];
  }
  out += "\n";
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += detail::fmt17(row[c]);
    }
    out += "\n";
  }
  return out;
}

inline std::string render_json(const SweepResult& result) {
  nlohmann::ordered_json doc;
  doc["metadata"] = result.metadata;
  doc["columns"] = result.columns;
  doc["rows"] = result.rows;
  return doc.dump(2) + "\n";
}

inline void emit(const SweepResult& result, const std::string& path, OutputFormat format) {
  const std::string body = format == OutputFormat::Csv ? render_csv(result) : render_json(result);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("emit: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// flat key=value configuration (files and flags share the same keys; flags
// are applied after the file, so they win)

inline SweepAxis parse_sweep_axis(const std::string& text, const std::string& where) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4)
    throw config_error(where + ": sweep must look like name:start:stop:count, got '" + text + "'");
  SweepAxis ax;
  ax.name = parts[0];
  ax.start = detail::parse_double(parts[1], where + " (start)");
  ax.stop = detail::parse_double(parts[2], where + " (stop)");
  ax.count = detail::parse_int(parts[3], where + " (count)");
  if (ax.count < 1) throw config_error(where + ": sweep count must be >= 1");
  return ax;
}

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                          const std::string& where) {
  if (key == "experiment") {
    cfg.experiment = experiment_from_string(value);
  } else if (key == "steps") {
    cfg.steps = detail::parse_int(value, where);
  } else if (key == "alpha") {
    cfg.alpha = detail::parse_double(value, where);
  } else if (key == "alpha1") {
    cfg.alpha1 = detail::parse_double(value, where);
  } else if (key == "alpha2") {
    cfg.alpha2 = detail::parse_double(value, where);
  } else if (key == "lambda") {
    cfg.lambda = detail::parse_double(value, where);
  } else if (key == "tau") {
    cfg.tau = detail::parse_double(value, where);
  } else if (key == "V") {
    cfg.V = detail::parse_double(value, where);
  } else if (key == "shift") {
    cfg.shift = shift_from_string(value);
  } else if (key == "initial") {
    cfg.initial = initial_from_string(value);
  } else if (key == "format") {
    cfg.format = format_from_string(value);
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "sweep1" || key == "sweep2") {
    const std::size_t index = (key == "sweep1") ? 0 : 1;
    if (cfg.sweeps.size() <= index) cfg.sweeps.resize(index + 1);
    cfg.sweeps[index] = parse_sweep_axis(value, where);
  } else {
    throw config_error(where + ": unknown key '" + key + "'");
  }
}

namespace detail {
inline std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

// Reads a flat "key = value" file; '#' starts a comment, blank lines are
// skipped. Diagnostics carry path and line number.
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = detail::trimmed(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw config_error(where + ": expected key = value");
    const std::string key = detail::trimmed(t.substr(0, eq));
    const std::string value = detail::trimmed(t.substr(eq + 1));
    if (key.empty()) throw config_error(where + ": empty key");
    apply_setting(cfg, key, value, where);
  }
}

}  // namespace nhwalk
