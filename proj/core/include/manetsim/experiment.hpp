#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/metrics.hpp"

namespace manetsim {

/// One executed run within a sweep.
struct RunRecord {
  std::uint64_t seed = 0;
  std::uint32_t attackers = 0;
  AttackerMode mode = AttackerMode::FakeRrep;
  double speed = 0.0;  ///< swept speed, or the config's v_max (0 for Static)
  RunMetrics metrics;
  std::string trace;       ///< event trace, when tracing was requested
  std::string table_dump;  ///< end-state routing tables, when requested
};

/// Aggregate over one (attacker count, speed) sweep point.
struct CellSummary {
  std::uint32_t attackers = 0;
  double speed = 0.0;
  PdrSummary pdr;
};

struct ExperimentResult {
  ScenarioConfig config;  ///< effective config (sweep axes included)
  std::vector<RunRecord> runs;
  std::vector<CellSummary> cells;
};

struct ExperimentOptions {
  bool capture_traces = false;
  bool capture_tables = false;  ///< end-of-run routing-table CSV per run
  /// Max parallel runs; 0 reads MANET_SIM_THREADS, falling back to the
  /// hardware concurrency. Results are merged in (cell, seed) order either
  /// way, so output is reproducible.
  unsigned threads = 0;
};

/// Expands the cartesian sweep (attacker counts x speeds) x seeds, executes
/// every run with the paired-seed discipline, and aggregates per cell.
/// A conservation failure in any run aborts with ContractViolation.
ExperimentResult run_experiment(const ScenarioConfig& config,
                                const ExperimentOptions& opts = {});

/// Per-run CSV rows (runs.csv body + header).
std::string render_runs_csv(const ExperimentResult& result);

/// Attacker-count table: one row per attacker-count cell, speeds pooled.
std::string render_summary_csv(const ExperimentResult& result);

/// speed -> mean pdr series for one attacker count.
std::string render_plotdata_csv(const ExperimentResult& result,
                                std::uint32_t attackers);

/// Writes runs.csv, summary.csv, plotdata_<k>.csv, effective_config.txt,
/// plus trace_a<k>_v<speed>_s<seed>.log and tables_a<k>_v<speed>_s<seed>.csv
/// for runs that captured them. Re-running on the same result rewrites
/// byte-identical files.
void emit_results(const ExperimentResult& result,
                  const std::filesystem::path& out_dir);

/// MANET_SIM_THREADS, clamped to >= 1; unset/garbage falls back to
/// hardware concurrency.
unsigned effective_thread_cap();

}  // namespace manetsim
