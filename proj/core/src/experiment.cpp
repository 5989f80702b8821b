#include "manetsim/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "manetsim/simulation.hpp"

namespace manetsim {

namespace {

struct Cell {
  std::uint32_t attackers = 0;
  std::optional<double> speed;
};

struct Job {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
};

std::string fmt_speed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_pdr(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ScenarioConfig cell_config(const ScenarioConfig& base, const Cell& cell) {
  ScenarioConfig cfg = base;
  cfg.sweep_attackers.clear();
  cfg.sweep_speeds.clear();
  cfg.attackers.count = cell.attackers;
  if (cell.speed) {
    cfg.mobility.v_min = *cell.speed;
    cfg.mobility.v_max = *cell.speed;
  }
  return cfg;
}

double csv_speed(const ScenarioConfig& cfg, const Cell& cell) {
  if (cell.speed) return *cell.speed;
  if (cfg.mobility.model == MobilityModel::Static) return 0.0;
  return cfg.mobility.v_max;
}

RunRecord execute(const ScenarioConfig& base, const Cell& cell,
                  std::uint64_t seed, const ExperimentOptions& opts) {
  const ScenarioConfig cfg = cell_config(base, cell);
  Simulation sim(cfg, seed);
  std::ostringstream trace;
  if (opts.capture_traces) sim.set_trace(&trace);
  const RunMetrics& metrics = sim.run();
  require_conservation(metrics);

  RunRecord record;
  record.seed = seed;
  record.attackers = cell.attackers;
  record.mode = base.attackers.behavior.mode;
  record.speed = csv_speed(base, cell);
  record.metrics = metrics;
  record.trace = trace.str();
  if (opts.capture_tables) record.table_dump = sim.dump_routing_tables();
  return record;
}

std::string run_file_stem(const RunRecord& record) {
  return "a" + std::to_string(record.attackers) + "_v" +
         fmt_speed(record.speed) + "_s" + std::to_string(record.seed);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << body;
  if (!out) {
    throw std::runtime_error("short write to '" + path.string() + "'");
  }
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& config,
                                const ExperimentOptions& opts) {
  require_valid(config);

  std::vector<std::uint32_t> attacker_axis = config.sweep_attackers;
  if (attacker_axis.empty()) {
    attacker_axis.push_back(
        config.attackers.node_ids.empty()
            ? config.attackers.count
            : static_cast<std::uint32_t>(config.attackers.node_ids.size()));
  }
  std::vector<std::optional<double>> speed_axis;
  if (config.sweep_speeds.empty()) {
    speed_axis.push_back(std::nullopt);
  } else {
    for (double v : config.sweep_speeds) speed_axis.emplace_back(v);
  }

  std::vector<Cell> cells;
  for (std::uint32_t k : attacker_axis) {
    for (const std::optional<double>& v : speed_axis) {
      cells.push_back(Cell{k, v});
    }
  }
  std::vector<Job> jobs;
  jobs.reserve(cells.size() * config.seeds.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::uint64_t seed : config.seeds) jobs.push_back(Job{c, seed});
  }

  ExperimentResult result;
  result.config = config;
  result.runs.resize(jobs.size());

  const std::size_t cap = std::min<std::size_t>(
      jobs.size(), opts.threads != 0 ? opts.threads : effective_thread_cap());

  if (cap <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      result.runs[i] =
          execute(config, cells[jobs[i].cell], jobs[i].seed, opts);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error) return;
        }
        try {
          result.runs[i] =
              execute(config, cells[jobs[i].cell], jobs[i].seed, opts);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(cap);
    for (std::size_t t = 0; t < cap; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  result.cells.reserve(cells.size());
  const std::size_t seeds = config.seeds.size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<RunMetrics> cell_metrics;
    cell_metrics.reserve(seeds);
    for (std::size_t s = 0; s < seeds; ++s) {
      cell_metrics.push_back(result.runs[c * seeds + s].metrics);
    }
    CellSummary summary;
    summary.attackers = cells[c].attackers;
    summary.speed = csv_speed(config, cells[c]);
    summary.pdr = aggregate(cell_metrics);
    result.cells.push_back(std::move(summary));
  }
  return result;
}

std::string render_runs_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "seed,attackers,mode,speed,sent,delivered,dropped_no_route,"
         "dropped_by_attacker,dropped_buffer,in_flight,pdr\n";
  for (const RunRecord& r : result.runs) {
    const RunMetrics& m = r.metrics;
    out << r.seed << ',' << r.attackers << ',' << to_string(r.mode) << ','
        << fmt_speed(r.speed) << ',' << m.sent << ',' << m.delivered << ','
        << m.dropped_no_route << ',' << m.dropped_by_attacker << ','
        << m.dropped_buffer << ',' << m.in_flight_at_end << ','
        << fmt_pdr(m.pdr) << '\n';
  }
  return out.str();
}

std::string render_summary_csv(const ExperimentResult& result) {
  // Baseline column: mean over every zero-attacker run, speeds pooled.
  double baseline_sum = 0.0;
  std::size_t baseline_runs = 0;
  for (const RunRecord& r : result.runs) {
    if (r.attackers == 0) {
      baseline_sum += r.metrics.pdr;
      ++baseline_runs;
    }
  }
  const bool have_baseline = baseline_runs > 0;
  const std::string baseline =
      have_baseline ? fmt_pdr(baseline_sum / baseline_runs) : std::string();

  std::ostringstream out;
  out << "attackers,baseline_mean_pdr,attacked_mean_pdr\n";
  std::set<std::uint32_t> emitted;
  for (const RunRecord& r : result.runs) {
    if (!emitted.insert(r.attackers).second) continue;
    double sum = 0.0;
    std::size_t n = 0;
    for (const RunRecord& other : result.runs) {
      if (other.attackers == r.attackers) {
        sum += other.metrics.pdr;
        ++n;
      }
    }
    out << r.attackers << ',' << baseline << ',' << fmt_pdr(sum / n) << '\n';
  }
  return out.str();
}

std::string render_plotdata_csv(const ExperimentResult& result,
                                std::uint32_t attackers) {
  std::ostringstream out;
  out << "speed,mean_pdr\n";
  for (const CellSummary& cell : result.cells) {
    if (cell.attackers != attackers) continue;
    out << fmt_speed(cell.speed) << ',' << fmt_pdr(cell.pdr.mean) << '\n';
  }
  return out.str();
}

void emit_results(const ExperimentResult& result,
                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" +
                             out_dir.string() + "': " + ec.message());
  }

  write_file(out_dir / "runs.csv", render_runs_csv(result));
  write_file(out_dir / "summary.csv", render_summary_csv(result));
  write_file(out_dir / "effective_config.txt", emit_config(result.config));

  std::set<std::uint32_t> attacker_counts;
  for (const CellSummary& cell : result.cells) {
    attacker_counts.insert(cell.attackers);
  }
  for (std::uint32_t k : attacker_counts) {
    write_file(out_dir / ("plotdata_" + std::to_string(k) + ".csv"),
               render_plotdata_csv(result, k));
  }

  for (const RunRecord& r : result.runs) {
    if (!r.trace.empty()) {
      write_file(out_dir / ("trace_" + run_file_stem(r) + ".log"), r.trace);
    }
    if (!r.table_dump.empty()) {
      write_file(out_dir / ("tables_" + run_file_stem(r) + ".csv"),
                 r.table_dump);
    }
  }
}

unsigned effective_thread_cap() {
  if (const char* env = std::getenv("MANET_SIM_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace manetsim
