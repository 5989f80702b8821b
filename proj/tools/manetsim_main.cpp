#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manetsim/config.hpp"
#include "manetsim/errors.hpp"
#include "manetsim/experiment.hpp"

namespace {

std::vector<std::uint64_t> parse_u64_list(const std::string& text,
                                          const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string piece =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(v);
    } catch (const std::exception&) {
      throw manetsim::ConfigError(
          {flag + " expects comma-separated integers, got '" + piece + "'"});
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MANET simulator: AODV routing under black-hole attackers"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand(
      "run", "Run the experiment sweep described by a config file");
  std::string config_path;
  std::string seeds_text;
  std::string attackers_text;
  std::string out_dir = "results";
  bool trace = false;
  bool dump_tables = false;
  run->add_option("config", config_path, "Scenario config (dotted-key text)")
      ->required();
  run->add_option("--seeds", seeds_text,
                  "Override the config's seed list, e.g. 1,2,3");
  run->add_option("--attackers", attackers_text,
                  "Override the attacker-count sweep, e.g. 0,1,2,3,4");
  run->add_option("--out", out_dir, "Output directory (default: results)");
  run->add_flag("--trace", trace, "Write a per-run event trace");
  run->add_flag("--dump-tables", dump_tables,
                "Write per-run end-state routing tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    manetsim::ScenarioConfig cfg = manetsim::parse_config(config_path);
    if (!seeds_text.empty()) {
      cfg.seeds = parse_u64_list(seeds_text, "--seeds");
    }
    if (!attackers_text.empty()) {
      cfg.sweep_attackers.clear();
      for (std::uint64_t v : parse_u64_list(attackers_text, "--attackers")) {
        cfg.sweep_attackers.push_back(static_cast<std::uint32_t>(v));
      }
    }
    manetsim::require_valid(cfg);

    manetsim::ExperimentOptions opts;
    opts.capture_traces = trace;
    opts.capture_tables = dump_tables;
    const manetsim::ExperimentResult result =
        manetsim::run_experiment(cfg, opts);
    manetsim::emit_results(result, out_dir);

    std::cout << manetsim::render_summary_csv(result);
    std::cout << result.runs.size() << " runs, " << result.cells.size()
              << " cells -> " << out_dir << "\n";
    return 0;
  } catch (const manetsim::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const manetsim::ContractViolation& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
