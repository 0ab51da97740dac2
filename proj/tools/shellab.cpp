// shellab: run Shellsort / stack / queue experiments, emit bound tables, and
// run the exhaustive verification checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "shellab/shellab.hpp"

namespace {

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    const auto v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad size '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Empty path or "-" means stdout.
std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

int run(const shellab::ExperimentConfig& cfg) {
  using namespace shellab;
  switch (cfg.experiment) {
    case Experiment::verify: {
      const auto rep = verify_suite();
      std::ofstream file;
      print_report(open_or_stdout(cfg.output_path, file), rep);
      return rep.passed() ? 0 : 1;
    }
    case Experiment::bounds: {
      cfg.validate();
      const auto table = emit_bound_table(cfg.n_grid, cfg.p_grid);
      for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
      std::ofstream file;
      open_or_stdout(cfg.output_path, file) << table.csv;
      return 0;
    }
    default: break;
  }

  std::ofstream file;
  std::ostream& out = open_or_stdout(cfg.output_path, file);
  const auto res = run_experiment(cfg);
  write_jsonl(out, res);
  if (!out) throw std::runtime_error("write to '" + cfg.output_path + "' failed");
  if (!cfg.output_path.empty() && cfg.output_path != "-") {
    std::ofstream csv(cfg.output_path + ".summary.csv", std::ios::trunc);
    std::ofstream plot(cfg.output_path + ".plot.dat", std::ios::trunc);
    if (!csv || !plot) throw std::runtime_error("cannot write summary files next to '" + cfg.output_path + "'");
    write_summary_csv(csv, res);
    write_plot_data(plot, res);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shellsort and stack/queue sorting experiments"};

  std::string config_path, experiment, n_list, p_list, out;
  std::vector<std::string> families;
  std::uint64_t trials = 0, seed = 0;
  unsigned threads = 0;
  bool exhaustive = false;
  std::size_t k_max = 0;

  app.add_option("--config", config_path, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  app.add_option("--experiment", experiment, "shellsort | pstacks | pqueues | seqsearch | bounds | verify");
  app.add_option("--n", n_list, "comma-separated sizes (default 256,1024,4096,16384)");
  app.add_option("--p", p_list, "comma-separated pass counts for the target family (default per n)");
  app.add_option("--family", families,
                 "increment families: shell, pratt, target, chazelle:A, geometric:R, cuberoot:C, custom:H,...,1");
  app.add_option("--trials", trials, "trials per configuration");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output path (JSONL, CSV for bounds); '-' for stdout");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--k-max", k_max, "largest stack count tried by seqsearch");
  app.add_flag("--exhaustive", exhaustive, "enumerate all n! permutations instead of sampling");

  CLI11_PARSE(app, argc, argv);

  try {
    shellab::ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      cfg = shellab::ExperimentConfig::from_json(shellab::Json::parse(in));
    }
    if (!experiment.empty()) cfg.experiment = shellab::parse_experiment(experiment);
    if (!n_list.empty()) cfg.n_grid = parse_sizes(n_list);
    if (!p_list.empty()) cfg.p_grid = parse_sizes(p_list);
    if (!families.empty()) cfg.families = families;
    if (app.count("--trials")) cfg.trials = trials;
    if (app.count("--seed")) cfg.master_seed = seed;
    if (app.count("--out")) cfg.output_path = out;
    if (app.count("--threads")) cfg.threads = threads;
    if (app.count("--k-max")) cfg.k_max = k_max;
    if (exhaustive) cfg.exhaustive = true;
    if (cfg.n_grid.empty()) cfg.n_grid = shellab::default_n_grid();
    if (cfg.threads == 0) cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "shellab: " << e.what() << '\n';
    return 2;
  }
}
