// dfarpl: clustered RPL-like IoT network simulator with ACO-based
// flooding-attack detection. Runs a single simulation or a sweep grid
// and writes CSV/JSON results.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dfarpl/engine.hpp"
#include "dfarpl/report.hpp"
#include "dfarpl/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + p.string());
  out << content;
  if (!out) throw std::ios_base::failure("write failed: " + p.string());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"DFA-RPL flooding-defense network simulator"};

  std::string config_path;
  std::string sweep_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> nodes;
  std::optional<double> intruder_ratio;
  std::optional<std::string> area; // WxH
  std::optional<double> range;
  std::optional<double> duration;
  bool no_detection = false;

  app.add_option("--config", config_path, "config file (key=value lines)");
  app.add_option("--sweep", sweep_path, "sweep spec file; runs a grid");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "RNG seed override");
  app.add_option("--nodes", nodes, "node count override");
  app.add_option("--intruder-ratio", intruder_ratio, "intruder ratio override");
  app.add_option("--area", area, "area override, WxH in meters (e.g. 300x300)");
  app.add_option("--range", range, "transmission range override (m)");
  app.add_option("--duration", duration, "simulated duration override (s)");
  app.add_flag("--no-detection", no_detection,
               "disable detection (comparison baseline)");

  CLI11_PARSE(app, argc, argv);

  dfarpl::SimConfig cfg;
  try {
    if (!config_path.empty()) cfg = dfarpl::load_config(config_path);
    if (seed) cfg.rng_seed = *seed;
    if (nodes) cfg.n_nodes = *nodes;
    if (intruder_ratio) cfg.intruder_ratio = *intruder_ratio;
    if (range) cfg.tx_range = *range;
    if (duration) cfg.sim_duration = *duration;
    if (area) {
      auto x = area->find('x');
      if (x == std::string::npos)
        throw dfarpl::ConfigError("--area expects WxH, got: " + *area);
      cfg.area_width = std::stod(area->substr(0, x));
      cfg.area_height = std::stod(area->substr(x + 1));
    }
    if (no_detection) cfg.detection_enabled = false;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    fs::create_directories(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (!sweep_path.empty()) {
      auto spec = dfarpl::load_sweep_spec(sweep_path, cfg);
      auto rows = dfarpl::run_sweep_parallel(spec);
      write_file(fs::path(out_dir) / "sweep.csv", dfarpl::sweep_csv(rows));
      write_file(fs::path(out_dir) / "sweep_agg.csv",
                 dfarpl::agg_csv(dfarpl::aggregate(rows)));
      std::cout << dfarpl::agg_csv(dfarpl::aggregate(rows));
      return kExitOk;
    }

    auto t0 = std::chrono::steady_clock::now();
    dfarpl::Simulation sim(cfg);
    auto res = sim.run();
    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    write_file(fs::path(out_dir) / "run.json",
               dfarpl::run_json(cfg, res, wall));
    write_file(fs::path(out_dir) / "trace.csv", dfarpl::trace_csv(res));
    write_file(fs::path(out_dir) / "detections.csv",
               dfarpl::detections_csv(res));
    write_file(fs::path(out_dir) / "detentions.csv",
               dfarpl::detentions_csv(res));
    write_file(fs::path(out_dir) / "dodag_edges.txt", res.dodag_edges);

    auto show = [](const char* name, const std::optional<double>& v) {
      std::cout << name << "=";
      if (v)
        std::cout << *v;
      else
        std::cout << "na";
      std::cout << " ";
    };
    show("pdr", res.metrics.pdr);
    show("dr", res.metrics.dr);
    show("fpr", res.metrics.fpr);
    show("fnr", res.metrics.fnr);
    std::cout << "\n";
    return kExitOk;
  } catch (const dfarpl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
