#include "framedvs/cli.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "framedvs/config.hpp"
#include "framedvs/errors.hpp"
#include "framedvs/experiment.hpp"
#include "framedvs/svg.hpp"

namespace framedvs {

namespace {

void apply_thread_cap() {
  if (const char* env = std::getenv("FRAMEDVS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      throw InvalidInput("FRAMEDVS_THREADS must be a positive integer");
    }
  }
}

bool on_off(const std::string& v) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw InvalidInput("--overheads expects on|off");
}

void write_to(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

FrameSystem load_system(const std::string& path) {
  const std::filesystem::path p(path);
  return system_from_json(load_json_file(p), p.parent_path());
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frame-based stochastic DVS scheduling: schedulability checks, strategy building, simulation"};
  app.require_subcommand(1);

  std::string system_file, strategy_file, config_file, out_file, svg_file;
  std::string zone_mode = "plain", overheads_flag, kind = "limit", rounding = "closest";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> frames;
  std::vector<double> beta;
  std::optional<double> pt;
  double eps = 0.05;
  bool best_effort = false;

  auto* check = app.add_subcommand("check", "Check a strategy file against a system");
  check->add_option("--system", system_file, "System config (JSON)")->required();
  check->add_option("--strategy", strategy_file, "Strategy file (JSON)")->required();
  check->add_option("--mode", zone_mode, "Danger-zone mode: plain|necessary|sufficient");

  auto* build = app.add_subcommand("build", "Build a strategy for a system");
  build->add_option("--system", system_file, "System config (JSON)")->required();
  build->add_option("--kind", kind, "limit|dpms|pitdvs");
  build->add_option("--rounding", rounding, "up|closest");
  build->add_option("--beta", beta, "PITDVS aggressiveness per task")->delimiter(',');
  build->add_option("--pt", pt, "PITDVS scalar switch penalty (s)");
  build->add_option("--mode", zone_mode, "Danger-zone mode: plain|sufficient");
  build->add_flag("--best-effort", best_effort, "Build even when the system is never schedulable");
  build->add_option("--out", out_file, "Output strategy file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo energy/miss statistics per strategy");
  auto* sweep = app.add_subcommand("sweep", "Deadline sweep with energy ratios");
  for (auto* sub : {simulate, sweep}) {
    sub->add_option("--config", config_file, "Experiment config (JSON)")->required();
    sub->add_option("--out", out_file, "Output CSV (default stdout)");
    sub->add_option("--seed", seed, "Override simulation seed");
    sub->add_option("--frames", frames, "Override frames per run");
    sub->add_option("--overheads", overheads_flag, "on|off");
  }
  sweep->add_option("--svg", svg_file, "Also write a ratio-vs-deadline SVG chart");

  auto* soft = app.add_subcommand("soft-deadline", "Percentiles and adjusted deadline for a soft target");
  soft->add_option("--system", system_file, "System config (JSON)")->required();
  soft->add_option("--eps", eps, "Tolerated miss level in (0,1)");

  auto* oracle = app.add_subcommand("oracle", "Exact worst-case finishing times of a strategy");
  oracle->add_option("--system", system_file, "System config (JSON)")->required();
  oracle->add_option("--strategy", strategy_file, "Strategy file (JSON)")->required();
  oracle->add_option("--overheads", overheads_flag, "on|off");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    apply_thread_cap();

    if (*check) {
      const auto sys = load_system(system_file);
      const auto strategy = strategy_from_json(load_json_file(strategy_file));
      const auto mode = parse_overhead_mode(zone_mode);
      const auto report = framedvs::check(sys, strategy, danger_zones(sys, mode));
      out << to_json(report, mode).dump(2) << '\n';
      return report.schedulable ? kExitOk : kExitNegative;
    }

    if (*build) {
      const auto sys = load_system(system_file);
      StrategySpec spec;
      spec.name = kind;
      spec.kind = parse_strategy_kind(kind);
      if (spec.kind == StrategyKind::Custom)
        throw InvalidInput("custom strategies need forward tables; build them through an experiment config");
      spec.rounding = parse_rounding(rounding);
      spec.beta = beta;
      spec.pt = pt;
      const auto mode = parse_overhead_mode(zone_mode);
      try {
        const auto strategy = build_strategy(sys, danger_zones(sys, mode), spec, BuildOptions{best_effort});
        write_to(out_file, strategy_to_json(strategy).dump(2) + "\n", out);
      } catch (const Infeasible& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitNegative;
      }
      return kExitOk;
    }

    if (*simulate || *sweep) {
      auto config = load_experiment(config_file);
      if (seed) config.simulation.seed = *seed;
      if (frames) {
        if (*frames == 0) throw InvalidInput("--frames must be >= 1");
        config.simulation.n_frames = *frames;
      }
      if (!overheads_flag.empty()) config.simulation.overheads = on_off(overheads_flag);
      std::ostringstream csv;
      if (*simulate) {
        write_stats_csv(csv, run_simulation(config));
      } else {
        const auto table = run_sweep(config);
        write_sweep_csv(csv, table);
        if (!svg_file.empty()) {
          std::ostringstream svg;
          write_sweep_svg(svg, table);
          write_to(svg_file, svg.str(), out);
        }
      }
      write_to(out_file, csv.str(), out);
      return kExitOk;
    }

    if (*soft) {
      const auto sys = load_system(system_file);
      out << to_json(soft_deadline(sys, eps), eps, sys.deadline()).dump(2) << '\n';
      return kExitOk;
    }

    if (*oracle) {
      const auto sys = load_system(system_file);
      const auto strategy = strategy_from_json(load_json_file(strategy_file));
      const bool overheads = !overheads_flag.empty() && on_off(overheads_flag);
      const auto report = worst_finish_oracle(sys, strategy, overheads);
      const auto doc = to_json(report, sys.deadline());
      out << doc.dump(2) << '\n';
      return doc["meets_deadline"].get<bool>() ? kExitOk : kExitNegative;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitNegative;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace framedvs
