#include "framedvs/experiment.hpp"

#include <set>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace {

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(where + "." + key + ": " + e.what());
  }
}

void require_unsigned(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it != obj.end() && !it->is_number_unsigned())
    throw InvalidInput(where + "." + key + ": expected a nonnegative integer");
}

bool parse_on_off(const json& v, const std::string& where) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "on") return true;
    if (s == "off") return false;
  }
  throw InvalidInput(where + ": expected \"on\" or \"off\"");
}

StrategySpec spec_from_json(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw InvalidInput(where + ": expected an object");
  StrategySpec spec;
  spec.name = get_or<std::string>(doc, "name", "", where);
  if (spec.name.empty()) throw InvalidInput(where + ".name: required");
  if (spec.name.find_first_of(",\"\r\n") != std::string::npos)
    throw InvalidInput(where + ".name: must not contain commas, quotes or line breaks");
  spec.kind = parse_strategy_kind(get_or<std::string>(doc, "kind", "limit", where));
  spec.rounding = parse_rounding(get_or<std::string>(doc, "mode", "closest", where));
  if (auto it = doc.find("params"); it != doc.end()) {
    const std::string pw = where + ".params";
    spec.beta = get_or<std::vector<double>>(*it, "beta", {}, pw);
    if (it->contains("pt_s")) spec.pt = get_or<double>(*it, "pt_s", 0.0, pw);
    if (it->contains("forward_hz")) {
      const auto tables = get_or<std::vector<std::vector<std::pair<double, double>>>>(*it, "forward_hz", {}, pw);
      for (const auto& table : tables) {
        std::vector<StepPoint> pts;
        for (const auto& [t, f] : table) pts.push_back({t, f});
        spec.forward_tables.push_back(std::move(pts));
      }
    }
  }
  return spec;
}

json spec_to_json(const StrategySpec& spec) {
  json out = {{"name", spec.name}, {"kind", to_string(spec.kind)}, {"mode", to_string(spec.rounding)}};
  json params = json::object();
  if (!spec.beta.empty()) params["beta"] = spec.beta;
  if (spec.pt) params["pt_s"] = *spec.pt;
  if (!spec.forward_tables.empty()) {
    json tables = json::array();
    for (const auto& table : spec.forward_tables) {
      json pts = json::array();
      for (const auto& p : table) pts.push_back({p.t, p.f});
      tables.push_back(std::move(pts));
    }
    params["forward_hz"] = std::move(tables);
  }
  if (!params.empty()) out["params"] = std::move(params);
  return out;
}

FrameSystem load_system_field(const json& doc, const std::filesystem::path& base_dir) {
  if (auto it = doc.find("system_file"); it != doc.end()) {
    const auto path = std::filesystem::path(it->get<std::string>());
    const auto full = path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    return system_from_json(load_json_file(full), full.parent_path());
  }
  auto it = doc.find("system");
  if (it == doc.end()) throw InvalidInput("config: missing 'system' or 'system_file'");
  return system_from_json(*it, base_dir);
}

}  // namespace

ExperimentConfig experiment_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw InvalidInput("config: expected an object");
  ExperimentConfig config{load_system_field(doc, base_dir), {}, {}, std::nullopt};

  auto strategies = doc.find("strategies");
  if (strategies == doc.end() || !strategies->is_array() || strategies->empty())
    throw InvalidInput("config.strategies: expected a non-empty array");
  std::set<std::string> names;
  for (std::size_t k = 0; k < strategies->size(); ++k) {
    auto spec = spec_from_json((*strategies)[k], "strategies[" + std::to_string(k) + "]");
    if (!names.insert(spec.name).second) throw InvalidInput("strategies: duplicate name '" + spec.name + "'");
    config.strategies.push_back(std::move(spec));
  }

  if (auto it = doc.find("simulation"); it != doc.end()) {
    const std::string w = "simulation";
    auto& sim = config.simulation;
    require_unsigned(*it, "n_frames", w);
    require_unsigned(*it, "seed", w);
    sim.n_frames = get_or<std::size_t>(*it, "n_frames", sim.n_frames, w);
    if (sim.n_frames == 0) throw InvalidInput("simulation.n_frames: must be >= 1");
    sim.seed = get_or<std::uint64_t>(*it, "seed", sim.seed, w);
    if (it->contains("overheads")) sim.overheads = parse_on_off((*it)["overheads"], w + ".overheads");
    if (it->contains("soft_eps")) {
      sim.soft_eps = get_or<double>(*it, "soft_eps", 0.0, w);
      if (!(*sim.soft_eps > 0.0 && *sim.soft_eps < 1.0)) throw InvalidInput("simulation.soft_eps: must lie in (0,1)");
    }
    const auto wcec = get_or<std::string>(*it, "soft_wcec", "true_wcec", w);
    if (wcec == "kappa") {
      sim.soft_wcec = SoftWcec::Kappa;
    } else if (wcec != "true_wcec") {
      throw InvalidInput("simulation.soft_wcec: expected kappa|true_wcec");
    }
  }

  if (auto it = doc.find("sweep"); it != doc.end()) {
    const std::string w = "sweep";
    SweepConfig sweep;
    require_unsigned(*it, "n_points", w);
    sweep.d_lo = get_or<double>(*it, "d_lo", 0.0, w);
    sweep.d_hi = get_or<double>(*it, "d_hi", 0.0, w);
    sweep.n_points = get_or<std::size_t>(*it, "n_points", 2, w);
    sweep.baseline = get_or<std::string>(*it, "baseline", config.strategies.front().name, w);
    if (!(sweep.d_lo > 0.0 && sweep.d_lo < sweep.d_hi)) throw InvalidInput("sweep: need 0 < d_lo < d_hi");
    if (sweep.n_points < 2) throw InvalidInput("sweep.n_points: must be >= 2");
    if (!names.count(sweep.baseline))
      throw InvalidInput("sweep.baseline: '" + sweep.baseline + "' does not name a strategy");
    config.sweep = sweep;
  }
  return config;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  return experiment_from_json(load_json_file(path), path.parent_path());
}

json experiment_to_json(const ExperimentConfig& config) {
  json strategies = json::array();
  for (const auto& s : config.strategies) strategies.push_back(spec_to_json(s));
  const auto& sim = config.simulation;
  json simulation = {{"n_frames", sim.n_frames},
                     {"seed", sim.seed},
                     {"overheads", sim.overheads ? "on" : "off"},
                     {"soft_wcec", sim.soft_wcec == SoftWcec::Kappa ? "kappa" : "true_wcec"}};
  if (sim.soft_eps) simulation["soft_eps"] = *sim.soft_eps;
  json out = {{"system", system_to_json(config.system)}, {"strategies", std::move(strategies)},
              {"simulation", std::move(simulation)}};
  if (config.sweep) {
    const auto& s = *config.sweep;
    out["sweep"] = {{"d_lo", s.d_lo}, {"d_hi", s.d_hi}, {"n_points", s.n_points}, {"baseline", s.baseline}};
  }
  return out;
}

StrategySet build_for_simulation(const FrameSystem& sys, const StrategySpec& spec, const SimulationConfig& sim,
                                 BuildOptions opts) {
  const OverheadMode mode = sim.overheads ? OverheadMode::Sufficient : OverheadMode::Plain;
  if (!sim.soft_eps) return build_strategy(sys, danger_zones(sys, mode), spec, opts);

  const auto soft = soft_deadline(sys, *sim.soft_eps);
  const auto plan = FrameSystem::for_planning(
      sys, sim.soft_wcec == SoftWcec::Kappa ? soft.kappa : sys.wcecs(), soft.adjusted_deadline);
  return build_strategy(plan, danger_zones(plan, mode), spec, opts);
}

std::vector<StrategyBuilder> make_builders(const ExperimentConfig& config, BuildOptions opts) {
  std::vector<StrategyBuilder> out;
  for (const auto& spec : config.strategies) {
    out.push_back({spec.name, [spec, sim = config.simulation, opts](const FrameSystem& sys) {
                     return build_for_simulation(sys, spec, sim, opts);
                   }});
  }
  return out;
}

std::vector<NamedStats> run_simulation(const ExperimentConfig& config) {
  const auto& sim = config.simulation;
  const SimOptions opts{sim.n_frames, sim.seed, sim.overheads};
  std::vector<NamedStats> rows;
  for (const auto& builder : make_builders(config)) {
    NamedStats row{builder.name, std::nullopt, std::nullopt};
    try {
      row.stats = monte_carlo(config.system, builder.build(config.system), opts);
    } catch (const Infeasible&) {
    }
    rows.push_back(std::move(row));
  }
  const std::string baseline = config.sweep ? config.sweep->baseline : config.strategies.front().name;
  const NamedStats* base = nullptr;
  for (const auto& r : rows)
    if (r.name == baseline) base = &r;
  for (auto& r : rows)
    if (r.stats && base && base->stats && base->stats->mean_energy > 0.0)
      r.ratio = r.stats->mean_energy / base->stats->mean_energy;
  return rows;
}

SweepTable run_sweep(const ExperimentConfig& config) {
  if (!config.sweep) throw InvalidInput("config has no 'sweep' section");
  const auto& s = *config.sweep;
  const auto& sim = config.simulation;
  return sweep_deadlines(config.system, make_builders(config, BuildOptions{true}),
                         SweepGrid{s.d_lo, s.d_hi, s.n_points}, SimOptions{sim.n_frames, sim.seed, sim.overheads},
                         s.baseline);
}

}  // namespace framedvs
