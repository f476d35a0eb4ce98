#include "framedvs/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace {

constexpr double kHzPerMhz = 1e6;

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InvalidInput(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(where + ": missing field '" + key + "'");
  return *it;
}

template <typename T>
T value_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  return value_as<T>(member(obj, key, where), where + "." + key);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& file) {
  std::filesystem::path p(file);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(origin + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json load_json_file(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

// ---- enums -------------------------------------------------------------------

OverheadMode parse_overhead_mode(const std::string& text) {
  if (text == "plain") return OverheadMode::Plain;
  if (text == "necessary") return OverheadMode::Necessary;
  if (text == "sufficient") return OverheadMode::Sufficient;
  throw InvalidInput("unknown zone mode '" + text + "' (plain|necessary|sufficient)");
}

std::string to_string(OverheadMode mode) {
  switch (mode) {
    case OverheadMode::Plain: return "plain";
    case OverheadMode::Necessary: return "necessary";
    case OverheadMode::Sufficient: return "sufficient";
  }
  return "plain";
}

Rounding parse_rounding(const std::string& text) {
  if (text == "up") return Rounding::Up;
  if (text == "closest") return Rounding::Closest;
  throw InvalidInput("unknown rounding mode '" + text + "' (up|closest)");
}

std::string to_string(Rounding mode) { return mode == Rounding::Up ? "up" : "closest"; }

StrategyKind parse_strategy_kind(const std::string& text) {
  if (text == "limit") return StrategyKind::Limit;
  if (text == "dpms") return StrategyKind::Dpms;
  if (text == "pitdvs") return StrategyKind::Pitdvs;
  if (text == "custom") return StrategyKind::Custom;
  throw InvalidInput("unknown strategy kind '" + text + "' (limit|dpms|pitdvs|custom)");
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Limit: return "limit";
    case StrategyKind::Dpms: return "dpms";
    case StrategyKind::Pitdvs: return "pitdvs";
    case StrategyKind::Custom: return "custom";
  }
  return "limit";
}

// ---- distributions -----------------------------------------------------------

CycleDistribution dist_from_json(const json& doc, const std::filesystem::path& base_dir,
                                 const std::string& where) {
  const auto kind = field<std::string>(doc, "kind", where);
  try {
    if (doc.contains("histogram_file")) {
      const auto file = field<std::string>(doc, "histogram_file", where);
      return read_histogram_csv(resolve(base_dir, file));
    }
    if (kind == "trace") {
      const auto& params = member(doc, "params", where);
      const auto file = field<std::string>(params, "trace_file", where + ".params");
      const auto bin = field<Cycles>(params, "bin_cycles", where + ".params");
      const auto trace = read_trace(resolve(base_dir, file));
      return bin_trace(trace, bin);
    }
    const auto& params = member(doc, "params", where);
    const std::string pw = where + ".params";
    if (kind == "uniform")
      return CycleDistribution::uniform(field<Cycles>(params, "lo", pw), field<Cycles>(params, "hi", pw));
    if (kind == "histogram")
      return CycleDistribution::histogram(field<Cycles>(params, "bin_cycles", pw),
                                          field<std::vector<double>>(params, "probs", pw));
    if (kind == "discrete")
      return CycleDistribution::discrete(field<std::vector<Cycles>>(params, "values", pw),
                                         field<std::vector<double>>(params, "probs", pw));
    if (kind == "degenerate") return CycleDistribution::degenerate(field<Cycles>(params, "value", pw));
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw InvalidInput(where + ": " + msg);
  }
  throw InvalidInput(where + ".kind: unknown distribution kind '" + kind + "'");
}

json dist_to_json(const CycleDistribution& dist) {
  switch (dist.kind()) {
    case CycleDistribution::Kind::Uniform:
      return {{"kind", "uniform"}, {"params", {{"lo", dist.lo()}, {"hi", dist.hi()}}}};
    case CycleDistribution::Kind::Histogram:
      return {{"kind", "histogram"}, {"params", {{"bin_cycles", dist.bin()}, {"probs", dist.probs()}}}};
    case CycleDistribution::Kind::Discrete:
      return {{"kind", "discrete"}, {"params", {{"values", dist.values()}, {"probs", dist.probs()}}}};
  }
  return {};
}

// ---- system ------------------------------------------------------------------

FrameSystem system_from_json(const json& doc, const std::filesystem::path& base_dir) {
  const std::string where = "system";
  const auto deadline = field<double>(doc, "deadline_s", where);

  const auto& cpu_doc = member(doc, "cpu", where);
  auto freqs = field<std::vector<double>>(cpu_doc, "freqs_mhz", "cpu");
  for (double& f : freqs) f *= kHzPerMhz;
  auto power = field<std::vector<double>>(cpu_doc, "power_w", "cpu");
  std::vector<std::vector<double>> pt;
  std::vector<double> st;
  std::vector<std::vector<double>> energy;
  if (cpu_doc.contains("pt_matrix_s")) pt = field<std::vector<std::vector<double>>>(cpu_doc, "pt_matrix_s", "cpu");
  if (cpu_doc.contains("st_vector_s")) st = field<std::vector<double>>(cpu_doc, "st_vector_s", "cpu");
  if (cpu_doc.contains("switch_energy_j"))
    energy = field<std::vector<std::vector<double>>>(cpu_doc, "switch_energy_j", "cpu");

  std::optional<FrequencyTable> cpu;
  try {
    cpu.emplace(std::move(freqs), std::move(power), std::move(pt), std::move(st), std::move(energy));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("cpu: ") + e.what());
  }

  const auto& tasks_doc = member(doc, "tasks", where);
  if (!tasks_doc.is_array()) throw InvalidInput("system.tasks: expected an array");
  std::vector<TaskSpec> tasks;
  for (std::size_t i = 0; i < tasks_doc.size(); ++i) {
    const std::string tw = "tasks[" + std::to_string(i) + "]";
    const auto& t = tasks_doc[i];
    TaskSpec spec;
    spec.wcec = field<Cycles>(t, "wcec", tw);
    spec.dist = dist_from_json(member(t, "dist", tw), base_dir, tw + ".dist");
    if (t.contains("label")) spec.label = field<std::string>(t, "label", tw);
    tasks.push_back(std::move(spec));
  }
  try {
    return FrameSystem(std::move(tasks), deadline, std::move(*cpu));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("system: ") + e.what());
  }
}

json system_to_json(const FrameSystem& sys) {
  const auto& cpu = sys.cpu();
  std::vector<double> mhz;
  for (double f : cpu.freqs()) mhz.push_back(f / kHzPerMhz);
  json cpu_doc = {{"freqs_mhz", mhz},
                  {"power_w", std::vector<double>(cpu.powers().begin(), cpu.powers().end())},
                  {"pt_matrix_s", cpu.switch_penalty_table()},
                  {"st_vector_s", cpu.same_speed_switch_table()}};
  bool any_energy = false;
  for (const auto& row : cpu.switch_energy_table())
    for (double v : row) any_energy = any_energy || v != 0.0;
  if (any_energy) cpu_doc["switch_energy_j"] = cpu.switch_energy_table();

  json tasks = json::array();
  for (const auto& t : sys.tasks()) {
    json td = {{"wcec", t.wcec}, {"dist", dist_to_json(t.dist)}};
    if (!t.label.empty()) td["label"] = t.label;
    tasks.push_back(std::move(td));
  }
  return {{"deadline_s", sys.deadline()}, {"cpu", std::move(cpu_doc)}, {"tasks", std::move(tasks)}};
}

// ---- strategies --------------------------------------------------------------

StrategySet strategy_from_json(const json& doc) {
  const auto& funcs = member(doc, "functions", "strategy");
  if (!funcs.is_array()) throw InvalidInput("strategy.functions: expected an array");
  StrategySet out;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    const std::string where = "strategy.functions[" + std::to_string(i) + "]";
    const auto pairs = value_as<std::vector<std::pair<double, double>>>(funcs[i], where);
    std::vector<StepPoint> raw;
    raw.reserve(pairs.size());
    for (const auto& [t, f] : pairs) raw.push_back({t, f});
    try {
      out.funcs.push_back(StepFunction::normalize(raw));
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + ": " + e.what());
    }
  }
  return out;
}

json strategy_to_json(const StrategySet& strategy) {
  json funcs = json::array();
  for (const auto& fn : strategy.funcs) {
    json pts = json::array();
    for (const auto& p : fn.points()) pts.push_back({p.t, p.f});
    funcs.push_back(std::move(pts));
  }
  return {{"functions", std::move(funcs)}};
}

// ---- reports -----------------------------------------------------------------

json to_json(const CheckReport& report, OverheadMode mode) {
  json out = {{"schedulable", report.schedulable}, {"mode", to_string(mode)}};
  if (report.violation) {
    const auto& v = *report.violation;
    // Reports count tasks and steps from 1.
    out["violation"] = {{"task", v.task + 1},
                        {"step", v.step + 1},
                        {"required_hz", std::isfinite(v.required) ? json(v.required) : json("inf")},
                        {"provided_hz", v.provided}};
  }
  return out;
}

json to_json(const WorstCaseReport& report, Seconds deadline) {
  const bool meets = !report.tau.empty() && report.tau.back() <= deadline + kTimeTolerance;
  return {{"deadline_s", deadline}, {"tau_s", report.tau}, {"witness_cycles", report.witness},
          {"meets_deadline", meets}};
}

json to_json(const SoftDeadlineResult& result, double eps, Seconds deadline) {
  return {{"eps", eps},
          {"deadline_s", deadline},
          {"kappa_cycles", result.kappa},
          {"frame_wcec_cycles", result.frame_wcec},
          {"frame_percentile_cycles", result.frame_percentile},
          {"adjusted_deadline_s", result.adjusted_deadline}};
}

// ---- CSV ---------------------------------------------------------------------

CycleDistribution read_histogram_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || trim(line) != "bin_upper_cycles,probability")
    throw InvalidInput(path.string() + ":1: expected header 'bin_upper_cycles,probability'");
  std::vector<Cycles> uppers;
  std::vector<double> probs;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    try {
      if (cells.size() != 2) throw std::invalid_argument("expected 2 columns");
      std::size_t used = 0;
      const std::string a = trim(cells[0]);
      const std::string b = trim(cells[1]);
      const Cycles upper = std::stoll(a, &used);
      if (used != a.size()) throw std::invalid_argument("bad cycle count");
      const double p = std::stod(b, &used);
      if (used != b.size()) throw std::invalid_argument("bad probability");
      uppers.push_back(upper);
      probs.push_back(p);
    } catch (const std::exception& e) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (uppers.empty()) throw InvalidInput(path.string() + ": no histogram rows");

  const Cycles bin = uppers.front();
  bool regular = bin > 0;
  for (std::size_t k = 0; regular && k < uppers.size(); ++k)
    regular = uppers[k] == static_cast<Cycles>(k + 1) * bin;
  try {
    if (regular) return CycleDistribution::histogram(bin, std::move(probs));
    return CycleDistribution::discrete(std::move(uppers), std::move(probs));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_histogram_csv(std::ostream& out, const CycleDistribution& dist) {
  out << "bin_upper_cycles,probability\n";
  if (dist.kind() == CycleDistribution::Kind::Uniform) {
    for (const auto& m : dist.masses()) out << m.value << ',' << format_number(m.prob) << '\n';
    return;
  }
  for (std::size_t k = 0; k < dist.values().size(); ++k)
    out << dist.values()[k] << ',' << format_number(dist.probs()[k]) << '\n';
}

std::vector<Cycles> read_trace(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<Cycles> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(s, &used));
      if (used != s.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception& e) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": bad cycle count");
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "deadline_s,strategy,mean_energy_j,energy_ratio,miss_rate,stderr_j\n";
  for (const auto& cell : table.cells) {
    out << format_number(cell.deadline) << ',' << cell.strategy << ',';
    if (cell.stats) {
      out << format_number(cell.stats->mean_energy) << ','
          << (cell.ratio ? format_number(*cell.ratio) : std::string("NA")) << ','
          << format_number(cell.stats->miss_rate) << ',' << format_number(cell.stats->energy_stderr);
    } else {
      out << "NA,NA,NA,NA";
    }
    out << '\n';
  }
}

void write_stats_csv(std::ostream& out, const std::vector<NamedStats>& rows) {
  out << "strategy,frames,mean_energy_j,stderr_j,miss_rate,mean_frequency_changes,overhead_share,energy_ratio\n";
  for (const auto& row : rows) {
    out << row.name << ',';
    if (row.stats) {
      const auto& s = *row.stats;
      out << s.frames << ',' << format_number(s.mean_energy) << ',' << format_number(s.energy_stderr) << ','
          << format_number(s.miss_rate) << ',' << format_number(s.mean_frequency_changes) << ','
          << format_number(s.overhead_share()) << ',' << (row.ratio ? format_number(*row.ratio) : "NA");
    } else {
      out << "NA,NA,NA,NA,NA,NA,NA";
    }
    out << '\n';
  }
}

}  // namespace framedvs
