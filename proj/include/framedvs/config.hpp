#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "framedvs/core.hpp"
#include "framedvs/schedulability.hpp"
#include "framedvs/simulator.hpp"
#include "framedvs/soft_deadline.hpp"
#include "framedvs/strategies.hpp"

namespace framedvs {

using nlohmann::json;

// ---- structured-text documents ---------------------------------------------

/// Parses a JSON document; syntax errors become InvalidInput naming
/// `origin` and the byte offset.
json parse_json(const std::string& text, const std::string& origin);
json load_json_file(const std::filesystem::path& path);

/// System config: {deadline_s, cpu:{freqs_mhz, power_w, pt_matrix_s,
/// st_vector_s, switch_energy_j?}, tasks:[{label?, wcec, dist}]}.
/// File references inside `dist` resolve against `base_dir`.
FrameSystem system_from_json(const json& doc, const std::filesystem::path& base_dir = {});
json system_to_json(const FrameSystem& sys);

CycleDistribution dist_from_json(const json& doc, const std::filesystem::path& base_dir,
                                 const std::string& where);
json dist_to_json(const CycleDistribution& dist);

/// Strategy file: {"functions": [[[t_seconds, f_hz], ...], ...]}.
StrategySet strategy_from_json(const json& doc);
json strategy_to_json(const StrategySet& strategy);

json to_json(const CheckReport& report, OverheadMode mode);
json to_json(const WorstCaseReport& report, Seconds deadline);
json to_json(const SoftDeadlineResult& result, double eps, Seconds deadline);

OverheadMode parse_overhead_mode(const std::string& text);
std::string to_string(OverheadMode mode);
Rounding parse_rounding(const std::string& text);
std::string to_string(Rounding mode);
StrategyKind parse_strategy_kind(const std::string& text);
std::string to_string(StrategyKind kind);

// ---- CSV --------------------------------------------------------------------

/// Histogram file: header `bin_upper_cycles,probability`, one row per bin.
/// Rows on a regular grid k*b become a histogram, anything else a
/// discrete distribution.
CycleDistribution read_histogram_csv(const std::filesystem::path& path);
void write_histogram_csv(std::ostream& out, const CycleDistribution& dist);

/// Raw trace: one cycle count per line.
std::vector<Cycles> read_trace(const std::filesystem::path& path);

/// `deadline_s,strategy,mean_energy_j,energy_ratio,miss_rate,stderr_j`;
/// failed cells print NA.
void write_sweep_csv(std::ostream& out, const SweepTable& table);

struct NamedStats {
  std::string name;
  std::optional<SimStats> stats;
  std::optional<double> ratio;
};

/// `strategy,frames,mean_energy_j,stderr_j,miss_rate,mean_frequency_changes,overhead_share,energy_ratio`.
void write_stats_csv(std::ostream& out, const std::vector<NamedStats>& rows);

std::string format_number(double v);

}  // namespace framedvs
