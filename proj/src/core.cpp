#include "framedvs/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "framedvs/errors.hpp"

namespace framedvs {

namespace {

std::vector<std::vector<double>> square_or_zero(std::vector<std::vector<double>> table, std::size_t m,
                                                const char* what) {
  if (table.empty()) return std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0));
  if (table.size() != m) throw InvalidInput(std::string(what) + " must be an M x M table");
  for (const auto& row : table) {
    if (row.size() != m) throw InvalidInput(std::string(what) + " must be an M x M table");
    for (double v : row)
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(what) + " entries must be >= 0");
  }
  return table;
}

}  // namespace

FrequencyTable::FrequencyTable(std::vector<Hertz> freqs, std::vector<Watts> power,
                               std::vector<std::vector<Seconds>> switch_penalty,
                               std::vector<Seconds> same_speed_switch,
                               std::vector<std::vector<Joules>> switch_energy)
    : freqs_(std::move(freqs)), power_(std::move(power)) {
  const std::size_t m = freqs_.size();
  if (m == 0) throw InvalidInput("CPU needs at least one frequency");
  if (power_.size() != m) throw InvalidInput("power table length differs from frequency count");
  for (std::size_t j = 0; j < m; ++j) {
    if (!(freqs_[j] > 0.0) || !std::isfinite(freqs_[j])) throw InvalidInput("frequencies must be > 0");
    if (j > 0 && !(freqs_[j] > freqs_[j - 1])) throw InvalidInput("frequencies must be strictly increasing");
    if (!(power_[j] >= 0.0) || !std::isfinite(power_[j])) throw InvalidInput("power values must be >= 0");
  }
  pt_ = square_or_zero(std::move(switch_penalty), m, "switch penalty");
  energy_ = square_or_zero(std::move(switch_energy), m, "switch energy");
  if (same_speed_switch.empty()) same_speed_switch.assign(m, 0.0);
  if (same_speed_switch.size() != m) throw InvalidInput("same-speed switch vector length differs from M");
  for (double v : same_speed_switch)
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("same-speed switch times must be >= 0");
  st_ = std::move(same_speed_switch);

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) pt_max_ = std::max(pt_max_, pt_[a][b]);
  worst_switch_ = std::max(pt_max_, *std::max_element(st_.begin(), st_.end()));
}

std::optional<std::size_t> FrequencyTable::index_of(Hertz f) const {
  auto it = std::lower_bound(freqs_.begin(), freqs_.end(), f);
  if (it == freqs_.end() || *it != f) return std::nullopt;
  return static_cast<std::size_t>(it - freqs_.begin());
}

std::size_t FrequencyTable::checked_index(Hertz f) const {
  auto j = index_of(f);
  if (!j) throw InvalidInput("frequency " + std::to_string(f) + " Hz is not available on this CPU");
  return *j;
}

Watts FrequencyTable::power_at(Hertz f) const { return power_[checked_index(f)]; }

Seconds FrequencyTable::switch_penalty(Hertz from, Hertz to) const {
  return pt_[checked_index(from)][checked_index(to)];
}

Seconds FrequencyTable::same_speed_switch(Hertz f) const { return st_[checked_index(f)]; }

Joules FrequencyTable::switch_energy(Hertz from, Hertz to) const {
  return energy_[checked_index(from)][checked_index(to)];
}

Hertz FrequencyTable::quantize(Hertz x, Rounding mode) const {
  if (mode == Rounding::Up) {
    auto it = std::lower_bound(freqs_.begin(), freqs_.end(), x);
    if (it == freqs_.end()) throw Infeasible("speed " + std::to_string(x) + " Hz exceeds maximum speed");
    return *it;
  }
  if (x <= freqs_.front()) return freqs_.front();
  // Midpoint (f_{j-1}+f_j)/2 itself maps to f_j.
  for (std::size_t j = 1; j < freqs_.size(); ++j) {
    const double mid = 0.5 * (freqs_[j - 1] + freqs_[j]);
    if (x < mid) return freqs_[j - 1];
  }
  return freqs_.back();
}

FrameSystem::FrameSystem(std::vector<TaskSpec> tasks, Seconds deadline, FrequencyTable cpu)
    : tasks_(std::move(tasks)), deadline_(deadline), cpu_(std::move(cpu)) {
  validate_shape();
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (tasks_[i].dist.support_max() > tasks_[i].wcec)
      throw InvalidInput("task " + std::to_string(i + 1) + ": distribution exceeds its WCEC");
  }
}

void FrameSystem::validate_shape() const {
  if (tasks_.empty()) throw InvalidInput("a frame needs at least one task");
  if (!(deadline_ > 0.0) || !std::isfinite(deadline_)) throw InvalidInput("deadline must be > 0");
  for (std::size_t i = 0; i < tasks_.size(); ++i)
    if (tasks_[i].wcec <= 0) throw InvalidInput("task " + std::to_string(i + 1) + ": WCEC must be positive");
}

FrameSystem FrameSystem::for_planning(const FrameSystem& base, std::vector<Cycles> wcecs,
                                      Seconds deadline) {
  if (wcecs.size() != base.size()) throw InvalidInput("WCEC vector length differs from task count");
  FrameSystem out;
  out.tasks_ = base.tasks_;
  for (std::size_t i = 0; i < wcecs.size(); ++i) out.tasks_[i].wcec = wcecs[i];
  out.deadline_ = deadline;
  out.cpu_ = base.cpu_;
  out.validate_shape();
  return out;
}

std::vector<Cycles> FrameSystem::wcecs() const {
  std::vector<Cycles> out(tasks_.size());
  for (std::size_t i = 0; i < tasks_.size(); ++i) out[i] = tasks_[i].wcec;
  return out;
}

Cycles FrameSystem::total_wcec() const {
  return std::accumulate(tasks_.begin(), tasks_.end(), Cycles{0},
                         [](Cycles acc, const TaskSpec& t) { return acc + t.wcec; });
}

FrameSystem FrameSystem::with_deadline(Seconds deadline) const {
  FrameSystem out = *this;
  out.deadline_ = deadline;
  out.validate_shape();
  return out;
}

Feasibility validate_system(const FrameSystem& sys) {
  const auto total = static_cast<double>(sys.total_wcec());
  if (total / sys.cpu().max() > sys.deadline()) return Feasibility::NeverSchedulable;
  if (total / sys.cpu().min() <= sys.deadline()) return Feasibility::AlwaysSchedulable;
  return Feasibility::Depends;
}

StepFunction StepFunction::normalize(std::span<const StepPoint> raw) {
  if (raw.empty()) throw InvalidInput("step function needs at least one point");
  if (raw.front().t != 0.0) throw InvalidInput("step function must start at t = 0");
  StepFunction out;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& p = raw[k];
    if (!std::isfinite(p.t) || !std::isfinite(p.f) || !(p.f > 0.0))
      throw InvalidInput("step point has a non-finite time or nonpositive frequency");
    if (k > 0 && p.t < raw[k - 1].t) throw InvalidInput("step function times must be nondecreasing");
    if (!out.points_.empty() && out.points_.back().t == p.t) {
      out.points_.back().f = p.f;
    } else {
      out.points_.push_back(p);
    }
    // Merge with the predecessor once the frequency at this time is settled.
    const std::size_t n = out.points_.size();
    if (n >= 2 && out.points_[n - 1].f == out.points_[n - 2].f) out.points_.pop_back();
  }
  return out;
}

Hertz StepFunction::operator()(Seconds t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](Seconds value, const StepPoint& p) { return value < p.t; });
  if (it == points_.begin()) return points_.front().f;
  return std::prev(it)->f;
}

void validate_strategy(const FrameSystem& sys, const StrategySet& strategy) {
  if (strategy.funcs.size() != sys.size())
    throw InvalidInput("strategy has " + std::to_string(strategy.funcs.size()) + " functions for " +
                       std::to_string(sys.size()) + " tasks");
  for (std::size_t i = 0; i < strategy.funcs.size(); ++i)
    for (const auto& p : strategy.funcs[i].points())
      if (!sys.cpu().index_of(p.f))
        throw InvalidInput("task " + std::to_string(i + 1) + ": frequency " + std::to_string(p.f) +
                           " Hz is not available on this CPU");
}

}  // namespace framedvs
