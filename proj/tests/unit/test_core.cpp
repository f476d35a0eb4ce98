#include "doctest.h"

#include <vector>

#include "framedvs/core.hpp"
#include "framedvs/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace framedvs;

namespace {

StepFunction steps(std::vector<StepPoint> pts) { return StepFunction::normalize(pts); }

FrequencyTable xscale() { return FrequencyTable({150, 400, 600, 800, 1000}, {0.08, 0.17, 0.4, 0.9, 1.6}); }

FrameSystem three_tasks(Seconds d, std::vector<Hertz> f) {
  std::vector<Watts> p(f.size(), 1.0);
  std::vector<TaskSpec> tasks;
  for (Cycles w : {100, 200, 300}) tasks.push_back({w, CycleDistribution::degenerate(w), {}});
  return FrameSystem(tasks, d, FrequencyTable(f, p));
}

}  // namespace

TEST_CASE("step evaluation") {
  const auto s = steps({{0, 500}, {0.2, 1000}});
  CHECK(s(0.1) == 500);
  CHECK(s(0.2) == 1000);
  CHECK(s(0.0) == 500);
  CHECK(steps({{0, 500}})(99) == 500);
  CHECK(s(-1.0) == 500);
}

TEST_CASE("normalize collapses and merges") {
  CHECK(steps({{0, 500}, {0, 1000}}).points() == std::vector<StepPoint>{{0, 1000}});
  CHECK(steps({{0, 500}, {0.2, 500}, {0.3, 800}}).points() == std::vector<StepPoint>{{0, 500}, {0.3, 800}});
  CHECK(steps({{0, 500}, {0.2, 1000}}).points() == std::vector<StepPoint>{{0, 500}, {0.2, 1000}});
}

TEST_CASE("normalize rejects malformed input") {
  CHECK_THROWS_AS(steps({}), InvalidInput);
  CHECK_THROWS_AS(steps({{0.1, 500}}), InvalidInput);
  CHECK_THROWS_AS(steps({{0, 500}, {0.3, 600}, {0.2, 700}}), InvalidInput);
  CHECK_THROWS_AS(steps({{0, -5}}), InvalidInput);
}

TEST_CASE("binary search matches a linear scan") {
  testsupport::Gen g(11);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<StepPoint> pts{{0.0, static_cast<double>(g.integer(1, 5))}};
    const auto k = g.integer(0, 8);
    for (int j = 0; j < k; ++j) pts.push_back({pts.back().t + g.real(0.0, 1.0), static_cast<double>(g.integer(1, 5))});
    const auto s = StepFunction::normalize(pts);
    for (int q = 0; q < 20; ++q) {
      const double t = g.real(-0.5, pts.back().t + 1.0);
      CHECK(s(t) == testsupport::eval_linear(s, t));
    }
    for (const auto& p : s.points()) CHECK(s(p.t) == p.f);
    // Normalized times strictly increase and neighbours differ.
    for (std::size_t j = 1; j < s.size(); ++j) {
      CHECK(s.points()[j].t > s.points()[j - 1].t);
      CHECK(s.points()[j].f != s.points()[j - 1].f);
    }
  }
}

TEST_CASE("quantize") {
  const auto cpu = xscale();
  CHECK(cpu.quantize(450, Rounding::Up) == 600);
  CHECK(cpu.quantize(450, Rounding::Closest) == 400);
  CHECK(cpu.quantize(500, Rounding::Closest) == 600);
  CHECK(cpu.quantize(400, Rounding::Up) == 400);
  CHECK(cpu.quantize(10, Rounding::Up) == 150);
  CHECK(cpu.quantize(10, Rounding::Closest) == 150);
  CHECK(cpu.quantize(5000, Rounding::Closest) == 1000);
  CHECK_THROWS_AS(cpu.quantize(1000.5, Rounding::Up), Infeasible);
}

TEST_CASE("frequency table validation") {
  CHECK_THROWS_AS(FrequencyTable({}, {}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100, 100}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100, 50}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({0, 50}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100}, {1, 2}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100}, {-1}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100, 200}, {1, 2}, {{0, 1}}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100, 200}, {1, 2}, {{0, -1}, {0, 0}}), InvalidInput);
  CHECK_THROWS_AS(FrequencyTable({100, 200}, {1, 2}, {}, {0.1}), InvalidInput);
}

TEST_CASE("overhead maxima") {
  FrequencyTable cpu({100, 200, 300}, {1, 2, 3}, {{0, 0.02, 0.01}, {0.03, 0, 0.01}, {0.01, 0.01, 0}},
                     {0.001, 0.002, 0.05});
  CHECK(cpu.max_switch_penalty() == doctest::Approx(0.03));
  CHECK(cpu.top_same_speed_switch() == doctest::Approx(0.05));
  CHECK(cpu.worst_job_switch() == doctest::Approx(0.05));
  CHECK(cpu.switch_penalty(200, 100) == doctest::Approx(0.03));
  CHECK(cpu.same_speed_switch(200) == doctest::Approx(0.002));
  CHECK(cpu.switch_energy(100, 300) == 0.0);
  CHECK(cpu.has_overheads());
  CHECK_FALSE(xscale().has_overheads());
  CHECK_THROWS_AS(cpu.power_at(150), InvalidInput);
}

TEST_CASE("validate_system classification") {
  CHECK(validate_system(three_tasks(0.5, {1000})) == Feasibility::NeverSchedulable);
  CHECK(validate_system(three_tasks(4.0, {150, 1000})) == Feasibility::AlwaysSchedulable);
  CHECK(validate_system(three_tasks(1.0, {150, 1000})) == Feasibility::Depends);
  CHECK(validate_system(three_tasks(0.6, {150, 1000})) == Feasibility::Depends);
}

TEST_CASE("frame system validation") {
  const auto cpu = xscale();
  CHECK_THROWS_AS(FrameSystem({}, 1.0, cpu), InvalidInput);
  CHECK_THROWS_AS(FrameSystem({{100, CycleDistribution::degenerate(100), {}}}, 0.0, cpu), InvalidInput);
  CHECK_THROWS_AS(FrameSystem({{100, CycleDistribution::degenerate(101), {}}}, 1.0, cpu), InvalidInput);
  CHECK_THROWS_AS(FrameSystem({{0, CycleDistribution::degenerate(1), {}}}, 1.0, cpu), InvalidInput);
  FrameSystem sys({{100, CycleDistribution::degenerate(100), {}}}, 1.0, cpu);
  const auto plan = FrameSystem::for_planning(sys, {50}, 0.5);
  CHECK(plan.wcec(0) == 50);
  CHECK(plan.deadline() == 0.5);
  CHECK(sys.with_deadline(2.0).deadline() == 2.0);
  CHECK_THROWS_AS(sys.with_deadline(-1.0), InvalidInput);
}

TEST_CASE("validate_strategy") {
  FrameSystem sys({{100, CycleDistribution::degenerate(100), {}}}, 1.0, xscale());
  CHECK_NOTHROW(validate_strategy(sys, {{StepFunction::constant(400)}}));
  CHECK_THROWS_AS(validate_strategy(sys, {{StepFunction::constant(450)}}), InvalidInput);
  CHECK_THROWS_AS(validate_strategy(sys, {}), InvalidInput);
}
