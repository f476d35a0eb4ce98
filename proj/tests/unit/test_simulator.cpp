#include "doctest.h"

#include <omp.h>

#include <cmath>
#include <vector>

#include "framedvs/errors.hpp"
#include "framedvs/schedulability.hpp"
#include "framedvs/simulator.hpp"
#include "framedvs/strategies.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace framedvs;

namespace {

StrategySet constant(const FrameSystem& sys, Hertz f) {
  return {std::vector<StepFunction>(sys.size(), StepFunction::constant(f))};
}

}  // namespace

TEST_CASE("run_frame basics") {
  const FrameSystem one({{100, CycleDistribution::degenerate(100), {}}}, 1.0, FrequencyTable({1000}, {1.6}));
  const std::vector<Cycles> c{100};
  const auto r = run_frame(one, constant(one, 1000), c, false);
  CHECK(r.finish_times == std::vector<Seconds>{0.1});
  CHECK(r.energy == doctest::Approx(0.16));
  CHECK_FALSE(r.missed);

  FrequencyTable cpu({500, 1000}, {1.0, 2.0}, {{0, 0.05}, {0.05, 0}}, {0.01, 0.02});
  const FrameSystem two({{100, CycleDistribution::degenerate(100), {}}, {100, CycleDistribution::degenerate(100), {}}},
                        1.0, cpu);
  const std::vector<Cycles> cc{100, 100};
  const auto same = run_frame(two, constant(two, 500), cc, true);
  CHECK(same.finish_times[0] == doctest::Approx(0.2));
  CHECK(same.finish_times[1] == doctest::Approx(0.2 + 0.01 + 0.2));
  CHECK(same.switch_time_total == doctest::Approx(0.01));
  CHECK(same.frequency_changes == 0);
  CHECK(same.energy == doctest::Approx(0.4));

  const std::vector<StepPoint> s2{{0.0, 500}, {0.1, 1000}};
  const StrategySet mixed{{StepFunction::constant(500), StepFunction::normalize(s2)}};
  const auto change = run_frame(two, mixed, cc, true);
  CHECK(change.finish_times[1] == doctest::Approx(0.2 + 0.05 + 0.1));
  CHECK(change.frequency_changes == 1);
  const auto quiet = run_frame(two, mixed, cc, false);
  CHECK(quiet.finish_times[1] == doctest::Approx(0.3));
  CHECK(quiet.switch_time_total == 0.0);
}

TEST_CASE("run_frame input validation") {
  const FrameSystem sys({{100, CycleDistribution::degenerate(100), {}}}, 1.0, FrequencyTable({1000}, {1.6}));
  const std::vector<Cycles> too_many{101};
  const std::vector<Cycles> wrong_len{1, 2};
  CHECK_THROWS_AS(run_frame(sys, constant(sys, 1000), too_many, false), InvalidInput);
  CHECK_THROWS_AS(run_frame(sys, constant(sys, 1000), wrong_len, false), InvalidInput);
}

TEST_CASE("fewer cycles can finish later") {
  const auto fig = testsupport::fig2_instance();
  const std::vector<Cycles> full{100, 100};
  const std::vector<Cycles> short1{90, 100};
  const auto a = run_frame(fig.sys, fig.strategy, full, false);
  const auto b = run_frame(fig.sys, fig.strategy, short1, false);
  CHECK(a.finish_times[1] == doctest::Approx(0.3));
  CHECK(b.finish_times[1] == doctest::Approx(0.38));
  CHECK(b.finish_times[1] > a.finish_times[1]);

  const auto w = worst_finish_oracle(fig.sys, fig.strategy, false);
  CHECK(w.tau[1] == doctest::Approx(0.38));
  CHECK(w.witness[1][0] == 90);
}

TEST_CASE("run_frame agrees with a naive frame simulator") {
  testsupport::Gen g(31);
  for (int rep = 0; rep < 500; ++rep) {
    const bool overheads = g.coin();
    const auto sys = testsupport::random_system(g, {5, 5, 3, overheads, 0.7, 3.0});
    const auto s = testsupport::random_strategy(g, sys);
    std::vector<Cycles> c;
    for (const auto& t : sys.tasks()) c.push_back(g.pick(t.dist.values()));
    const auto got = run_frame(sys, s, c, overheads);
    const auto want = testsupport::ref_frame(sys, s, c, overheads);
    for (std::size_t i = 0; i < sys.size(); ++i) CHECK(got.finish_times[i] == doctest::Approx(want.finish[i]));
    CHECK(got.energy == doctest::Approx(want.energy));
    CHECK(got.missed == want.missed);

    // Energy is the plain sum of P(f) c / f; finishing times never decrease.
    double e = 0.0;
    Seconds t = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const Hertz f = s.funcs[i](t);
      e += sys.cpu().power_at(f) * static_cast<double>(c[i]) / f;
      CHECK(got.finish_times[i] >= t);
      t = got.finish_times[i];
    }
    CHECK(got.energy == doctest::Approx(e));
  }
}

TEST_CASE("monte carlo on degenerate workloads is exact") {
  const FrameSystem sys({{100, CycleDistribution::degenerate(100), {}}, {50, CycleDistribution::degenerate(50), {}}},
                        1.0, FrequencyTable({200, 1000}, {0.1, 1.6}));
  const auto s = build_limit(sys, danger_zones(sys));
  const std::vector<Cycles> c{100, 50};
  const auto frame = run_frame(sys, s, c, false);
  const auto stats = monte_carlo(sys, s, {10'000, 5, false});
  CHECK(stats.mean_energy == frame.energy);
  CHECK(stats.energy_stderr == 0.0);
  CHECK(stats.miss_rate == 0.0);
  CHECK(stats.frames == 10'000);
}

TEST_CASE("parallel and serial drivers are bit-identical for any thread count") {
  testsupport::Gen g(41);
  for (int rep = 0; rep < 10; ++rep) {
    const bool overheads = g.coin();
    const auto sys = testsupport::random_system(g, {5, 5, 3, overheads, 0.8, 3.0});
    const auto s = testsupport::random_strategy(g, sys);
    const SimOptions opts{3 * kFrameBlock + 17, static_cast<std::uint64_t>(g.integer(0, 1 << 30)), overheads};
    const auto serial = monte_carlo_serial(sys, s, opts);
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 3, 8}) {
      omp_set_num_threads(threads);
      CHECK(monte_carlo(sys, s, opts) == serial);
    }
    omp_set_num_threads(saved);
    CHECK(monte_carlo(sys, s, opts) == monte_carlo(sys, s, opts));
  }
}

TEST_CASE("different seeds give different streams") {
  const FrameSystem sys({{100, CycleDistribution::uniform(1, 100), {}}}, 1.0, FrequencyTable({200, 1000}, {0.1, 1.6}));
  const auto s = build_limit(sys, danger_zones(sys));
  CHECK(monte_carlo(sys, s, {1000, 1, false}).mean_energy != monte_carlo(sys, s, {1000, 2, false}).mean_energy);
  CHECK_THROWS_AS(monte_carlo(sys, s, {0, 1, false}), InvalidInput);
}

TEST_CASE("exact expectation") {
  const FrameSystem one({{100, CycleDistribution::discrete({40, 100}, {0.25, 0.75}), {}}}, 1.0,
                        FrequencyTable({200, 1000}, {0.1, 1.6}));
  const auto s = StrategySet{{StepFunction::constant(200)}};
  const std::vector<Cycles> lo{40}, hi{100};
  const double want = 0.25 * run_frame(one, s, lo, false).energy + 0.75 * run_frame(one, s, hi, false).energy;
  const auto ex = exact_expectation(one, s, false);
  CHECK(ex.stats.mean_energy == doctest::Approx(want));
  CHECK(ex.total_mass == doctest::Approx(1.0));
  CHECK(ex.stats.energy_stderr == 0.0);

  testsupport::Gen g(51);
  for (int rep = 0; rep < 200; ++rep) {
    const bool overheads = g.coin();
    const auto sys = testsupport::random_system(g, {4, 4, 3, overheads, 0.6, 2.0});
    const auto st = testsupport::random_strategy(g, sys);
    const auto e = exact_expectation(sys, st, overheads);
    const auto r = testsupport::brute_expectation(sys, st, overheads);
    CHECK(std::abs(e.total_mass - 1.0) <= 1e-9);
    CHECK(e.stats.mean_energy == doctest::Approx(r.energy));
    CHECK(e.stats.miss_rate == doctest::Approx(r.miss));
  }

  const FrameSystem wide({{1000, CycleDistribution::uniform(1, 1000), {}}, {1000, CycleDistribution::uniform(1, 1000), {}}},
                         100.0, FrequencyTable({200, 1000}, {0.1, 1.6}));
  CHECK_THROWS_AS(exact_expectation(wide, constant(wide, 1000), false, 1000), CapExceeded);
}

TEST_CASE("monte carlo tracks the exact expectation") {
  testsupport::Gen g(61);
  for (int rep = 0; rep < 20; ++rep) {
    const auto sys = testsupport::random_system(g, {4, 4, 3, false, 0.8, 3.0});
    const auto s = testsupport::random_strategy(g, sys);
    const auto mc = monte_carlo(sys, s, {50'000, static_cast<std::uint64_t>(rep), false});
    const auto ex = exact_expectation(sys, s, false);
    CHECK(std::abs(mc.mean_energy - ex.stats.mean_energy) <= 4.0 * mc.energy_stderr + 1e-15);
  }
}

TEST_CASE("worst-case oracle") {
  const FrameSystem sys({{100, CycleDistribution::uniform(10, 100), {}}, {300, CycleDistribution::uniform(1, 300), {}}},
                        1.0, FrequencyTable({200, 1000}, {0.1, 1.6}));
  const auto top = worst_finish_oracle(sys, constant(sys, 1000), false);
  CHECK(top.tau.back() == doctest::Approx(0.4));
  CHECK(top.witness.back() == std::vector<Cycles>{100, 300});

  testsupport::Gen g(71);
  for (int rep = 0; rep < 400; ++rep) {
    const bool overheads = g.coin();
    const auto s_sys = testsupport::random_system(g, {4, 4, 3, overheads, 0.6, 2.0});
    const auto st = testsupport::random_strategy(g, s_sys);
    const auto w = worst_finish_oracle(s_sys, st, overheads);
    const auto brute = testsupport::brute_worst_finish(s_sys, st, overheads);
    for (std::size_t i = 0; i < s_sys.size(); ++i) {
      CHECK(w.tau[i] == doctest::Approx(brute[i]).epsilon(1e-12));
      // The witness replays to tau_i.
      auto c = w.witness[i];
      REQUIRE(c.size() == i + 1);
      for (std::size_t k = i + 1; k < s_sys.size(); ++k) c.push_back(s_sys.task(k).dist.support_min());
      CHECK(run_frame(s_sys, st, c, overheads).finish_times[i] == doctest::Approx(w.tau[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("checked strategies never miss") {
  testsupport::Gen g(81);
  for (int rep = 0; rep < 40; ++rep) {
    const bool overheads = g.coin();
    const auto sys = testsupport::random_system(g, {5, 5, 3, overheads, 1.0, 3.0});
    const auto z = danger_zones(sys, overheads ? OverheadMode::Sufficient : OverheadMode::Plain);
    for (const auto& s : {build_limit(sys, z), discretize(sys, z, dpms_rule(sys), Rounding::Closest)}) {
      REQUIRE(check(sys, s, z).schedulable);
      CHECK(monte_carlo(sys, s, {20'000, 3, overheads}).miss_rate == 0.0);
      CHECK(worst_finish_oracle(sys, s, overheads).tau.back() <= sys.deadline() + kTimeTolerance);
    }
  }
}

TEST_CASE("deadline sweep") {
  const FrameSystem sys({{100, CycleDistribution::uniform(10, 100), {}}, {200, CycleDistribution::uniform(20, 200), {}}},
                        1.0, FrequencyTable({100, 250, 1000}, {0.01, 0.08, 1.6}));
  auto maker = [](Rounding r) {
    return [r](const FrameSystem& s) { return discretize(s, danger_zones(s), dpms_rule(s), r, {true}); };
  };
  const std::vector<StrategyBuilder> builders{
      {"closest", maker(Rounding::Closest)},
      {"up", maker(Rounding::Up)},
      {"limit", [](const FrameSystem& s) { return build_limit(s, danger_zones(s), {true}); }},
      {"strict", [](const FrameSystem& s) { return build_limit(s, danger_zones(s)); }}};
  const SweepGrid grid{0.2, 3.0, 15};
  const auto d = grid.deadlines();
  CHECK(d.front() == 0.2);
  CHECK(d.back() == 3.0);
  const auto table = sweep_deadlines(sys, builders, grid, {5000, 9, false}, "closest");
  REQUIRE(table.cells.size() == 15 * 4);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(*table.at(0, s).ratio == 1.0);
    CHECK(*table.at(14, s).ratio == 1.0);
  }
  CHECK_FALSE(table.at(0, 3).stats.has_value());
  CHECK_FALSE(table.at(0, 3).note.empty());
  CHECK(table.at(14, 3).stats.has_value());
  bool differs = false;
  for (std::size_t k = 0; k < 15; ++k) differs |= std::abs(*table.at(k, 1).ratio - 1.0) > 1e-6;
  CHECK(differs);

  CHECK_THROWS_AS(sweep_deadlines(sys, builders, {1.0, 0.5, 3}, {10, 1, false}, "closest"), InvalidInput);
  CHECK_THROWS_AS(sweep_deadlines(sys, builders, grid, {10, 1, false}, "nope"), InvalidInput);
}
