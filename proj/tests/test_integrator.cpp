// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "lts/integrator.hpp"
#include "test_systems.hpp"

using lts::ErrorKind;
using lts::Evolver;
using lts::EvolverOptions;
using lts::SteppingMode;

namespace {
template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const lts::Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

constexpr std::int64_t one = std::int64_t{1} << 40;
}  // namespace

TEST_CASE("Adams-Bashforth increment", "[integrator]") {
  const std::vector<std::vector<double>> derivatives{{2.0, 1.0}, {0.0, 1.0}};
  const auto euler =
      lts::gts_ab_step(derivatives, lts::AbCoeffs<double>{1, {1.0}, 0.5});
  CHECK(euler == std::vector<double>{1.0, 0.5});
  const auto ab2 = lts::gts_ab_step(
      derivatives, lts::AbCoeffs<double>{2, {1.5, -0.5}, 0.25});
  CHECK(ab2[0] == 0.75);
  CHECK(ab2[1] == 0.25);
  CHECK(error_kind([&] {
          lts::gts_ab_step(derivatives,
                           lts::AbCoeffs<double>{3, {1.0, 1.0, 1.0}, 1.0});
        }) == ErrorKind::InsufficientHistory);
}

TEST_CASE("Coupling increment", "[integrator]") {
  lts::PairTable table{2, {{0, 0, 0.5}, {1, 1, -0.25}}};
  const std::vector<double> zero{0.0, 0.0};
  std::vector<double> increment{1.0, 2.0};
  lts::lts_coupling_step(table, 2.0, [&](std::size_t, std::size_t) {
    return &zero;
  }, increment);
  CHECK(increment == std::vector<double>{1.0, 2.0});

  const std::vector<double> value{1.0, -1.0};
  lts::lts_coupling_step(table, 2.0, [&](std::size_t own, std::size_t) {
    return own == 0 ? &value : &zero;
  }, increment);
  CHECK(increment == std::vector<double>{2.0, 1.0});

  CHECK(error_kind([&] {
          lts::lts_coupling_step(
              table, 1.0,
              [](std::size_t, std::size_t) -> const std::vector<double>* {
                return nullptr;
              },
              increment);
        }) == ErrorKind::MissingCouplingRecord);
}

TEST_CASE("Power-of-two step controller", "[integrator]") {
  lts::SchedulerState state;
  state.order = 3;
  state.resolution_exponent = -4;
  state.time = {32};
  state.step = {4};
  state.equal_steps = {2};
  // Bound of 8.5 ticks: doubling permitted and aligned.
  CHECK(lts::step_controller(state, 0, 8.5 / 16) == 8);
  // Far larger bound: still only doubles.
  CHECK(lts::step_controller(state, 0, 100.0) == 8);
  // Bound between current and double: keep.
  CHECK(lts::step_controller(state, 0, 6.0 / 16) == 4);
  // Smaller bound: immediate drop to the largest power of two.
  CHECK(lts::step_controller(state, 0, 1.5 / 16) == 1);
  // Too few equal steps.
  state.equal_steps = {1};
  CHECK(lts::step_controller(state, 0, 100.0) == 4);
  // Doubling would be misaligned.
  state.equal_steps = {5};
  state.time = {36};
  CHECK(lts::step_controller(state, 0, 100.0) == 4);
  CHECK(lts::power_of_two_floor(0.3) == 1);
  CHECK(lts::power_of_two_floor(1024.0) == 1024);
  CHECK(lts::power_of_two_floor(1023.9) == 512);
}

TEST_CASE("Self-start ramps the order", "[integrator]") {
  lts_test::DecaySystem decay;
  EvolverOptions options;
  options.order = 1;
  auto start1 = lts::self_start(decay, 0, {{1.0}}, options);
  CHECK(start1.records(0).size() == 1);
  CHECK(start1.time() == 0);

  // With a coarse initial step the ramp's local errors are visible:
  // Euler then AB2, then full order.
  options.order = 3;
  options.resolution_exponent = -20;
  const auto local_errors = [&](const std::int64_t h_ticks) {
    options.initial_step = h_ticks;
    auto evolver = lts::self_start(decay, 0, {{1.0}}, options);
    const double h = std::ldexp(static_cast<double>(h_ticks), -20);
    REQUIRE(evolver.records(0).size() == 3);
    const double e1 = std::abs(evolver.records(0)[1].state[0] - std::exp(-h));
    evolver.advance(3 * h_ticks);
    return std::pair{e1, std::abs(evolver.state(0)[0] - std::exp(-3 * h))};
  };
  const auto coarse = local_errors(std::int64_t{1} << 12);
  const auto fine = local_errors(std::int64_t{1} << 11);
  // First step is Euler: local error ~ h^2 / 2.
  CHECK(coarse.first / fine.first == Catch::Approx(4.0).epsilon(0.05));
  CHECK(coarse.first > 0.0);
}

TEST_CASE("Adams-Bashforth convergence on decay", "[integrator]") {
  lts_test::DecaySystem decay;
  for (const std::size_t order : {2, 3, 4, 5}) {
    EvolverOptions options;
    options.order = order;
    double previous = 0.0;
    for (const int level : {5, 6, 7}) {
      decay.bound = std::ldexp(1.0, -level);
      Evolver<lts_test::DecaySystem> evolver(decay, options, 0, {{1.0}});
      evolver.run(one);
      const double error = std::abs(evolver.state(0)[0] - std::exp(-1.0));
      if (previous > 0.0) {
        const double rate = std::log2(previous / error);
        INFO("order " << order << " level " << level);
        CHECK(std::abs(rate - static_cast<double>(order)) < 0.3);
      }
      previous = error;
    }
  }
}

TEST_CASE("Polynomial solutions are exact on LTS patterns", "[integrator]") {
  std::mt19937_64 rng(7);
  for (const std::size_t order : {2, 3, 4, 5}) {
    lts_test::ClockChain chain;
    chain.sets = 4;
    chain.connect();
    const int k = static_cast<int>(order);
    chain.volume_power = k - 1;
    chain.own_power = (k - 1) / 2;
    chain.other_power = (k - 1) - chain.own_power;
    chain.base_bound = 1.0 / 16;
    const std::uint64_t salt = rng();
    chain.level = [salt](std::size_t s, double t) {
      const auto slot = static_cast<std::uint64_t>(std::floor(t * 4.0));
      return static_cast<int>(((slot + 1) * 2654435761ULL ^ (s * 97 + salt)) %
                              3);
    };
    EvolverOptions options;
    options.order = order;
    std::vector<std::vector<double>> initial(4, {0.0, 0.0});
    Evolver<lts_test::ClockChain> evolver(chain, options, 0, initial);
    std::set<std::int64_t> sizes;
    evolver.set_step_logger(
        [&](const lts::StepLogEntry& entry) { sizes.insert(entry.size); });
    evolver.run(2 * one);
    CHECK(sizes.size() >= 3);
    for (std::size_t s = 0; s < 4; ++s) {
      INFO("order " << order << " set " << s);
      CHECK(evolver.state(s)[0] == Catch::Approx(2.0).epsilon(1e-14));
      const double exact = chain.exact_value(s, 0.0, 2.0);
      CHECK(std::abs(evolver.state(s)[1] - exact) <= 1e-12 * std::abs(exact));
    }
  }
}

TEST_CASE("LTS evolution conserves the total", "[integrator]") {
  lts_test::FluxRing ring;
  ring.sets = 5;
  ring.speeds = {1.0, 2.0, 4.0, 1.5, 3.0};
  ring.connect();
  for (const std::size_t order : {1, 2, 3, 4, 5, 6}) {
    EvolverOptions options;
    options.order = order;
    std::vector<std::vector<double>> initial;
    for (std::size_t s = 0; s < ring.sets; ++s) {
      initial.push_back({0.3 + 0.1 * s, 0.5, 0.2 * s});
    }
    Evolver<lts_test::FluxRing> evolver(ring, options, 0, initial);
    const double c0 = lts_test::total(initial);
    double drift = 0.0;
    bool mixed = false;
    evolver.run(3 * one, [&](const auto& e) {
      mixed = mixed || !e.synchronized();
      if (e.synchronized()) {
        drift = std::max(drift, std::abs(lts_test::total(e.states()) - c0));
      }
    });
    INFO("order " << order);
    CHECK(mixed);
    CHECK(evolver.total_steps() > 1000);
    CHECK(drift <= 50 * 2.2e-16 * std::abs(c0) *
                       (1.0 + evolver.total_steps() / 1000.0));
  }
}

TEST_CASE("Constant-step LTS reproduces GTS", "[integrator]") {
  lts_test::FluxRing ring;
  ring.sets = 4;
  ring.speeds = {1.0, 2.0, 4.0, 1.5};
  ring.connect();
  std::vector<std::vector<double>> initial;
  for (std::size_t s = 0; s < ring.sets; ++s) {
    initial.push_back({0.3 + 0.1 * s, 0.5, 0.2 * s});
  }
  EvolverOptions options;
  options.order = 4;
  options.mode = SteppingMode::Gts;
  Evolver<lts_test::FluxRing> gts(ring, options, 0, initial);
  options.mode = SteppingMode::LtsConstantStep;
  Evolver<lts_test::FluxRing> constant(ring, options, 0, initial);
  std::vector<lts::StepLogEntry> gts_log;
  std::vector<lts::StepLogEntry> constant_log;
  gts.set_step_logger([&](const auto& e) { gts_log.push_back(e); });
  constant.set_step_logger([&](const auto& e) { constant_log.push_back(e); });
  gts.run(one / 2);
  constant.run(one / 2);
  REQUIRE(gts_log.size() == constant_log.size());
  for (std::size_t i = 0; i < gts_log.size(); ++i) {
    REQUIRE(gts_log[i].start == constant_log[i].start);
    REQUIRE(gts_log[i].size == constant_log[i].size);
  }
  for (std::size_t s = 0; s < ring.sets; ++s) {
    for (std::size_t i = 0; i < ring.size; ++i) {
      CHECK(std::abs(gts.state(s)[i] - constant.state(s)[i]) <=
            1e-14 * std::abs(gts.state(s)[i]) + 1e-300);
    }
  }
  // Both evaluate every coupling once per step; GTS also at the start.
  CHECK(gts.evaluations().coupling ==
        constant.evaluations().coupling + ring.edges().size());
}

TEST_CASE("Steady 2:1 stepping cycles through three step types",
          "[integrator]") {
  lts_test::CoupledPair pair;
  EvolverOptions options;
  options.order = 3;
  options.resolution_exponent = -20;
  options.initial_step = std::int64_t{1} << 10;
  Evolver<lts_test::CoupledPair> evolver(pair, options, 0, {{0.1}, {0.2}});
  std::vector<lts::StepLogEntry> log;
  evolver.set_step_logger([&](const auto& e) { log.push_back(e); });
  evolver.run(std::int64_t{1} << 20);
  // After the controller settles, A steps 2^15 and B steps 2^14 ticks.
  const std::int64_t settle = std::int64_t{1} << 18;
  std::size_t a_steps = 0;
  std::size_t b_steps = 0;
  for (const auto& e : log) {
    if (e.start >= settle) {
      CHECK(e.size == (e.set == 0 ? 1 << 15 : 1 << 14));
      ++(e.set == 0 ? a_steps : b_steps);
    }
  }
  CHECK(b_steps == 2 * a_steps);
  // Only a handful of distinct patterns are ever generated.
  CHECK(evolver.cache().size() < 60);
  CHECK(evolver.cache().hits() > 10 * evolver.cache().misses());
}

TEST_CASE("Second-order worked example increments", "[integrator]") {
  CHECK(lts_test::worked_example_deviation() <= 1e-14);
}

TEST_CASE("History stays bounded", "[integrator]") {
  lts_test::FluxRing ring;
  ring.sets = 3;
  ring.speeds = {1.0, 8.0, 1.0};
  ring.connect();
  EvolverOptions options;
  options.order = 4;
  Evolver<lts_test::FluxRing> evolver(
      ring, options, 0, {{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}});
  std::size_t max_records = 0;
  std::size_t max_coupling = 0;
  evolver.run(one / 4, [&](const auto& e) {
    for (std::size_t s = 0; s < 3; ++s) {
      max_records = std::max(max_records, e.records(s).size());
    }
    max_coupling = std::max(max_coupling, e.retained_coupling_values());
  });
  CHECK(max_records <= 4 + 8);
  CHECK(max_coupling < 200);
}

TEST_CASE("Split midpoint rule", "[integrator]") {
  lts_test::DecaySystem decay;
  decay.lambda = -0.7;
  const double dt = 0.1;
  const auto [first, second] = lts::split_rk2_step(decay, 0.0, dt, {{2.0}});
  const double z = decay.lambda * dt;
  CHECK(2.0 + first[0][0] + second[0][0] ==
        Catch::Approx(2.0 * (1.0 + z + 0.5 * z * z)).epsilon(1e-15));

  lts_test::FluxRing ring;
  ring.connect();
  std::vector<std::vector<double>> y{
      {0.3, 0.1, 0.2}, {0.5, 0.4, 0.1}, {0.9, 0.2, 0.3}, {0.1, 0.1, 0.8}};
  const auto [f, g] = lts::split_rk2_step(ring, 0.0, 0.01, y);
  CHECK(std::abs(lts_test::total(f) + lts_test::total(g)) < 1e-16);

  CHECK(error_kind([&] { lts::split_rk2_step(ring, 0.0, 0.1, {{1.0}}); }) ==
        ErrorKind::InsufficientHistory);
}

TEST_CASE("Evolver argument checks", "[integrator]") {
  lts_test::DecaySystem decay;
  EvolverOptions options;
  options.initial_step = 3;
  CHECK(error_kind([&] {
          Evolver<lts_test::DecaySystem>(decay, options, 0, {{1.0}});
        }) == ErrorKind::InvalidArgument);
  options.initial_step = 4;
  CHECK(error_kind([&] {
          Evolver<lts_test::DecaySystem>(decay, options, 0, {{1.0}, {2.0}});
        }) == ErrorKind::InvalidArgument);
  Evolver<lts_test::DecaySystem> evolver(decay, options, 0, {{1.0}});
  evolver.run(8);
  CHECK_FALSE(evolver.advance(8));
  CHECK(error_kind([&] { evolver.advance(4); }) ==
        ErrorKind::NonMonotonicTimes);
}
