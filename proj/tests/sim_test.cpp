#include <gtest/gtest.h>

#include <cmath>

#include "ptc/analysis.hpp"
#include "ptc/controller.hpp"
#include "ptc/error.hpp"
#include "ptc/plant.hpp"
#include "ptc/sim.hpp"

using namespace ptc;

namespace {

ControllerDesign example2_design(double tau) {
  const PlantSpec p = builtin_plant("example2");
  DesignRequest r;
  r.c = {-1, -2};
  r.tau = tau;
  r.gamma_min = p.gamma_min;
  r.phi = p.phi;
  r.phi0 = p.phi0;
  return design_controller(r);
}

SimConfig example2_config() {
  SimConfig cfg;
  cfg.x0 = {10, 10};
  return cfg;
}

}  // namespace

TEST(Sim, FirstOrderClosedForm) {
  const PlantSpec plant = expression_plant(1, "0", "1", 1.0, 1.0, 0.0, 0.0);
  DesignRequest r;
  r.c = {-1};
  r.tau = 2.0;
  r.alpha = 0.25;
  const ControllerDesign d = design_controller(r);
  SimConfig cfg;
  cfg.x0 = {3.0};
  cfg.dt_base = 1e-3;
  cfg.shrink_divisor = 500.0;
  const SimTrace tr = run(plant, d, cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double exact = 3.0 * std::pow(1.0 - tr.times[k] / 2.0, 1.0 / 0.25);
    worst = std::max(worst, std::abs(tr.state(k)[0] - exact) / exact);
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Sim, SamplingLayout) {
  const ControllerDesign d = example2_design(10.0);
  const PlantSpec plant = builtin_plant("example2");
  SimConfig cfg = example2_config();
  const SimTrace full = run(plant, d, cfg);
  EXPECT_EQ(full.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(full.times.back(), 10.0 * (1.0 - 1e-3));
  EXPECT_EQ(full.size(), full.steps_taken + 1);
  EXPECT_EQ(full.states.size(), 2 * full.size());
  EXPECT_DOUBLE_EQ(full.x0_norm, std::sqrt(200.0));
  EXPECT_DOUBLE_EQ(full.lambda_bounds.front(), std::sqrt(200.0));
  for (std::size_t k = 1; k < full.size(); ++k) EXPECT_GT(full.times[k], full.times[k - 1]);

  cfg.record_stride = 10;
  const SimTrace strided = run(plant, d, cfg);
  EXPECT_EQ(strided.steps_taken, full.steps_taken);
  EXPECT_EQ(strided.times.back(), full.times.back());
  EXPECT_EQ(strided.norms.back(), full.norms.back());
  EXPECT_EQ(strided.size(), full.steps_taken / 10 + 1 + (full.steps_taken % 10 != 0));
}

TEST(Sim, ExampleTwoGoldenRun) {
  const SimTrace tr = run(builtin_plant("example2"), example2_design(10.0), example2_config());
  EXPECT_NEAR(tr.stiffness_radius, 64.27, 0.01);
  EXPECT_LE(tr.norms.back(), 0.5);
  EXPECT_NEAR(tr.norms.back(), 1.3418e-3, 1e-5);
  EXPECT_NEAR(tr.inputs.front(), -309.666, 1e-3);
  double peak = 0.0;
  for (double u : tr.inputs) peak = std::max(peak, std::abs(u));
  EXPECT_DOUBLE_EQ(peak, std::abs(tr.inputs.front()));
}

TEST(Sim, DeterministicAndSweepMatchesRuns) {
  const PlantSpec plant = builtin_plant("example2");
  const SimConfig cfg = example2_config();
  const std::vector<double> taus{10, 15, 20};
  DesignRequest r;
  r.c = {-1, -2};
  r.phi = plant.phi;
  r.phi0 = plant.phi0;
  r.tau = 10;
  const auto serial = sweep(plant, r, taus, cfg, 1);
  const auto parallel = sweep(plant, r, taus, cfg, 3);
  ASSERT_EQ(serial.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(serial[i], parallel[i]);
    EXPECT_EQ(serial[i], run(plant, example2_design(taus[i]), cfg));
    EXPECT_DOUBLE_EQ(serial[i].tau, taus[i]);
  }
  EXPECT_NE(serial[0].design_fingerprint, serial[1].design_fingerprint);
  EXPECT_EQ(serial[0].plant_fingerprint, serial[1].plant_fingerprint);
}

TEST(Sim, DivergenceCarriesPartialTrace) {
  SimConfig cfg = example2_config();
  cfg.divergence_limit = 100.0;
  try {
    run(builtin_plant("example2"), example2_design(10.0), cfg);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.partial().size(), 1u);
    EXPECT_EQ(e.partial().times.front(), 0.0);
    EXPECT_NE(std::string(e.what()).find("divergence at t = 0"), std::string::npos);
  }
}

TEST(Sim, AuditCatchesUnderstatedBound) {
  PlantSpec plant = builtin_plant("example2");
  plant.phi0 = 1.0;
  EXPECT_THROW(run(plant, example2_design(10.0), example2_config()), AuditError);
  SimConfig cfg = example2_config();
  cfg.audit = false;
  EXPECT_NO_THROW(run(plant, example2_design(10.0), cfg));
}

TEST(Sim, ConfigValidation) {
  const PlantSpec plant = builtin_plant("example2");
  const ControllerDesign d = example2_design(10.0);
  auto expect_bad = [&](auto mutate, auto type_tag) {
    SimConfig cfg = example2_config();
    mutate(cfg);
    EXPECT_THROW(run(plant, d, cfg), decltype(type_tag));
  };
  expect_bad([](SimConfig& c) { c.dt_base = 0.0; }, ParameterError(""));
  expect_bad([](SimConfig& c) { c.epsilon_fraction = 1.0; }, ParameterError(""));
  expect_bad([](SimConfig& c) { c.record_stride = 0; }, ParameterError(""));
  expect_bad([](SimConfig& c) { c.shrink_divisor = 0.5; }, ParameterError(""));
  expect_bad([](SimConfig& c) { c.x0 = {1}; }, ShapeError(""));
  expect_bad([](SimConfig& c) { c.x0 = {1, NAN}; }, ParameterError(""));
  EXPECT_THROW(run(builtin_plant("example3"), d, example2_config()), ShapeError);
}

TEST(Sim, StiffnessRadius) {
  const ControllerDesign d = example2_design(10.0);
  const GainSchedule s(d);
  const double q1 = s.numerators()[0], q2 = s.numerators()[1];
  // Roots of nu^2 - q2 nu - q1.
  const double disc = q2 * q2 + 4.0 * q1;
  const double expected = disc >= 0 ? std::max(std::abs((q2 + std::sqrt(disc)) / 2), std::abs((q2 - std::sqrt(disc)) / 2))
                                    : std::sqrt(-q1);
  EXPECT_NEAR(closed_loop_stiffness(s, 1.0), expected, 1e-9 * expected);
}
