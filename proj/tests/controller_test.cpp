#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptc/controller.hpp"
#include "ptc/error.hpp"

using namespace ptc;

namespace {

DesignRequest example2_request(double tau = 10.0) {
  DesignRequest r;
  r.c = {-1, -2};
  r.tau = tau;
  r.gamma_min = 1.0;
  r.phi = std::exp(1.0);
  r.phi0 = 50.0;
  return r;
}

DesignRequest example3_request() {
  DesignRequest r;
  r.c = {-1, -4, -6, -4};
  r.tau = 10.0;
  r.phi = 1e-3;
  r.phi0 = 0.0;
  return r;
}

}  // namespace

TEST(SelectAlpha, ExampleTwoAttractive) {
  const ControllerDesign d = design_controller(example2_request());
  const double lmin = 2.0 - std::sqrt(2.0), lmax = 2.0 + std::sqrt(2.0);
  const double expected = std::min(lmin / (2.0 * lmax * lmin + 2.0 * lmax * lmax), 0.1);
  EXPECT_NEAR(d.bound_attractive, expected, 1e-15);
  EXPECT_NEAR(d.bound_attractive, 0.0214466, 1e-7);
  EXPECT_LT(d.alpha, d.bound_attractive);
  EXPECT_NEAR(d.alpha, d.bound_attractive, 1e-9 * d.bound_attractive * 1.01);
  EXPECT_EQ(d.mode, StabilityMode::attractive);
  EXPECT_FALSE(d.bound_stable.has_value());
}

TEST(SelectAlpha, ExampleThreeStable) {
  const ControllerDesign d = design_controller(example3_request());
  ASSERT_TRUE(d.bound_stable.has_value());
  EXPECT_EQ(d.mode, StabilityMode::stable);
  EXPECT_DOUBLE_EQ(d.alpha, *d.bound_stable);
  EXPECT_NEAR(d.alpha, 1.6810e-5, 1.6810e-5 * 1e-3);
  const double lmin = d.lyap.lambda_min, lmax = d.lyap.lambda_max;
  EXPECT_NEAR(d.alpha, lmin / (lmin + 24.0 * lmax * lmax * (10.0 * 1e-3 + 1.0)), 1e-18);
}

TEST(SelectAlpha, OneOverTauCap) {
  // A fast scalar loop makes the Lyapunov term large; 1/tau takes over.
  DesignRequest r;
  r.c = {-100};
  r.tau = 50.0;
  const ControllerDesign d = design_controller(r);
  EXPECT_NEAR(d.lyap.P(0, 0), 0.01, 1e-16);
  EXPECT_DOUBLE_EQ(d.bound_attractive, 0.02);
}

TEST(Design, ExplicitAlphaChecks) {
  DesignRequest r = example2_request();
  r.alpha = 0.5;
  EXPECT_THROW(design_controller(r), InfeasibleDesign);
  r.alpha = 0.01;
  const ControllerDesign d = design_controller(r);
  EXPECT_DOUBLE_EQ(d.alpha, 0.01);
  EXPECT_EQ(d.mode, StabilityMode::attractive);

  DesignRequest s = example3_request();
  s.alpha = 1e-6;
  EXPECT_EQ(design_controller(s).mode, StabilityMode::stable);
  s.alpha = 1.69e-5;  // between the two bounds
  EXPECT_EQ(design_controller(s).mode, StabilityMode::attractive);
}

TEST(Design, RejectsBadInput) {
  DesignRequest r = example2_request();
  r.c = {1, 1};
  EXPECT_THROW(design_controller(r), InfeasibleDesign);
  r = example2_request();
  r.tau = 0.0;
  EXPECT_THROW(design_controller(r), ParameterError);
  r = example2_request();
  r.gamma_min = 0.0;
  EXPECT_THROW(design_controller(r), ParameterError);
  r = example2_request();
  r.c.clear();
  EXPECT_THROW(design_controller(r), ParameterError);
  r = example2_request();
  r.alpha = -1.0;
  EXPECT_THROW(design_controller(r), ParameterError);
}

TEST(SymbolicGains, FourthOrderTable) {
  const auto rows = symbolic_gains(4);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].to_string(), "p1 = c1/(alpha^4*(tau-t)^4)");
  EXPECT_EQ(rows[1].to_string(), "p2 = (c2/alpha^3 - c3/alpha^2 + c4/alpha + 1)/(tau-t)^3");
  EXPECT_EQ(rows[2].to_string(), "p3 = (c3/alpha^2 - 3*c4/alpha - 7)/(tau-t)^2");
  EXPECT_EQ(rows[3].to_string(), "p4 = (c4/alpha + 6)/(tau-t)");

  const std::vector<GainTerm> p3{{1, 3, 2}, {-3, 4, 1}, {-7, 0, 0}};
  EXPECT_EQ(rows[2].terms, p3);
  EXPECT_EQ(rows[2].tau_power, 2);
}

TEST(SymbolicGains, LowOrders) {
  EXPECT_EQ(symbolic_gains(1)[0].to_string(), "p1 = c1/(alpha*(tau-t))");
  const auto two = symbolic_gains(2);
  EXPECT_EQ(two[0].to_string(), "p1 = c1/(alpha^2*(tau-t)^2)");
  EXPECT_EQ(two[1].to_string(), "p2 = (c2/alpha + 1)/(tau-t)");
  EXPECT_THROW(symbolic_gains(0), ParameterError);
  EXPECT_THROW(symbolic_gains(21), ParameterError);
  EXPECT_EQ(symbolic_gains(20).size(), 20u);
}

TEST(SymbolicGains, CoefficientsMatchDirectSum) {
  for (unsigned n = 1; n <= 8; ++n) {
    std::vector<double> c(n);
    for (unsigned i = 0; i < n; ++i) c[i] = -1.0 - 0.37 * i;
    const auto rows = symbolic_gains(n);
    for (double alpha : {0.01, 0.3, 2.0})
      for (unsigned i = 1; i <= n; ++i) {
        const double want = oracle::gain_numerator(c, alpha, i);
        EXPECT_NEAR(rows[i - 1].coefficient(c, alpha), want, 1e-12 * (1.0 + std::abs(want)));
        EXPECT_EQ(rows[i - 1].tau_power, static_cast<int>(n - i + 1));
      }
  }
}

TEST(Schedule, GainsAndPi) {
  const ControllerDesign d = design_controller(example2_request());
  const GainSchedule sched(d);
  const double a = d.alpha;
  EXPECT_NEAR(sched.numerators()[0], -1.0 / (a * a), 1e-9);
  EXPECT_NEAR(sched.numerators()[1], -2.0 / a + 1.0, 1e-12);
  const auto p = sched.gains_at(4.0);
  EXPECT_NEAR(p[0], sched.numerators()[0] / 36.0, 1e-12);
  EXPECT_NEAR(p[1], sched.numerators()[1] / 6.0, 1e-12);
  const std::vector<double> x{10, 10};
  EXPECT_NEAR(sched.pi(x, 4.0), 10 * p[0] + 10 * p[1], 1e-9);
}

TEST(ControlInput, InitialInputExampleTwo) {
  const ControllerDesign d = design_controller(example2_request());
  const GainSchedule sched(d);
  const std::vector<double> x{10, 10};
  const double u = control_input(d, sched, x, 0.0, 1.0);
  const double a = d.alpha;
  EXPECT_NEAR(u, 10.0 * (-1.0 / (a * a * 100.0) + (1.0 - 2.0 / a) / 10.0), 1e-9);
  EXPECT_NEAR(u, -309.666, 1e-3);
  EXPECT_NEAR(control_input(d, sched, x, 0.0, 2.0), u / 2.0, 1e-12);

  // With alpha rounded to 0.0214 the initial input is -310.8.
  DesignRequest r = example2_request();
  r.alpha = 0.0214;
  const ControllerDesign rounded = design_controller(r);
  EXPECT_NEAR(control_input(rounded, GainSchedule(rounded), x, 0.0, 1.0), -310.8, 0.05);
}

TEST(ControlInput, Errors) {
  const ControllerDesign d = design_controller(example2_request());
  const GainSchedule sched(d);
  const std::vector<double> x{1, 1};
  EXPECT_NO_THROW(control_input(d, sched, x, d.guard_time(), 1.0));
  EXPECT_THROW(control_input(d, sched, x, 9.995, 1.0), SingularityError);
  EXPECT_THROW(control_input(d, sched, x, 1.0, 0.0), InvalidPlant);
  EXPECT_THROW(control_input(d, sched, std::vector<double>{1}, 1.0, 1.0), ShapeError);
}
