#include "ptc/plant.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ptc/error.hpp"
#include "ptc/expression.hpp"
#include "ptc/linalg.hpp"

namespace ptc {

void PlantSpec::validate() const {
  if (n == 0) throw InvalidPlant("plant order must be positive");
  if (!disturbance) throw InvalidPlant("plant has no disturbance function");
  if (!g) throw InvalidPlant("plant has no input gain function");
  if (!(gamma_min > 0.0)) throw InvalidPlant("gamma_min must be positive");
  if (!(gamma >= gamma_min)) throw InvalidPlant("gamma must be at least gamma_min");
  if (!(phi >= 0.0) || !(phi0 >= 0.0)) throw InvalidPlant("phi and phi0 must be non-negative");
}

void derivative(const PlantSpec& spec, std::span<const double> x, double u, double t, std::span<double> out) {
  if (x.size() != spec.n || out.size() != spec.n) throw ShapeError("state dimension does not match the plant order");
  for (std::size_t i = 0; i + 1 < spec.n; ++i) out[i] = x[i + 1];
  out[spec.n - 1] = spec.disturbance(x, u, t) + spec.gamma * spec.g(t) * u;
}

std::vector<double> derivative(const PlantSpec& spec, std::span<const double> x, double u, double t) {
  std::vector<double> out(spec.n);
  derivative(spec, x, u, t, out);
  return out;
}

AuditSample audit_assumption(const PlantSpec& spec, std::span<const double> x, double u, double t) {
  AuditSample s;
  s.f_abs = std::abs(spec.disturbance(x, u, t));
  s.bound = spec.phi * vector_norm(x) + spec.phi0;
  s.ok = s.f_abs <= s.bound + kAuditSlack;
  return s;
}

std::vector<double> seeded_uniform(std::uint64_t seed, std::size_t count, double lo, double hi) {
  std::mt19937_64 engine(seed);
  std::vector<double> out(count);
  for (auto& v : out) {
    const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    v = lo + (hi - lo) * unit;
  }
  return out;
}

PlantSpec builtin_plant(std::string_view name, std::uint64_t seed) {
  PlantSpec p;
  p.name = std::string(name);
  p.rng_seed = seed;
  p.g = [](double) { return 1.0; };
  p.gain_text = "1";
  if (name == "example2") {
    p.n = 2;
    p.disturbance = [](std::span<const double> x, double u, double t) {
      return 50.0 * std::cos(u) + std::cos(t) * x[0] + std::exp(std::sin(x[0])) * x[1];
    };
    p.disturbance_text = "50*cos(u) + cos(t)*x1 + exp(sin(x1))*x2";
    p.gamma = 1.1;
    p.gamma_min = 1.0;
    p.phi = std::numbers::e;
    p.phi0 = 50.0;
  } else if (name == "example3") {
    p.n = 4;
    p.weights = seeded_uniform(seed, 4, -1e-3, 1e-3);
    p.disturbance = [w = p.weights](std::span<const double> x, double, double) {
      double acc = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
      return acc;
    };
    p.disturbance_text = "w1*x1 + w2*x2 + w3*x3 + w4*x4";
    p.gamma = 1.0;
    p.gamma_min = 1.0;
    p.phi = 1e-3;
    p.phi0 = 0.0;
  } else {
    throw ParameterError("unknown builtin plant '" + std::string(name) + "'");
  }
  p.validate();
  return p;
}

PlantSpec expression_plant(std::size_t n, std::string_view disturbance, std::string_view gain, double gamma,
                           double gamma_min, double phi, double phi0, std::uint64_t seed) {
  if (n == 0) throw InvalidPlant("plant order must be positive");
  const Expression f = Expression::parse(disturbance, n);
  // g may depend on t only.
  const Expression g = Expression::parse(gain, 0);
  if (g.uses_input()) throw InvalidPlant("input gain g(t) may not reference u");
  PlantSpec p;
  p.name = "custom";
  p.n = n;
  p.disturbance = [f](std::span<const double> x, double u, double t) { return f.evaluate(x, u, t); };
  p.g = [g](double t) { return g.evaluate({}, 0.0, t); };
  p.gamma = gamma;
  p.gamma_min = gamma_min;
  p.phi = phi;
  p.phi0 = phi0;
  p.rng_seed = seed;
  p.disturbance_text = std::string(disturbance);
  p.gain_text = std::string(gain);
  p.validate();
  return p;
}

}  // namespace ptc
