#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptc {

using Disturbance = std::function<double(std::span<const double> x, double u, double t)>;
using InputGain = std::function<double(double t)>;

inline constexpr std::uint64_t kDefaultPlantSeed = 20210601;

/// Disturbed normal-form plant
///   x_i' = x_{i+1},  x_n' = f(x, u, t) + gamma g(t) u
/// with declared bound |f| <= phi |x| + phi0 and gamma >= gamma_min > 0.
/// The true gamma is used only by the simulator.
struct PlantSpec {
  std::string name;
  std::size_t n = 0;
  Disturbance disturbance;
  InputGain g;
  double gamma = 1.0;
  double gamma_min = 1.0;
  double phi = 0.0;
  double phi0 = 0.0;
  std::uint64_t rng_seed = kDefaultPlantSeed;
  std::string disturbance_text;
  std::string gain_text;
  std::vector<double> weights;  ///< Frozen random draws, if any.

  /// Throws InvalidPlant when the invariants above are broken.
  void validate() const;
};

/// Writes (x_2, ..., x_n, f + gamma g u) into out.
void derivative(const PlantSpec& spec, std::span<const double> x, double u, double t, std::span<double> out);
std::vector<double> derivative(const PlantSpec& spec, std::span<const double> x, double u, double t);

struct AuditSample {
  bool ok = true;
  double f_abs = 0.0;
  double bound = 0.0;
};

inline constexpr double kAuditSlack = 1e-9;

/// Checks |f(x,u,t)| <= phi |x| + phi0 + kAuditSlack at one point.
AuditSample audit_assumption(const PlantSpec& spec, std::span<const double> x, double u, double t);

/// "example2": n=2, f = 50cos(u) + cos(t)x1 + exp(sin(x1))x2, gamma=1.1,
/// gamma_min=1, phi=e, phi0=50, g=1.
/// "example3": n=4, f = sum w_i x_i with w_i ~ U(-1e-3, 1e-3) drawn once
/// from the seed, gamma=gamma_min=1, phi=1e-3, phi0=0, g=1.
/// Throws ParameterError for an unknown name.
PlantSpec builtin_plant(std::string_view name, std::uint64_t seed = kDefaultPlantSeed);

/// Uniform draws on [lo, hi) from std::mt19937_64 using the top 53 bits of
/// each output, so sequences are identical on every platform.
std::vector<double> seeded_uniform(std::uint64_t seed, std::size_t count, double lo, double hi);

/// Plant from expression strings (see Expression for the grammar).
PlantSpec expression_plant(std::size_t n, std::string_view disturbance, std::string_view gain, double gamma,
                           double gamma_min, double phi, double phi0, std::uint64_t seed = kDefaultPlantSeed);

}  // namespace ptc
