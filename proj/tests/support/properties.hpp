#pragma once

// Randomised invariant suites shared by the unit and acceptance binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "oracles.hpp"
#include "ptc/combinatorics.hpp"
#include "ptc/linalg.hpp"

namespace props {

struct Outcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  ///< largest error or bound ratio seen
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

inline ptc::Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  ptc::Matrix m(r, c);
  for (double& v : m.data()) v = d(rng);
  return m;
}

/// ||A o B|| <= ||A|| ||B|| in the spectral norm.
inline Outcome hadamard_norm(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 6);
  Outcome out;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const std::size_t r = dim(rng), c = dim(rng);
    const ptc::Matrix a = random_matrix(rng, r, c), b = random_matrix(rng, r, c, 3.0);
    const double lhs = ptc::spectral_norm(ptc::hadamard(a, b));
    const double rhs = ptc::spectral_norm(a) * ptc::spectral_norm(b);
    out.worst = std::max(out.worst, lhs / rhs);
    if (lhs > rhs * (1.0 + 1e-12)) {
      if (out.failures++ == 0) out.first_failure = "case " + std::to_string(k);
    }
  }
  return out;
}

/// ||s_n|| <= sqrt(n) (n-1)!, ||S_n|| <= sqrt(n) B_(n-1), ||A_n|| <= sqrt(n) sum alpha^i.
inline Outcome stirling_norm_bounds(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> alpha_d(1e-4, 2.0);
  Outcome out;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const std::size_t n = dim(rng);
    const double alpha = alpha_d(rng);
    const double root_n = std::sqrt(static_cast<double>(n));
    double geometric = 0.0;
    for (std::size_t i = 0; i < n; ++i) geometric += std::pow(alpha, static_cast<double>(i));
    const double ratios[] = {
        ptc::spectral_norm(ptc::stirling_first_matrix(n)) / (root_n * oracle::factorial(n - 1)),
        ptc::spectral_norm(ptc::stirling_second_matrix(n)) / (root_n * ptc::to_double(ptc::bell_number(n - 1))),
        ptc::spectral_norm(ptc::toeplitz_powers(n, -alpha)) / (root_n * geometric),
    };
    bool bad = false;
    for (double q : ratios) {
      out.worst = std::max(out.worst, q);
      bad = bad || q > 1.0 + 1e-12;
    }
    if (bad && out.failures++ == 0) out.first_failure = "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha);
  }
  return out;
}

/// Explicit alternating sum for {n k} against the recurrence, n, k <= 12.
inline Outcome stirling_explicit_vs_recurrence(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, 12);
  const auto table = oracle::stirling2_table(12);
  Outcome out;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const unsigned n = d(rng), kk = d(rng);
    const auto got = static_cast<std::uint64_t>(ptc::to_int64(ptc::stirling_second_explicit(n, kk)));
    const std::uint64_t want = table[n][kk];
    const auto lib = static_cast<std::uint64_t>(ptc::to_int64(ptc::stirling_second(n, kk)));
    if ((got != want || lib != want) && out.failures++ == 0)
      out.first_failure = "{" + std::to_string(n) + "," + std::to_string(kk) + "}";
  }
  return out;
}

/// Forward and inverse state transforms compose to the identity, n <= 6.
inline Outcome transform_inverse(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> log_alpha(std::log(1e-3), std::log(0.5));
  std::uniform_real_distribution<double> tau_d(0.5, 50.0);
  std::uniform_real_distribution<double> frac(0.0, 0.99);
  Outcome out;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const std::size_t n = dim(rng);
    const double alpha = std::exp(log_alpha(rng)), tau = tau_d(rng);
    // Stay inside the guard band: mu(t) up to 0.99 tau.
    const double t = -std::log(1.0 - frac(rng)) / alpha;
    const auto tm = ptc::build_transform_matrices(n, alpha, tau, t);
    // The reverse product G F carries kappa'^(n-1) scaling and is not
    // checked in absolute terms.
    const ptc::Matrix fg = tm.forward_map() * tm.inverse_map();
    const double err = ptc::max_abs_entry(fg - ptc::Matrix::identity(n));
    out.worst = std::max(out.worst, err);
    if (err > 1e-10 && out.failures++ == 0) out.first_failure = "n=" + std::to_string(n);
  }
  return out;
}

/// E^T P + P E + 2I = 0 to 1e-10 on random Hurwitz companions.
inline Outcome lyapunov_residual(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 6);
  Outcome out;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const std::size_t n = dim(rng);
    const ptc::CompanionMatrix e(oracle::random_hurwitz(rng, n, 0.5, 2.0));
    const auto sol = ptc::solve_lyapunov(e);
    out.worst = std::max(out.worst, sol.residual);
    if (sol.residual > 1e-10 && out.failures++ == 0) out.first_failure = "n=" + std::to_string(n);
  }
  return out;
}

}  // namespace props
