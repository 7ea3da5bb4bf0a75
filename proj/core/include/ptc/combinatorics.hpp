#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ptc/linalg.hpp"

namespace ptc {

/// Exact storage for Stirling and Bell numbers. 20! and B_20 overflow
/// nothing here, but the alternating explicit sum needs the headroom.
using BigUInt = unsigned __int128;
using BigInt = __int128;

inline constexpr std::size_t kMaxCombinatoricsOrder = 20;

std::string to_string(BigUInt value);
double to_double(BigUInt value);
/// Throws CapacityError if the value does not fit.
std::int64_t to_int64(BigUInt value);

/// Unsigned Stirling numbers of both kinds and Bell numbers up to max_order.
///
/// First kind [n k] comes from the recurrence [n+1,k] = n[n,k] + [n,k-1]
/// with [0,0] = 1 and [n,0] = 0 for n >= 1. Second kind {n k} comes from
/// the explicit alternating-binomial sum. Immutable once built.
class CombinatoricsTable {
 public:
  explicit CombinatoricsTable(std::size_t max_order = kMaxCombinatoricsOrder);

  std::size_t max_order() const noexcept { return max_order_; }

  BigUInt stirling_first(std::size_t n, std::size_t k) const;
  BigUInt stirling_second(std::size_t n, std::size_t k) const;
  BigUInt bell(std::size_t n) const;

  /// Full-capacity table shared across the process.
  static const CombinatoricsTable& shared();

 private:
  void check(std::size_t n, std::size_t k) const;
  std::size_t index(std::size_t n, std::size_t k) const noexcept {
    return n * (max_order_ + 1) + k;
  }

  std::size_t max_order_;
  std::vector<BigUInt> first_kind_;
  std::vector<BigUInt> second_kind_;
  std::vector<BigUInt> bell_;
};

BigUInt stirling_first(std::size_t n, std::size_t k);
BigUInt stirling_second(std::size_t n, std::size_t k);
BigUInt bell_number(std::size_t n);

/// {n k} = (1/k!) * sum_{i=0}^{k} (-1)^i C(k,i) (k-i)^n, with 0^0 = 1.
BigUInt stirling_second_explicit(std::size_t n, std::size_t k);

/// s_n(i,j) = [i-1, j-1] for i >= j (1-based), else 0.
Matrix stirling_first_matrix(std::size_t n);
/// S_n(i,j) = {i-1, j-1} for i >= j (1-based), else 0.
Matrix stirling_second_matrix(std::size_t n);
/// Lower-triangular Toeplitz matrix with entries base^(i-j).
Matrix toeplitz_powers(std::size_t n, double base);

/// The matrices relating the chain-of-integrators state xi(t) to the
/// prescribed-time state y(mu), evaluated at the pair (t, mu(t)).
struct TransformMatrices {
  Matrix s;            ///< First-kind Stirling matrix.
  Matrix S;            ///< Second-kind Stirling matrix.
  Matrix A;            ///< Toeplitz (-alpha)^(i-j).
  Matrix A_inverse;    ///< Toeplitz alpha^(i-j), used by the inverse map.
  Matrix K;            ///< diag(1, kappa', ..., kappa'^(n-1)) at mu(t).
  Matrix M;            ///< diag(1, mu_dot, ..., mu_dot^(n-1)) at t.
  double t = 0.0;
  double mu = 0.0;
  double mu_dot = 1.0;
  double kappa_prime = 1.0;

  /// xi = (A o (S K^-1)) y.
  Matrix forward_map() const;
  /// y = (A_inverse o (M^-1 s)) xi.
  Matrix inverse_map() const;
};

/// Throws ParameterError for non-positive alpha/tau or negative t and
/// SingularityError when mu(t) lies in the band (tau(1-eps), tau).
TransformMatrices build_transform_matrices(std::size_t n, double alpha, double tau, double t,
                                           double epsilon_fraction = 1e-3);

}  // namespace ptc
