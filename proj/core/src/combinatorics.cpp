#include "ptc/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptc/error.hpp"
#include "ptc/timescale.hpp"

namespace ptc {

std::string to_string(BigUInt value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

double to_double(BigUInt value) { return static_cast<double>(value); }

std::int64_t to_int64(BigUInt value) {
  if (value > static_cast<BigUInt>(std::numeric_limits<std::int64_t>::max()))
    throw CapacityError("value " + to_string(value) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(value);
}

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<BigInt>(n - k + i) / static_cast<BigInt>(i);
  return r;
}

BigInt ipow(BigInt base, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

BigUInt stirling_second_explicit(std::size_t n, std::size_t k) {
  if (n > kMaxCombinatoricsOrder || k > kMaxCombinatoricsOrder)
    throw CapacityError("Stirling order above capacity " + std::to_string(kMaxCombinatoricsOrder));
  BigInt sum = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    const BigInt term = binomial(k, i) * ipow(static_cast<BigInt>(k - i), n);
    sum += (i % 2 == 0) ? term : -term;
  }
  BigInt factorial = 1;
  for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<BigInt>(i);
  if (sum < 0 || sum % factorial != 0) throw NumericalError("explicit Stirling sum is not a non-negative multiple of k!");
  return static_cast<BigUInt>(sum / factorial);
}

CombinatoricsTable::CombinatoricsTable(std::size_t max_order) : max_order_(max_order) {
  if (max_order == 0 || max_order > kMaxCombinatoricsOrder)
    throw CapacityError("combinatorics table order must be in [1, " + std::to_string(kMaxCombinatoricsOrder) + "]");
  const std::size_t w = max_order + 1;
  first_kind_.assign(w * w, 0);
  second_kind_.assign(w * w, 0);
  bell_.assign(w, 0);

  first_kind_[index(0, 0)] = 1;
  for (std::size_t n = 0; n < max_order; ++n)
    for (std::size_t k = 1; k <= n + 1; ++k)
      first_kind_[index(n + 1, k)] = static_cast<BigUInt>(n) * first_kind_[index(n, k)] + first_kind_[index(n, k - 1)];

  for (std::size_t n = 0; n <= max_order; ++n) {
    BigUInt row = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      second_kind_[index(n, k)] = stirling_second_explicit(n, k);
      row += second_kind_[index(n, k)];
    }
    bell_[n] = row;
  }
}

void CombinatoricsTable::check(std::size_t n, std::size_t k) const {
  if (n > max_order_ || k > max_order_)
    throw CapacityError("Stirling index (" + std::to_string(n) + "," + std::to_string(k) +
                        ") exceeds table order " + std::to_string(max_order_));
}

BigUInt CombinatoricsTable::stirling_first(std::size_t n, std::size_t k) const {
  check(n, k);
  return first_kind_[index(n, k)];
}

BigUInt CombinatoricsTable::stirling_second(std::size_t n, std::size_t k) const {
  check(n, k);
  return second_kind_[index(n, k)];
}

BigUInt CombinatoricsTable::bell(std::size_t n) const {
  check(n, 0);
  return bell_[n];
}

const CombinatoricsTable& CombinatoricsTable::shared() {
  static const CombinatoricsTable table(kMaxCombinatoricsOrder);
  return table;
}

BigUInt stirling_first(std::size_t n, std::size_t k) { return CombinatoricsTable::shared().stirling_first(n, k); }
BigUInt stirling_second(std::size_t n, std::size_t k) { return CombinatoricsTable::shared().stirling_second(n, k); }
BigUInt bell_number(std::size_t n) { return CombinatoricsTable::shared().bell(n); }

Matrix stirling_first_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = to_double(stirling_first(i, j));
  return m;
}

Matrix stirling_second_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = to_double(stirling_second(i, j));
  return m;
}

Matrix toeplitz_powers(std::size_t n, double base) {
  Matrix m(n, n);
  std::vector<double> powers(n, 1.0);
  for (std::size_t k = 1; k < n; ++k) powers[k] = powers[k - 1] * base;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = powers[i - j];
  return m;
}

Matrix TransformMatrices::forward_map() const {
  // K is diagonal: right-multiplying by K^-1 scales column j by 1/K(j,j).
  Matrix sk = S;
  for (std::size_t i = 0; i < sk.rows(); ++i)
    for (std::size_t j = 0; j < sk.cols(); ++j) sk(i, j) /= K(j, j);
  return hadamard(A, sk);
}

Matrix TransformMatrices::inverse_map() const {
  Matrix ms = s;
  for (std::size_t i = 0; i < ms.rows(); ++i)
    for (std::size_t j = 0; j < ms.cols(); ++j) ms(i, j) /= M(i, i);
  return hadamard(A_inverse, ms);
}

TransformMatrices build_transform_matrices(std::size_t n, double alpha, double tau, double t,
                                           double epsilon_fraction) {
  if (n == 0) throw ParameterError("order must be positive");
  if (n > kMaxCombinatoricsOrder) throw CapacityError("order above combinatorics capacity");
  if (!(epsilon_fraction > 0.0 && epsilon_fraction < 1.0))
    throw ParameterError("epsilon_fraction must lie in (0, 1)");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("t must be finite and non-negative");
  const TimeScale scale(alpha, tau);

  TransformMatrices out;
  out.t = t;
  out.mu = scale.mu(t);
  if (out.mu > tau * (1.0 - epsilon_fraction))
    throw SingularityError("mu(t) lies inside the guard band before tau");
  out.mu_dot = scale.mu_dot(t);
  out.kappa_prime = scale.kappa_prime(out.mu);

  out.s = stirling_first_matrix(n);
  out.S = stirling_second_matrix(n);
  out.A = toeplitz_powers(n, -alpha);
  out.A_inverse = toeplitz_powers(n, alpha);

  std::vector<double> k_diag(n, 1.0);
  std::vector<double> m_diag(n, 1.0);
  for (std::size_t i = 1; i < n; ++i) {
    k_diag[i] = k_diag[i - 1] * out.kappa_prime;
    m_diag[i] = m_diag[i - 1] * out.mu_dot;
  }
  out.K = Matrix::diagonal(k_diag);
  out.M = Matrix::diagonal(m_diag);
  return out;
}

}  // namespace ptc
