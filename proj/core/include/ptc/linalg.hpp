#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ptc {

/// Dense row-major real matrix for the small systems used here (n <= 20,
/// Kronecker systems up to 400 x 400).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double k, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);

Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix kronecker(const Matrix& a, const Matrix& b);
double max_abs_entry(const Matrix& a);
double vector_norm(std::span<const double> x);

/// LU factorisation with partial pivoting. Throws NumericalError when a
/// pivot falls below a relative threshold.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a);
  std::vector<double> solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> pivots_;
};

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

inline constexpr double kHurwitzTolerance = 1e-9;

/// Chain-of-integrators matrix: ones on the superdiagonal, last row c.
struct CompanionMatrix {
  std::vector<double> c;

  CompanionMatrix() = default;
  explicit CompanionMatrix(std::vector<double> coefficients) : c(std::move(coefficients)) {}

  std::size_t order() const noexcept { return c.size(); }
  Matrix dense() const;
  /// Monic characteristic polynomial lambda^n - c_n lambda^(n-1) - ... - c_1,
  /// coefficients in ascending powers (size n + 1, last entry 1).
  std::vector<double> characteristic_polynomial() const;
};

/// All complex roots of a monic polynomial given in ascending powers
/// (Aberth-Ehrlich iteration).
std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending);

bool is_hurwitz(const CompanionMatrix& e, double tolerance = kHurwitzTolerance);

struct LyapunovSolution {
  Matrix P;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double residual = 0.0;  ///< ||E^T P + P E + 2 I||
};

/// Solves E^T P + P E + 2 I = 0 by vectorisation, i.e. the n^2 system
/// (I (x) E^T + E^T (x) I) vec(P) = -2 vec(I).
///
/// Throws InfeasibleDesign when E is not Hurwitz and NumericalError when
/// the linear system is singular or P comes out indefinite.
LyapunovSolution solve_lyapunov(const CompanionMatrix& e);

}  // namespace ptc
