#include "ptc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ptc/error.hpp"

namespace ptc {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": dimension mismatch");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "matrix sum");
  Matrix c = a;
  auto out = c.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "matrix difference");
  Matrix c = a;
  auto out = c.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
  return c;
}

Matrix operator*(double k, const Matrix& a) {
  Matrix c = a;
  for (double& v : c.data()) v *= k;
  return c;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw ShapeError("matrix-vector dimension mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hadamard product");
  Matrix c = a;
  auto out = c.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= rhs[i];
  return c;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return c;
}

double max_abs_entry(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double vector_norm(std::span<const double> x) {
  // Scaled accumulation: states reach 1e11 and underflow towards 1e-300.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (double v : x) {
    const double r = v / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)), pivots_(lu_.rows()) {
  if (!lu_.square()) throw ShapeError("LU requires a square matrix");
  const std::size_t n = lu_.rows();
  const double threshold = std::max(max_abs_entry(lu_), 1.0) *
                           std::numeric_limits<double>::epsilon() * static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best <= threshold) throw NumericalError("singular linear system in LU factorisation");
    pivots_[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

std::vector<double> LuDecomposition::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw ShapeError("LU solve: right-hand side size mismatch");
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[pivots_[k]]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

std::vector<double> symmetric_eigenvalues(const Matrix& input) {
  if (!input.square()) throw ShapeError("eigenvalues require a square matrix");
  const std::size_t n = input.rows();
  Matrix a = input;
  // Symmetrise so tiny asymmetries from upstream arithmetic do not stall rotations.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  double total = 0.0;
  for (double v : a.data()) total += v * v;
  const double tol = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * total;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const double scale = max_abs_entry(a);
  if (scale == 0.0) return 0.0;
  const Matrix b = (1.0 / scale) * a;
  const Matrix gram = b.cols() <= b.rows() ? b.transpose() * b : b * b.transpose();
  const double top = symmetric_eigenvalues(gram).back();
  return scale * std::sqrt(std::max(top, 0.0));
}

Matrix CompanionMatrix::dense() const {
  const std::size_t n = c.size();
  Matrix e(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) e(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < n; ++j) e(n - 1, j) = c[j];
  return e;
}

std::vector<double> CompanionMatrix::characteristic_polynomial() const {
  const std::size_t n = c.size();
  std::vector<double> p(n + 1);
  for (std::size_t i = 0; i < n; ++i) p[i] = -c[i];
  p[n] = 1.0;
  return p;
}

namespace {

using Complex = std::complex<double>;

void horner(std::span<const double> a, Complex z, Complex& value, Complex& derivative) {
  value = a.back();
  derivative = 0.0;
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    derivative = derivative * z + value;
    value = value * z + a[i];
  }
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const double> a) {
  if (a.empty() || a.back() != 1.0) throw ParameterError("polynomial must be monic with ascending coefficients");
  const std::size_t n = a.size() - 1;
  std::vector<Complex> z(n);
  if (n == 0) return z;

  // Cauchy bound on the root moduli sets the initial circle.
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
  radius = 1.0 + radius;
  double mean_mod = 0.0;
  {
    // Geometric mean of the moduli, |a_0|^(1/n), keeps the start near the roots.
    const double a0 = std::abs(a[0]);
    mean_mod = a0 > 0.0 ? std::pow(a0, 1.0 / static_cast<double>(n)) : 0.5;
    mean_mod = std::clamp(mean_mod, 1e-6, radius);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(mean_mod, angle);
  }

  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < 2000; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Complex value;
      Complex deriv;
      horner(a, z[i], value, deriv);
      if (value == 0.0) {
        done[i] = true;
        continue;
      }
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          Complex diff = z[i] - z[j];
          if (diff == 0.0) diff = eps * (1.0 + std::abs(z[i]));
          repulsion += 1.0 / diff;
        }
      Complex step;
      if (deriv == 0.0) {
        step = eps * (1.0 + std::abs(z[i]));
      } else {
        const Complex ratio = value / deriv;
        step = ratio / (1.0 - ratio * repulsion);
      }
      // Below the Horner rounding floor further steps only chase noise.
      double floor = 0.0;
      const double r = std::abs(z[i]);
      for (std::size_t k = a.size(); k-- > 0;) floor = floor * r + std::abs(a[k]);
      const bool at_noise = std::abs(value) <= 4.0 * static_cast<double>(n) * eps * floor;
      z[i] -= step;
      if (at_noise || std::abs(step) <= 4.0 * eps * (1.0 + std::abs(z[i]))) done[i] = true;
      else all_done = false;
    }
    if (all_done) break;
  }
  for (auto& root : z)
    if (std::abs(root.imag()) <= 8.0 * eps * (1.0 + std::abs(root.real()))) root.imag(0.0);
  return z;
}

bool is_hurwitz(const CompanionMatrix& e, double tolerance) {
  if (e.order() == 0) return false;
  for (double v : e.c)
    if (!std::isfinite(v)) return false;
  const auto poly = e.characteristic_polynomial();
  for (const auto& root : polynomial_roots(poly))
    if (!(root.real() < -tolerance)) return false;
  return true;
}

LyapunovSolution solve_lyapunov(const CompanionMatrix& companion) {
  if (!is_hurwitz(companion)) throw InfeasibleDesign("matrix E is not Hurwitz");
  const std::size_t n = companion.order();
  const Matrix e = companion.dense();
  const std::size_t m = n * n;

  // Column-major vec: P(i,j) lives at i + j*n.
  Matrix system(m, m);
  std::vector<double> rhs(m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = i + j * n;
      for (std::size_t k = 0; k < n; ++k) {
        system(row, k + j * n) += e(k, i);  // (E^T P)(i,j)
        system(row, i + k * n) += e(k, j);  // (P E)(i,j)
      }
      if (i == j) rhs[row] = -2.0;
    }
  }

  const LuDecomposition lu(system);
  std::vector<double> x = lu.solve(rhs);
  {
    // One step of iterative refinement.
    std::vector<double> r = multiply(system, x);
    for (std::size_t i = 0; i < m; ++i) r[i] = rhs[i] - r[i];
    const std::vector<double> dx = lu.solve(r);
    for (std::size_t i = 0; i < m; ++i) x[i] += dx[i];
  }

  LyapunovSolution out;
  out.P = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.P(i, j) = x[i + j * n];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.P(i, j) = out.P(j, i) = 0.5 * (out.P(i, j) + out.P(j, i));

  const Matrix et = e.transpose();
  out.residual = spectral_norm(et * out.P + out.P * e + 2.0 * Matrix::identity(n));
  const auto eig = symmetric_eigenvalues(out.P);
  out.lambda_min = eig.front();
  out.lambda_max = eig.back();
  if (!(out.lambda_min > 0.0)) throw NumericalError("Lyapunov solution is not positive definite");
  return out;
}

}  // namespace ptc
