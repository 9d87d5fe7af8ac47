#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifc {

using Vec = std::vector<double>;

/// Dense row-major matrix. Sized once, never reallocated behind callers.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }
  bool empty() const { return a_.empty(); }

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CertificateImpossible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec ones(std::size_t n);
Vec mat_vec(const Mat& a, const Vec& x);
double max_norm(const Vec& x);
double max_abs_entry(const Mat& a);
double max_row_sum(const Mat& a);
bool all_positive(const Vec& x);
bool all_finite(const Vec& x);

/// max_i |x_i| / v_i. Requires v > 0 and matching lengths.
double weighted_max_norm(const Vec& x, const Vec& v);

/// Induced weighted max norm of a nonnegative matrix: max_i (A v)_i / v_i.
double weighted_max_norm(const Mat& a, const Vec& v);

struct SpectralOptions {
  double shift_scale = 1e-9;   // shift = shift_scale * max entry
  double rel_tol = 1e-12;
  int max_iterations = 100000;
  int stall_check_every = 500; // cycle detection cadence for the power phase
};

struct SpectralResult {
  double value = 0.0;
  bool converged = false;
  std::string method;          // "trivial" | "power" | "power+bisection"
  double cw_lower = 0.0;       // Collatz-Wielandt bracket accumulated during
  double cw_upper = 0.0;       // the power phase
  Vec dominant;                // max-normalized dominant-direction iterate
  int iterations = 0;
};

/// Spectral radius of a nonnegative square matrix.
///
/// Power iteration on A + shift*I handles the primitive case quickly; when the
/// iterate cycles (periodic matrices stall the estimate and the tiny shift
/// cannot break that within the iteration budget), the bracket is refined by
/// bisection on t using the M-matrix test: t > rho(A) iff (tI-A)x = 1 has a
/// strictly positive solution.
SpectralResult spectral_radius(const Mat& a, const SpectralOptions& opts = {});
double spectral_radius_value(const Mat& a);

/// Solve Ax = b by Gaussian elimination with partial pivoting.
Vec solve_linear(Mat a, Vec b);

/// v = (I - M)^{-1} x for nonnegative M and positive x. The result is a
/// positive vector with Mv < v strictly, so ||M||_inf^v < 1. Throws
/// CertificateImpossible when no such vector exists (rho(M) >= 1).
Vec weight_vector_for(const Mat& m, const Vec& x);

/// p* = (I - M)^{-1} n > 0, the fixed point of p -> Mp + n. Throws when the
/// system is singular or the solution is not strictly positive (infeasible).
Vec solve_linear_fixed_point(const Mat& m, const Vec& n);

}  // namespace ifc
