#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifc/ifun.hpp"
#include "ifc/numkit.hpp"

namespace ifc {

/// Static network description: K users, R bases, linear-scale quantities only.
/// gains(r, j) is the power gain from user j to base r.
struct NetworkScenario {
  std::size_t users = 0;
  std::size_t bases = 0;
  Mat gains;                            // R x K, strictly positive
  Vec noise;                            // per base, strictly positive
  Vec targets;                          // per user, linear SINR, strictly positive
  std::vector<std::size_t> assignment;  // per user, 0-based; empty = defaulted

  void validate() const;
  /// Explicit assignment when present, otherwise strongest-server per user.
  std::vector<std::size_t> effective_assignment() const;
  bool assignment_defaulted() const { return assignment.empty(); }
};

/// Matrices normalized by own-link gain and target: the inputs certification
/// works on. m_per_base[r](i,j) = gamma_i gains(r,j)/gains(r,i) off-diagonal,
/// n_per_base[r][i] = gamma_i noise[r]/gains(r,i); the fixed variants pick
/// row i from the user's assigned base. h_per_base holds the overestimate
/// matrices gamma_i gains(r,j) / sum_r' gains(r',i).
struct NormalizedMatrixSet {
  std::vector<Mat> m_per_base;
  std::vector<Vec> n_per_base;
  Mat m_fixed;
  Vec n_fixed;
  std::vector<Mat> h_per_base;
};

NormalizedMatrixSet build_normalized(const NetworkScenario& sc);

struct UbpcParams {
  Vec a;      // sigmoid steepness per user; requires a_i * gamma_i > 1
  Vec alpha;  // price coefficient per user, positive
};

/// b_i = gamma_i - ln(a_i gamma_i - 1) / a_i, the argmax of the sigmoid slope.
Vec ubpc_b(const NetworkScenario& sc, const UbpcParams& params);

/// Slope of the sigmoid utility 1/(1+exp(-a(x-b))): f(x) = a u (1-u).
double ubpc_slope(double a, double b, double x);

/// Decreasing-branch inverse of ubpc_slope, defined on (0, a/4]; arguments
/// above a/4 are pinned to b. Bisection on [b, b + 200/a], 1e-12 absolute.
double ubpc_slope_inverse(double a, double b, double y);

/// M_b: row i of the fixed-assignment matrix scaled by b_i.
Mat ubpc_gain_matrix(const NetworkScenario& sc, const UbpcParams& params);

InterferenceFunction linear_if(const NetworkScenario& sc);
InterferenceFunction min_power_if(const NetworkScenario& sc);
InterferenceFunction macro_diversity_if(const NetworkScenario& sc);
InterferenceFunction macro_overestimate_if(const NetworkScenario& sc);
InterferenceFunction ubpc_if(const NetworkScenario& sc, const UbpcParams& params);

/// Row-wise interval uncertainty around a nominal normalized gain matrix.
struct IntervalUncertainty {
  Mat lower;  // both K x K, nonnegative, zero diagonal, lower <= upper
  Mat upper;
  void validate() const;
};

/// Worst-case linear response over the interval set. For p >= 0 the supremum
/// is attained at the upper matrix, so I(p) = upper p + offsets.
InterferenceFunction drpc_if(const Vec& offsets, const IntervalUncertainty& uncertainty);

/// I^q(p) = max(p_min, min(p_max, I(p))). Keeps the parent's certificate tag.
InterferenceFunction clamp_if(const InterferenceFunction& f, const Vec& p_min, const Vec& p_max);

/// Scalar one-dimensional fixtures with their expected verdicts, used as
/// regression anchors by tests and the CLI.
struct ScalarFixture {
  std::string id;
  InterferenceFunction function;
  bool standard = false;
  bool contractive = false;
  std::optional<double> modulus;      // with weight 1 when contractive
  std::optional<double> fixed_point;  // exact value when one exists
  std::string note;
};

std::vector<ScalarFixture> scalar_fixtures();
const ScalarFixture& scalar_fixture(const std::string& id);

}  // namespace ifc
