#include "ifc/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifc {

void NetworkScenario::validate() const {
  if (users == 0 || bases == 0)
    throw std::invalid_argument("NetworkScenario: need at least one user and one base");
  if (gains.rows() != bases || gains.cols() != users)
    throw std::invalid_argument("NetworkScenario: gains must be bases x users");
  if (noise.size() != bases || targets.size() != users)
    throw std::invalid_argument("NetworkScenario: noise/targets length mismatch");
  for (std::size_t r = 0; r < bases; ++r)
    for (std::size_t j = 0; j < users; ++j)
      if (!(gains(r, j) > 0.0) || !std::isfinite(gains(r, j)))
        throw std::invalid_argument("NetworkScenario: gains must be strictly positive");
  if (!all_positive(noise) || !all_positive(targets))
    throw std::invalid_argument("NetworkScenario: noise and targets must be strictly positive");
  if (!assignment.empty()) {
    if (assignment.size() != users)
      throw std::invalid_argument("NetworkScenario: assignment length mismatch");
    for (std::size_t r : assignment)
      if (r >= bases) throw std::invalid_argument("NetworkScenario: assignment index out of range");
  }
}

std::vector<std::size_t> NetworkScenario::effective_assignment() const {
  if (!assignment.empty()) return assignment;
  std::vector<std::size_t> out(users, 0);
  for (std::size_t j = 0; j < users; ++j) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < bases; ++r)
      if (gains(r, j) > gains(best, j)) best = r;
    out[j] = best;
  }
  return out;
}

NormalizedMatrixSet build_normalized(const NetworkScenario& sc) {
  sc.validate();
  const std::size_t k = sc.users;
  const std::size_t nr = sc.bases;

  NormalizedMatrixSet set;
  set.m_per_base.assign(nr, Mat(k, k, 0.0));
  set.n_per_base.assign(nr, Vec(k, 0.0));
  set.h_per_base.assign(nr, Mat(k, k, 0.0));

  Vec gain_col_sum(k, 0.0);  // sum over bases of the gain toward user i
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < nr; ++r) gain_col_sum[i] += sc.gains(r, i);

  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      const double own = sc.gains(r, i);
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        set.m_per_base[r](i, j) = sc.targets[i] * sc.gains(r, j) / own;
        set.h_per_base[r](i, j) = sc.targets[i] * sc.gains(r, j) / gain_col_sum[i];
      }
      set.n_per_base[r][i] = sc.targets[i] * sc.noise[r] / own;
    }
  }

  const auto assign = sc.effective_assignment();
  set.m_fixed = Mat(k, k, 0.0);
  set.n_fixed = Vec(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = assign[i];
    for (std::size_t j = 0; j < k; ++j) set.m_fixed(i, j) = set.m_per_base[r](i, j);
    set.n_fixed[i] = set.n_per_base[r][i];
  }
  return set;
}

InterferenceFunction linear_if(const NetworkScenario& sc) {
  const NormalizedMatrixSet set = build_normalized(sc);
  const Mat m = set.m_fixed;
  const Vec n = set.n_fixed;
  return InterferenceFunction(
      sc.users,
      [m, n](const Vec& p) {
        Vec out = mat_vec(m, p);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += n[i];
        return out;
      },
      "linear", FunctionClass::Standard);
}

InterferenceFunction min_power_if(const NetworkScenario& sc) {
  const NormalizedMatrixSet set = build_normalized(sc);
  const auto ms = set.m_per_base;
  const auto ns = set.n_per_base;
  return InterferenceFunction(
      sc.users,
      [ms, ns](const Vec& p) {
        Vec out(p.size(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
          double best = std::numeric_limits<double>::infinity();
          for (std::size_t r = 0; r < ms.size(); ++r) {
            double s = ns[r][i];
            for (std::size_t j = 0; j < p.size(); ++j) s += ms[r](i, j) * p[j];
            best = std::min(best, s);
          }
          out[i] = best;
        }
        return out;
      },
      "min-power", FunctionClass::Standard);
}

InterferenceFunction macro_diversity_if(const NetworkScenario& sc) {
  const NormalizedMatrixSet set = build_normalized(sc);
  const auto ms = set.m_per_base;
  const auto ns = set.n_per_base;
  return InterferenceFunction(
      sc.users,
      [ms, ns](const Vec& p) {
        Vec out(p.size(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
          double harmonic = 0.0;
          for (std::size_t r = 0; r < ms.size(); ++r) {
            double s = ns[r][i];
            for (std::size_t j = 0; j < p.size(); ++j) s += ms[r](i, j) * p[j];
            harmonic += 1.0 / s;
          }
          out[i] = 1.0 / harmonic;
        }
        return out;
      },
      "macro-diversity", FunctionClass::Standard);
}

InterferenceFunction macro_overestimate_if(const NetworkScenario& sc) {
  sc.validate();
  const Mat gains = sc.gains;
  const Vec targets = sc.targets;
  const double noise_hat = *std::max_element(sc.noise.begin(), sc.noise.end());
  Vec gain_col_sum(sc.users, 0.0);
  for (std::size_t i = 0; i < sc.users; ++i)
    for (std::size_t r = 0; r < sc.bases; ++r) gain_col_sum[i] += gains(r, i);

  return InterferenceFunction(
      sc.users,
      [gains, targets, noise_hat, gain_col_sum](const Vec& p) {
        Vec out(p.size(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
          double worst = 0.0;
          for (std::size_t r = 0; r < gains.rows(); ++r) {
            double m = 0.0;
            for (std::size_t j = 0; j < p.size(); ++j)
              if (j != i) m += gains(r, j) * p[j];
            worst = std::max(worst, m);
          }
          out[i] = targets[i] * (worst + noise_hat) / gain_col_sum[i];
        }
        return out;
      },
      "macro-overestimate", FunctionClass::Standard);
}

Vec ubpc_b(const NetworkScenario& sc, const UbpcParams& params) {
  sc.validate();
  if (params.a.size() != sc.users || params.alpha.size() != sc.users)
    throw std::invalid_argument("ubpc_b: parameter length mismatch");
  Vec b(sc.users, 0.0);
  for (std::size_t i = 0; i < sc.users; ++i) {
    if (!(params.alpha[i] > 0.0))
      throw std::invalid_argument("ubpc_b: price coefficients must be positive");
    const double ag = params.a[i] * sc.targets[i];
    if (!(ag > 1.0))
      throw std::invalid_argument("ubpc_b: requires a_i * gamma_i > 1 (user " +
                                  std::to_string(i) + ")");
    b[i] = sc.targets[i] - std::log(ag - 1.0) / params.a[i];
  }
  return b;
}

double ubpc_slope(double a, double b, double x) {
  const double u = 1.0 / (1.0 + std::exp(-a * (x - b)));
  return a * u * (1.0 - u);
}

double ubpc_slope_inverse(double a, double b, double y) {
  if (!(a > 0.0)) throw std::invalid_argument("ubpc_slope_inverse: a must be positive");
  if (!(y > 0.0)) throw std::invalid_argument("ubpc_slope_inverse: y must be positive");
  const double peak = 0.25 * a;
  if (y >= peak) return b;  // above the slope's maximum: pinned to the argmax
  double lo = b;
  double hi = b + 200.0 / a;
  if (y <= ubpc_slope(a, b, hi)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ubpc_slope(a, b, mid) >= y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Mat ubpc_gain_matrix(const NetworkScenario& sc, const UbpcParams& params) {
  const Vec b = ubpc_b(sc, params);
  const NormalizedMatrixSet set = build_normalized(sc);
  Mat mb(sc.users, sc.users, 0.0);
  for (std::size_t i = 0; i < sc.users; ++i)
    for (std::size_t j = 0; j < sc.users; ++j) mb(i, j) = b[i] * set.m_fixed(i, j);
  return mb;
}

InterferenceFunction ubpc_if(const NetworkScenario& sc, const UbpcParams& params) {
  const Vec b = ubpc_b(sc, params);
  const NormalizedMatrixSet set = build_normalized(sc);
  const Mat m = set.m_fixed;
  const Vec n = set.n_fixed;
  const Vec a = params.a;
  const Vec alpha = params.alpha;
  return InterferenceFunction(
      sc.users,
      [m, n, a, alpha, b](const Vec& p) {
        Vec out = mat_vec(m, p);
        for (std::size_t i = 0; i < out.size(); ++i) {
          const double x = out[i] + n[i];  // effective interference
          out[i] = x * ubpc_slope_inverse(a[i], b[i], alpha[i] * x);
        }
        return out;
      },
      "ubpc", FunctionClass::Standard);
}

void IntervalUncertainty::validate() const {
  if (!lower.square() || lower.rows() != upper.rows() || lower.cols() != upper.cols())
    throw std::invalid_argument("IntervalUncertainty: matrices must be square and matching");
  for (std::size_t i = 0; i < lower.rows(); ++i)
    for (std::size_t j = 0; j < lower.cols(); ++j) {
      if (i == j && (lower(i, j) != 0.0 || upper(i, j) != 0.0))
        throw std::invalid_argument("IntervalUncertainty: diagonals must be zero");
      if (!(lower(i, j) >= 0.0) || !(lower(i, j) <= upper(i, j)))
        throw std::invalid_argument("IntervalUncertainty: need 0 <= lower <= upper");
    }
}

InterferenceFunction drpc_if(const Vec& offsets, const IntervalUncertainty& uncertainty) {
  uncertainty.validate();
  if (offsets.size() != uncertainty.upper.rows())
    throw std::invalid_argument("drpc_if: offsets length mismatch");
  if (!all_positive(offsets))
    throw std::invalid_argument("drpc_if: offsets must be strictly positive");
  const Mat upper = uncertainty.upper;
  const Vec n = offsets;
  return InterferenceFunction(
      n.size(),
      [upper, n](const Vec& p) {
        Vec out = mat_vec(upper, p);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += n[i];
        return out;
      },
      "drpc", FunctionClass::Standard);
}

InterferenceFunction clamp_if(const InterferenceFunction& f, const Vec& p_min, const Vec& p_max) {
  if (p_min.size() != f.dim() || p_max.size() != f.dim())
    throw std::invalid_argument("clamp_if: bound length mismatch");
  if (!all_positive(p_min))
    throw std::invalid_argument("clamp_if: p_min must be strictly positive");
  for (std::size_t i = 0; i < p_min.size(); ++i)
    if (!(p_min[i] <= p_max[i]))
      throw std::invalid_argument("clamp_if: need p_min <= p_max");

  const InterferenceFunction inner = f;
  InterferenceFunction out(
      f.dim(),
      [inner, p_min, p_max](const Vec& p) {
        Vec y = inner(p);
        for (std::size_t i = 0; i < y.size(); ++i)
          y[i] = std::max(p_min[i], std::min(p_max[i], y[i]));
        return y;
      },
      "clamped(" + f.name() + ")", f.declared_class());
  if (f.declared_class() == FunctionClass::Contractive && f.modulus() && f.weight())
    out = out.with_certificate(*f.modulus(), *f.weight());
  return out;
}

std::vector<ScalarFixture> scalar_fixtures() {
  std::vector<ScalarFixture> out;

  out.push_back(ScalarFixture{
      "scalar-doubling",
      InterferenceFunction(
          1, [](const Vec& p) { return Vec{2.0 * p[0] + 1.0}; }, "scalar-doubling",
          FunctionClass::Standard),
      /*standard=*/true,
      /*contractive=*/false,
      std::nullopt,
      std::nullopt,
      "uniform slope 2: no fixed point on the nonnegative axis, iterates diverge"});

  out.push_back(ScalarFixture{
      "scalar-sigmoid",
      InterferenceFunction(
          1, [](const Vec& p) { return Vec{4.0 / (1.0 + std::exp(-(p[0] - 2.0)))}; },
          "scalar-sigmoid", FunctionClass::Standard),
      /*standard=*/true,
      /*contractive=*/false,
      std::nullopt,
      2.0,
      "slope reaches 1 at the fixed point: convergence is sub-linear"});

  out.push_back(ScalarFixture{
      "scalar-piecewise",
      InterferenceFunction(
          1,
          [](const Vec& p) {
            const double x = p[0];
            const double y = (x <= 0.25) ? x * x + 0.01 : 0.5 * x - 0.0625 + 0.01;
            return Vec{y};
          },
          "scalar-piecewise", FunctionClass::Contractive)
          .with_certificate(0.5, Vec{1.0}),
      /*standard=*/false,
      /*contractive=*/true,
      0.5,
      0.5 * (1.0 - std::sqrt(0.96)),
      "slope capped at 1/2 but scaling fails across the quadratic knee"});

  out.push_back(ScalarFixture{
      "scalar-drift",
      InterferenceFunction(
          1, [](const Vec& p) { return Vec{p[0] + std::exp(-p[0])}; }, "scalar-drift",
          FunctionClass::Standard),
      /*standard=*/true,
      /*contractive=*/false,
      std::nullopt,
      std::nullopt,
      "distance between iterates shrinks yet no fixed point exists"});

  return out;
}

const ScalarFixture& scalar_fixture(const std::string& id) {
  static const std::vector<ScalarFixture> all = scalar_fixtures();
  for (const auto& fx : all)
    if (fx.id == id) return fx;
  throw std::invalid_argument("scalar_fixture: unknown id '" + id + "'");
}

}  // namespace ifc
