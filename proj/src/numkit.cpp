#include "ifc/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifc {

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec ones(std::size_t n) { return Vec(n, 1.0); }

Vec mat_vec(const Mat& a, const Vec& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double max_norm(const Vec& x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

double max_abs_entry(const Mat& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double max_row_sum(const Mat& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

bool all_positive(const Vec& x) {
  for (double xi : x)
    if (!(xi > 0.0)) return false;
  return true;
}

bool all_finite(const Vec& x) {
  for (double xi : x)
    if (!std::isfinite(xi)) return false;
  return true;
}

namespace {

void require_positive_weights(const Vec& v) {
  for (double vi : v)
    if (!(vi > 0.0) || !std::isfinite(vi))
      throw std::invalid_argument("weighted_max_norm: weights must be positive");
}

void require_nonnegative(const Mat& a, const char* who) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double e = a(i, j);
      if (!(e >= 0.0) || !std::isfinite(e))
        throw std::invalid_argument(std::string(who) + ": matrix must be nonnegative and finite");
    }
}

}  // namespace

double weighted_max_norm(const Vec& x, const Vec& v) {
  if (x.size() != v.size()) throw std::invalid_argument("weighted_max_norm: length mismatch");
  require_positive_weights(v);
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]) / v[i]);
  return m;
}

double weighted_max_norm(const Mat& a, const Vec& v) {
  if (a.cols() != v.size() || a.rows() != v.size())
    throw std::invalid_argument("weighted_max_norm: dimension mismatch");
  require_nonnegative(a, "weighted_max_norm");
  require_positive_weights(v);
  const Vec av = mat_vec(a, v);
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, av[i] / v[i]);
  return m;
}

namespace {

// t > rho(A) for nonnegative A iff (tI - A)x = 1 has a strictly positive
// solution (nonsingular M-matrix test).
bool exceeds_spectral_radius(double t, const Mat& a) {
  const std::size_t n = a.rows();
  Mat b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = (i == j ? t : 0.0) - a(i, j);
  try {
    Vec x = solve_linear(std::move(b), ones(n));
    return all_finite(x) && all_positive(x);
  } catch (const SingularSystem&) {
    return false;
  }
}

}  // namespace

SpectralResult spectral_radius(const Mat& a, const SpectralOptions& opts) {
  if (!a.square()) throw std::invalid_argument("spectral_radius: matrix must be square");
  require_nonnegative(a, "spectral_radius");

  const std::size_t n = a.rows();
  SpectralResult res;
  res.dominant = ones(n);

  const double max_entry = max_abs_entry(a);
  if (n == 1 || max_entry == 0.0) {
    res.value = (n >= 1) ? a(0, 0) : 0.0;
    if (max_entry == 0.0) res.value = 0.0;
    res.converged = true;
    res.method = "trivial";
    res.cw_lower = res.cw_upper = res.value;
    return res;
  }

  const double shift = opts.shift_scale * max_entry;
  Vec v = ones(n);
  double est = std::numeric_limits<double>::infinity();
  double best_lo = 0.0;
  double best_hi = std::numeric_limits<double>::infinity();
  double width_checkpoint = std::numeric_limits<double>::infinity();
  int hits = 0;
  bool stalled = false;

  int k = 0;
  for (; k < opts.max_iterations; ++k) {
    Vec w = mat_vec(a, v);
    for (std::size_t i = 0; i < n; ++i) w[i] += shift * v[i];

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    best_lo = std::max(best_lo, lo);
    best_hi = std::min(best_hi, hi);

    const double nrm = max_norm(w);
    if (nrm == 0.0) {  // A v vanished; only possible when rho = 0
      res.value = 0.0;
      res.converged = true;
      res.method = "power";
      res.iterations = k + 1;
      res.cw_lower = res.cw_upper = 0.0;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] /= nrm;

    const double prev = est;
    est = nrm;
    v = std::move(w);

    if (std::abs(est - prev) <= opts.rel_tol * std::max(est, 1e-300)) {
      if (++hits >= 3) break;
    } else {
      hits = 0;
    }

    if (k >= 2 * opts.stall_check_every && k % opts.stall_check_every == 0) {
      const double width = best_hi - best_lo;
      if (width > 10.0 * opts.rel_tol * std::max(est, 1e-300) &&
          width > 0.999 * width_checkpoint) {
        stalled = true;  // cycling iterate; the bracket has stopped tightening
        break;
      }
      width_checkpoint = width;
    }
  }

  res.iterations = k;
  res.cw_lower = std::max(0.0, best_lo - shift);
  res.cw_upper = std::max(0.0, best_hi - shift);
  res.dominant = v;

  if (hits >= 3) {
    res.value = std::max(0.0, est - shift);
    res.converged = true;
    res.method = "power";
    return res;
  }

  // Bisection refinement of the bracket. Always applicable for nonnegative
  // matrices, so a stalled or budget-exhausted power phase still yields an
  // accurate value instead of a wide interval.
  double lo = res.cw_lower;
  double hi = std::min(res.cw_upper, max_row_sum(a));
  if (!(hi >= lo)) hi = max_row_sum(a);
  double top = hi * (1.0 + 1e-6) + 1e-300;
  int expand = 0;
  while (!exceeds_spectral_radius(top, a) && expand < 64) {
    top = top * 1.5 + 1e-300;
    ++expand;
  }
  if (!exceeds_spectral_radius(top, a)) {
    // Could not establish an upper endpoint; report the interval as-is.
    res.value = 0.5 * (res.cw_lower + res.cw_upper);
    res.converged = false;
    res.method = stalled ? "power-stalled" : "power-exhausted";
    return res;
  }
  hi = top;
  if (exceeds_spectral_radius(lo, a)) lo = 0.0;
  if (exceeds_spectral_radius(lo, a)) {
    hi = lo;  // rho is (numerically) zero
  }
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (exceeds_spectral_radius(mid, a))
      hi = mid;
    else
      lo = mid;
  }
  res.value = 0.5 * (lo + hi);
  res.converged = true;
  res.method = "power+bisection";
  // Dominant direction from the resolvent at a point just above rho.
  const double probe = hi + 1e-9 * std::max(1.0, hi);
  if (exceeds_spectral_radius(probe, a)) {
    Mat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = (i == j ? probe : 0.0) - a(i, j);
    try {
      Vec x = solve_linear(std::move(b), ones(n));
      const double nrm = max_norm(x);
      if (nrm > 0.0 && all_finite(x)) {
        for (double& xi : x) xi /= nrm;
        res.dominant = std::move(x);
      }
    } catch (const SingularSystem&) {
    }
  }
  return res;
}

double spectral_radius_value(const Mat& a) { return spectral_radius(a).value; }

Vec solve_linear(Mat a, Vec b) {
  if (!a.square() || a.rows() != b.size())
    throw std::invalid_argument("solve_linear: dimension mismatch");
  const std::size_t n = a.rows();
  const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                     std::max(max_abs_entry(a), 1e-300);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(perm[col], col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(a(perm[r], col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (!(best > tol)) throw SingularSystem("solve_linear: singular system");
    std::swap(perm[col], perm[pivot]);
    const std::size_t prow = perm[col];
    const double pval = a(prow, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const std::size_t row = perm[r];
      const double f = a(row, col) / pval;
      if (f == 0.0) continue;
      a(row, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a(row, j) -= f * a(prow, j);
      b[row] -= f * b[prow];
    }
  }

  Vec x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    const std::size_t row = perm[ii];
    double s = b[row];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(row, j) * x[j];
    x[ii] = s / a(row, ii);
  }
  return x;
}

Vec weight_vector_for(const Mat& m, const Vec& x) {
  if (!m.square() || m.rows() != x.size())
    throw std::invalid_argument("weight_vector_for: dimension mismatch");
  require_nonnegative(m, "weight_vector_for");
  if (!all_positive(x)) throw std::invalid_argument("weight_vector_for: x must be positive");

  const std::size_t n = m.rows();
  Mat im(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) im(i, j) = (i == j ? 1.0 : 0.0) - m(i, j);

  Vec v;
  try {
    v = solve_linear(std::move(im), x);
  } catch (const SingularSystem&) {
    throw CertificateImpossible("weight_vector_for: I - M is singular (rho(M) >= 1)");
  }
  if (!all_finite(v) || !all_positive(v))
    throw CertificateImpossible("weight_vector_for: no positive weight vector (rho(M) >= 1)");
  const Vec mv = mat_vec(m, v);
  for (std::size_t i = 0; i < n; ++i)
    if (!(mv[i] < v[i]))
      throw CertificateImpossible("weight_vector_for: Mv < v fails (rho(M) too close to 1)");
  return v;
}

Vec solve_linear_fixed_point(const Mat& m, const Vec& n) {
  if (!m.square() || m.rows() != n.size())
    throw std::invalid_argument("solve_linear_fixed_point: dimension mismatch");
  require_nonnegative(m, "solve_linear_fixed_point");
  if (!all_positive(n))
    throw std::invalid_argument("solve_linear_fixed_point: offsets must be positive");

  const std::size_t k = m.rows();
  Mat im(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) im(i, j) = (i == j ? 1.0 : 0.0) - m(i, j);
  Vec p;
  try {
    p = solve_linear(std::move(im), n);
  } catch (const SingularSystem&) {
    throw std::domain_error("solve_linear_fixed_point: singular system (rho(M) = 1)");
  }
  if (!all_finite(p) || !all_positive(p))
    throw std::domain_error("solve_linear_fixed_point: infeasible targets (rho(M) >= 1)");
  return p;
}

}  // namespace ifc
