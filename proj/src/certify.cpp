#include "ifc/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ifc {

namespace {

void require_zero_diagonal(const Mat& m, const char* who) {
  if (!m.square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0.0)
      throw std::invalid_argument(std::string(who) + ": diagonal must be zero");
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) >= 0.0) || !std::isfinite(m(i, j)))
        throw std::invalid_argument(std::string(who) + ": entries must be nonnegative");
  }
}

}  // namespace

bool certificate_covers(const ContractionCertificate& cert, const Mat& a, double tol) {
  if (a.rows() != cert.v.size() || a.cols() != cert.v.size()) return false;
  const Vec av = mat_vec(a, cert.v);
  for (std::size_t i = 0; i < cert.v.size(); ++i)
    if (av[i] > cert.c * cert.v[i] + tol) return false;
  return true;
}

CertifyResult certify_linear(const Mat& m, const std::string& family) {
  require_zero_diagonal(m, "certify_linear");
  try {
    Vec v = weight_vector_for(m, ones(m.rows()));
    ContractionCertificate cert;
    cert.family = family;
    cert.method = "perron-solve";
    cert.v = std::move(v);
    cert.c = weighted_max_norm(m, cert.v);
    cert.rho = spectral_radius(m).value;
    return cert;
  } catch (const CertificateImpossible&) {
    CertFailure f;
    f.family = family;
    f.reason = "spectral-radius";
    f.rho_estimate = spectral_radius(m).value;
    f.detail = "no positive v with Mv < v exists";
    return f;
  }
}

CertifyResult certify_linear_rowsum(const Mat& m, const std::string& family) {
  require_zero_diagonal(m, "certify_linear_rowsum");
  const double c = max_row_sum(m);
  if (c < 1.0) {
    ContractionCertificate cert;
    cert.family = family;
    cert.method = "row-sum";
    cert.c = c;
    cert.v = ones(m.rows());
    cert.rho = std::numeric_limits<double>::quiet_NaN();
    return cert;
  }
  CertFailure f;
  f.family = family;
  f.reason = "spectral-radius";
  f.rho_estimate = c;  // row-sum upper bound only
  f.detail = "a row sum reaches " + std::to_string(c);
  return f;
}

CertifyResult certify_common_v(const std::vector<Mat>& ms, const std::string& family,
                               const CommonVOptions& opts) {
  if (ms.empty()) throw std::invalid_argument("certify_common_v: need at least one matrix");
  const std::size_t k = ms.front().rows();
  for (const Mat& m : ms) {
    require_zero_diagonal(m, "certify_common_v");
    if (m.rows() != k) throw std::invalid_argument("certify_common_v: mixed dimensions");
  }

  Vec v = ones(k);
  for (int it = 0; it < opts.max_iterations; ++it) {
    Vec next(k, 0.0);
    for (const Mat& m : ms) {
      const Vec mv = mat_vec(m, v);
      for (std::size_t i = 0; i < k; ++i) next[i] = std::max(next[i], mv[i]);
    }
    for (std::size_t i = 0; i < k; ++i) next[i] += 1.0;

    double diff = 0.0;
    for (std::size_t i = 0; i < k; ++i) diff = std::max(diff, std::abs(next[i] - v[i]));
    const double scale = max_norm(next);
    v = std::move(next);

    if (scale > opts.divergence_norm) {
      CertFailure f;
      f.family = family;
      f.reason = "spectral-radius";
      f.detail = "common-v iteration diverged (some assignment has rho >= 1), step " +
                 std::to_string(it + 1);
      return f;
    }
    if (diff <= opts.rel_tol * scale) {
      double c = 0.0;
      for (const Mat& m : ms) c = std::max(c, weighted_max_norm(m, v));
      if (!(c < 1.0)) {
        CertFailure f;
        f.family = family;
        f.reason = "inconclusive";
        f.rho_estimate = c;
        f.detail = "iteration settled but the certificate does not close below one";
        return f;
      }
      ContractionCertificate cert;
      cert.family = family;
      cert.method = "lemma2-enumeration";
      cert.c = c;
      cert.v = std::move(v);
      return cert;
    }
  }
  CertFailure f;
  f.family = family;
  f.reason = "inconclusive";
  f.detail = "iteration cap reached without convergence or divergence; ||v|| = " +
             std::to_string(max_norm(v));
  return f;
}

std::vector<AssignmentSpectrum> enumerate_assignment_spectra(const std::vector<Mat>& ms,
                                                             std::size_t cap) {
  if (ms.empty())
    throw std::invalid_argument("enumerate_assignment_spectra: need at least one matrix");
  const std::size_t k = ms.front().rows();
  const std::size_t nr = ms.size();
  for (const Mat& m : ms) {
    require_zero_diagonal(m, "enumerate_assignment_spectra");
    if (m.rows() != k)
      throw std::invalid_argument("enumerate_assignment_spectra: mixed dimensions");
  }
  const double total_log = static_cast<double>(k) * std::log(static_cast<double>(nr));
  if (total_log > std::log(static_cast<double>(cap)) + 1e-12)
    throw std::invalid_argument("enumerate_assignment_spectra: R^K exceeds the enumeration cap");

  std::vector<AssignmentSpectrum> out;
  std::vector<std::size_t> assign(k, 0);
  Mat mixed(k, k, 0.0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) mixed(i, j) = ms[assign[i]](i, j);
    out.push_back({assign, spectral_radius(mixed).value});

    // odometer over assignments, last user fastest
    std::size_t pos = k;
    while (pos-- > 0) {
      if (++assign[pos] < nr) break;
      assign[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

MacroCertification certify_macro(const std::vector<Mat>& hs) {
  MacroCertification out{certify_common_v(hs, "macro-overestimate"), 0.0, false};
  for (const Mat& h : hs) out.rowsum_c = std::max(out.rowsum_c, max_row_sum(h));
  out.rowsum_ok = out.rowsum_c < 1.0;
  return out;
}

CertifyResult certify_ubpc(const NetworkScenario& sc, const UbpcParams& params) {
  Mat mb;
  try {
    mb = ubpc_gain_matrix(sc, params);
  } catch (const std::invalid_argument& e) {
    CertFailure f;
    f.family = "ubpc";
    f.reason = "parameter-domain";
    f.detail = e.what();
    return f;
  }
  const SpectralResult sr = spectral_radius(mb);
  if (!(sr.value < 1.0)) {
    CertFailure f;
    f.family = "ubpc";
    f.reason = "spectral-radius";
    f.rho_estimate = sr.value;
    f.detail = "rho(M_b) >= 1";
    return f;
  }
  CertifyResult base = certify_linear(mb, "ubpc");
  if (!certified(base)) return base;
  ContractionCertificate cert = certificate(base);
  cert.method = "ubpc-Mb";
  cert.rho = sr.value;
  return cert;
}

CertifyResult certify_drpc(const IntervalUncertainty& uncertainty) {
  uncertainty.validate();
  CertifyResult base = certify_linear(uncertainty.upper, "drpc");
  if (!certified(base)) return base;
  ContractionCertificate cert = certificate(base);
  cert.method = "drpc-sup";
  return cert;
}

double convergence_time_bound(double c, double r0, double delta, int delay_bound) {
  if (!(c > 0.0 && c < 1.0))
    throw std::invalid_argument("convergence_time_bound: c must lie in (0,1)");
  if (!(r0 > 0.0) || !(delta > 0.0) || !(delta < r0))
    throw std::invalid_argument("convergence_time_bound: need 0 < delta < r0");
  if (delay_bound < 0)
    throw std::invalid_argument("convergence_time_bound: delay bound must be >= 0");
  return (delay_bound + 1) * std::log(delta / r0) / std::log(c);
}

}  // namespace ifc
