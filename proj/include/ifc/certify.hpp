#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "ifc/numkit.hpp"
#include "ifc/zoo.hpp"

namespace ifc {

struct ContractionCertificate {
  std::string family;  // which construction the certificate covers
  std::string method;  // perron-solve | row-sum | lemma2-enumeration | ubpc-Mb | drpc-sup
  double c = 0.0;      // modulus, < 1
  Vec v;               // positive weight vector
  double rho = std::numeric_limits<double>::quiet_NaN();  // spectral radius when computed
};

struct CertFailure {
  std::string family;
  std::string reason;  // spectral-radius | enumeration-found-bad-assignment |
                       // parameter-domain | inconclusive
  double rho_estimate = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> bad_assignment;  // set for enumeration failures
  std::string detail;
};

using CertifyResult = std::variant<ContractionCertificate, CertFailure>;

inline bool certified(const CertifyResult& r) {
  return std::holds_alternative<ContractionCertificate>(r);
}
inline const ContractionCertificate& certificate(const CertifyResult& r) {
  return std::get<ContractionCertificate>(r);
}
inline const CertFailure& failure(const CertifyResult& r) { return std::get<CertFailure>(r); }

/// Sum_j A_ij v_j <= c v_i for every row, within an absolute slack.
bool certificate_covers(const ContractionCertificate& cert, const Mat& a, double tol = 1e-9);

/// v = (I-M)^{-1} 1, c = ||M||_inf^v. Succeeds exactly when rho(M) < 1.
CertifyResult certify_linear(const Mat& m, const std::string& family = "linear");

/// Conservative variant with v = 1: succeeds iff every row sum is below one.
CertifyResult certify_linear_rowsum(const Mat& m, const std::string& family = "linear");

struct CommonVOptions {
  int max_iterations = 100000;
  double divergence_norm = 1e12;
  double rel_tol = 1e-12;
};

/// Common weight vector for a family of nonnegative matrices via the monotone
/// iteration v <- max_r(M_r v) + 1 from v = 1 (the Bellman iteration of the
/// max-linear system). Converges iff every mixed-row assignment matrix has
/// spectral radius below one; unbounded growth refutes that hypothesis.
CertifyResult certify_common_v(const std::vector<Mat>& ms, const std::string& family = "min-power",
                               const CommonVOptions& opts = {});

struct AssignmentSpectrum {
  std::vector<std::size_t> assignment;  // user -> base, 0-based
  double rho;
};

/// Exact spectra of all R^K mixed-row matrices M^l (row i taken from M_{l(i)}).
/// Refuses above the enumeration cap.
std::vector<AssignmentSpectrum> enumerate_assignment_spectra(const std::vector<Mat>& ms,
                                                             std::size_t cap = 1000000);

struct MacroCertification {
  CertifyResult result;
  double rowsum_c = 0.0;    // max over bases of the largest row sum
  bool rowsum_ok = false;   // the more conservative all-row-sums-below-one test
};

/// Common-v certificate over the overestimate matrices H_r, with the row-sum
/// comparison emitted alongside.
MacroCertification certify_macro(const std::vector<Mat>& hs);

/// Certificate for the utility-based family: c and v from M_b = diag(b) M,
/// succeeding exactly when rho(M_b) < 1. Reports rho alongside the row-wise
/// re-verifiable modulus ||M_b||_inf^v.
CertifyResult certify_ubpc(const NetworkScenario& sc, const UbpcParams& params);

/// Worst-case certificate over a row-interval uncertainty set: the supremum
/// of the induced norm is attained at the upper matrix.
CertifyResult certify_drpc(const IntervalUncertainty& uncertainty);

/// Steps needed to drive the weighted error from r0 below delta at modulus c,
/// with a (delay_bound + 1) stretch for bounded-delay execution.
double convergence_time_bound(double c, double r0, double delta, int delay_bound);

}  // namespace ifc
