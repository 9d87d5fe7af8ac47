#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "ifc/numkit.hpp"

namespace ifc {

enum class FunctionClass {
  Unclassified,
  Standard,
  Contractive,
  TwoSidedScalable,
  TwoSidedContractive,
};

std::string to_string(FunctionClass c);

/// An interference function: evaluator defined on the nonnegative orthant,
/// output of the same dimension, plus the class the construction declares.
/// Declared contractive functions carry their modulus and weight vector.
class InterferenceFunction {
 public:
  using Evaluator = std::function<Vec(const Vec&)>;

  InterferenceFunction(std::size_t dim, Evaluator eval, std::string name,
                       FunctionClass declared = FunctionClass::Unclassified)
      : dim_(dim), eval_(std::move(eval)), name_(std::move(name)), declared_(declared) {
    if (dim_ == 0) throw std::invalid_argument("InterferenceFunction: dimension must be >= 1");
  }

  Vec operator()(const Vec& p) const {
    if (p.size() != dim_)
      throw std::invalid_argument("InterferenceFunction(" + name_ + "): bad input length");
    Vec out = eval_(p);
    if (out.size() != dim_)
      throw std::logic_error("InterferenceFunction(" + name_ + "): bad output length");
    return out;
  }

  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  FunctionClass declared_class() const { return declared_; }
  const std::optional<double>& modulus() const { return modulus_; }
  const std::optional<Vec>& weight() const { return weight_; }

  /// Copy of this function tagged with a contraction certificate (c, v).
  InterferenceFunction with_certificate(double c, Vec v,
                                        FunctionClass cls = FunctionClass::Contractive) const {
    InterferenceFunction f = *this;
    f.declared_ = cls;
    f.modulus_ = c;
    f.weight_ = std::move(v);
    return f;
  }

  InterferenceFunction renamed(std::string name) const {
    InterferenceFunction f = *this;
    f.name_ = std::move(name);
    return f;
  }

 private:
  std::size_t dim_;
  Evaluator eval_;
  std::string name_;
  FunctionClass declared_;
  std::optional<double> modulus_;
  std::optional<Vec> weight_;
};

/// Deterministic draws on top of mt19937_64; distributions are hand-rolled so
/// sequences are identical across standard libraries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::uint64_t integer(std::uint64_t bound) { return bound ? gen_() % bound : 0; }
  Vec log_uniform_vec(std::size_t n, double lo, double hi) {
    Vec x(n);
    for (double& xi : x) xi = log_uniform(lo, hi);
    return x;
  }

 private:
  std::mt19937_64 gen_;
};

struct CheckOptions {
  double power_lo = 1e-6;   // sampled powers are log-uniform in [power_lo, power_hi]
  double power_hi = 1e6;
  double alpha_max = 10.0;  // scaling factors log-uniform in (1, alpha_max]
  double eps_min = 1e-9;    // perturbations log-uniform in [eps_min, eps_max]
  double eps_max = 100.0;
  double rel_slack = 1e-12; // slack for non-strict comparisons; strict ones use none
};

struct Counterexample {
  Vec p;                          // primary point
  std::optional<Vec> p2;          // comparison point, when the axiom uses a pair
  std::optional<double> alpha;
  std::optional<double> epsilon;
  int component = -1;
  double lhs = 0.0;               // the two sides of the violated inequality
  double rhs = 0.0;
};

struct AxiomVerdict {
  std::string axiom;
  bool pass = false;
  std::optional<Counterexample> witness;
  int samples_checked = 0;
  std::uint64_t seed = 0;
  std::optional<double> modulus;  // (c, v) the contractivity checkers were run with
  std::optional<Vec> weight;
};

// Sampling-based falsifiers. A pass means no violation was found among the
// deterministic probes plus n_samples seeded random draws; a fail carries a
// witness that re-evaluates to a violation by direct arithmetic.
AxiomVerdict check_positivity(const InterferenceFunction& f, std::uint64_t seed, int n_samples,
                              const CheckOptions& opts = {});
AxiomVerdict check_monotonicity(const InterferenceFunction& f, std::uint64_t seed, int n_samples,
                                const CheckOptions& opts = {});
AxiomVerdict check_scalability(const InterferenceFunction& f, std::uint64_t seed, int n_samples,
                               const CheckOptions& opts = {});
AxiomVerdict check_contractivity(const InterferenceFunction& f, const Vec& v, double c,
                                 std::uint64_t seed, int n_samples, const CheckOptions& opts = {});
AxiomVerdict check_two_sided_scalability(const InterferenceFunction& f, std::uint64_t seed,
                                         int n_samples, const CheckOptions& opts = {});
AxiomVerdict check_two_sided_contractivity(const InterferenceFunction& f, const Vec& v, double c,
                                           std::uint64_t seed, int n_samples,
                                           const CheckOptions& opts = {});

/// Re-evaluate a fail verdict's witness directly against the function.
bool witness_violates(const InterferenceFunction& f, const AxiomVerdict& verdict,
                      const CheckOptions& opts = {});

/// Change of variables s = ln p: returns s -> ln(I(exp(s))). Throws
/// std::domain_error if the wrapped function produces a nonpositive component.
InterferenceFunction log_transform(const InterferenceFunction& f);

/// d_c(p, p') = max_i |ln(p_i / p'_i)| for strictly positive vectors.
double dc_metric(const Vec& p, const Vec& q);

/// True iff I(p') <= p' componentwise (exact comparison, no slack).
bool existence_test(const InterferenceFunction& f, const Vec& p_prime);

}  // namespace ifc
