#include "ifc/ifun.hpp"

#include <algorithm>
#include <cmath>

namespace ifc {

std::string to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::Unclassified: return "unclassified";
    case FunctionClass::Standard: return "standard";
    case FunctionClass::Contractive: return "contractive";
    case FunctionClass::TwoSidedScalable: return "two-sided-scalable";
    case FunctionClass::TwoSidedContractive: return "two-sided-contractive";
  }
  return "unclassified";
}

namespace {

// Dyadic ladder probed before random sampling. Deterministic witnesses for
// the stock counterexamples land on round numbers this way.
constexpr double kProbeScales[] = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0};
constexpr double kProbeAlphas[] = {2.0, 1.5, 10.0};
constexpr double kProbeEps[] = {1e-6, 1e-3, 1.0, 100.0};

Vec scaled(const Vec& v, double t) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = t * v[i];
  return out;
}

Vec add_scaled(const Vec& p, double t, const Vec& v) {
  Vec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + t * v[i];
  return out;
}

Vec clamp_nonnegative(Vec p) {
  for (double& x : p) x = std::max(x, 0.0);
  return p;
}

double slack_for(double lhs, double rhs, const CheckOptions& opts) {
  return opts.rel_slack * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

struct Checker {
  const InterferenceFunction& f;
  const CheckOptions& opts;
  AxiomVerdict verdict;

  Checker(const InterferenceFunction& fn, std::string axiom, std::uint64_t seed,
          const CheckOptions& o)
      : f(fn), opts(o) {
    verdict.axiom = std::move(axiom);
    verdict.seed = seed;
    verdict.pass = true;
  }

  void fail(Counterexample ce) {
    if (!verdict.pass) return;
    verdict.pass = false;
    verdict.witness = std::move(ce);
  }

  bool done() const { return !verdict.pass; }
};

}  // namespace

AxiomVerdict check_positivity(const InterferenceFunction& f, std::uint64_t seed, int n_samples,
                              const CheckOptions& opts) {
  if (n_samples < 1) throw std::invalid_argument("check_positivity: n_samples must be >= 1");
  Checker ck(f, "positivity", seed, opts);
  SampleRng rng(seed);

  auto probe = [&](const Vec& p) {
    if (ck.done()) return;
    ++ck.verdict.samples_checked;
    const Vec out = f(p);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!(out[i] > 0.0)) {
        Counterexample ce;
        ce.p = p;
        ce.component = static_cast<int>(i);
        ce.lhs = out[i];
        ce.rhs = 0.0;
        ck.fail(std::move(ce));
        return;
      }
    }
  };

  probe(Vec(f.dim(), 0.0));  // the origin is always part of the claim
  for (double t : kProbeScales) probe(scaled(ones(f.dim()), t));
  for (int s = 0; s < n_samples && !ck.done(); ++s)
    probe(rng.log_uniform_vec(f.dim(), opts.power_lo, opts.power_hi));
  return ck.verdict;
}

AxiomVerdict check_monotonicity(const InterferenceFunction& f, std::uint64_t seed, int n_samples,
                                const CheckOptions& opts) {
  if (n_samples < 1) throw std::invalid_argument("check_monotonicity: n_samples must be >= 1");
  Checker ck(f, "monotonicity", seed, opts);
  SampleRng rng(seed);

  auto probe = [&](const Vec& hi, const Vec& lo) {
    if (ck.done()) return;
    ++ck.verdict.samples_checked;
    const Vec ihi = f(hi);
    const Vec ilo = f(lo);
    for (std::size_t i = 0; i < ihi.size(); ++i) {
      if (ilo[i] > ihi[i] + slack_for(ilo[i], ihi[i], opts)) {
        Counterexample ce;
        ce.p = hi;
        ce.p2 = lo;
        ce.component = static_cast<int>(i);
        ce.lhs = ilo[i];
        ce.rhs = ihi[i];
        ck.fail(std::move(ce));
        return;
      }
    }
  };

  for (double t : kProbeScales) {
    probe(scaled(ones(f.dim()), t), scaled(ones(f.dim()), 0.5 * t));
    probe(scaled(ones(f.dim()), t), Vec(f.dim(), 0.0));
  }
  for (int s = 0; s < n_samples && !ck.done(); ++s) {
    Vec hi = rng.log_uniform_vec(f.dim(), opts.power_lo, opts.power_hi);
    Vec lo(hi.size());
    for (std::size_t i = 0; i < hi.size(); ++i) lo[i] = hi[i] * rng.unit();
    probe(hi, lo);
  }
  return ck.verdict;
}

AxiomVerdict check_scalability(const InterferenceFunction& f, std::uint64_t seed, int n_samples,
                               const CheckOptions& opts) {
  if (n_samples < 1) throw std::invalid_argument("check_scalability: n_samples must be >= 1");
  Checker ck(f, "scalability", seed, opts);
  SampleRng rng(seed);

  auto probe = [&](const Vec& p, double alpha) {
    if (ck.done()) return;
    ++ck.verdict.samples_checked;
    const Vec ip = f(p);
    const Vec iap = f(scaled(p, alpha));
    for (std::size_t i = 0; i < ip.size(); ++i) {
      const double lhs = alpha * ip[i];
      if (!(lhs > iap[i])) {  // strict axiom: a tie is a violation
        Counterexample ce;
        ce.p = p;
        ce.alpha = alpha;
        ce.component = static_cast<int>(i);
        ce.lhs = lhs;
        ce.rhs = iap[i];
        ck.fail(std::move(ce));
        return;
      }
    }
  };

  for (double t : kProbeScales)
    for (double a : kProbeAlphas) probe(scaled(ones(f.dim()), t), a);
  for (int s = 0; s < n_samples && !ck.done(); ++s) {
    Vec p = rng.log_uniform_vec(f.dim(), opts.power_lo, opts.power_hi);
    const double alpha = rng.log_uniform(1.0 + 1e-12, opts.alpha_max);
    probe(p, alpha);
  }
  return ck.verdict;
}

AxiomVerdict check_contractivity(const InterferenceFunction& f, const Vec& v, double c,
                                 std::uint64_t seed, int n_samples, const CheckOptions& opts) {
  if (n_samples < 1) throw std::invalid_argument("check_contractivity: n_samples must be >= 1");
  if (v.size() != f.dim() || !all_positive(v))
    throw std::invalid_argument("check_contractivity: v must be positive, length K");
  if (!(c >= 0.0 && c < 1.0))
    throw std::invalid_argument("check_contractivity: c must lie in [0,1)");
  Checker ck(f, "contractivity", seed, opts);
  ck.verdict.modulus = c;
  ck.verdict.weight = v;
  SampleRng rng(seed);

  auto probe = [&](const Vec& p, double eps) {
    if (ck.done()) return;
    ++ck.verdict.samples_checked;
    const Vec ip = f(p);
    const Vec ipe = f(add_scaled(p, eps, v));
    for (std::size_t i = 0; i < ip.size(); ++i) {
      const double rhs = ip[i] + c * eps * v[i];
      if (ipe[i] > rhs + slack_for(ipe[i], rhs, opts)) {
        Counterexample ce;
        ce.p = p;
        ce.epsilon = eps;
        ce.component = static_cast<int>(i);
        ce.lhs = ipe[i];
        ce.rhs = rhs;
        ck.fail(std::move(ce));
        return;
      }
    }
  };

  for (double t : kProbeScales)
    for (double e : kProbeEps) probe(scaled(v, t), e);
  for (int s = 0; s < n_samples && !ck.done(); ++s) {
    Vec p = rng.log_uniform_vec(f.dim(), opts.power_lo, opts.power_hi);
    const double eps = rng.log_uniform(opts.eps_min, opts.eps_max);
    probe(p, eps);
  }
  return ck.verdict;
}

AxiomVerdict check_two_sided_scalability(const InterferenceFunction& f, std::uint64_t seed,
                                         int n_samples, const CheckOptions& opts) {
  if (n_samples < 1)
    throw std::invalid_argument("check_two_sided_scalability: n_samples must be >= 1");
  Checker ck(f, "two-sided-scalability", seed, opts);
  SampleRng rng(seed);

  auto probe = [&](const Vec& p, const Vec& q, double alpha) {
    if (ck.done()) return;
    ++ck.verdict.samples_checked;
    const Vec ip = f(p);
    const Vec iq = f(q);
    for (std::size_t i = 0; i < ip.size(); ++i) {
      const bool upper_ok = iq[i] < alpha * ip[i];
      const bool lower_ok = iq[i] > ip[i] / alpha;
      if (!upper_ok || !lower_ok) {  // strict axiom
        Counterexample ce;
        ce.p = p;
        ce.p2 = q;
        ce.alpha = alpha;
        ce.component = static_cast<int>(i);
        ce.lhs = iq[i];
        ce.rhs = upper_ok ? ip[i] / alpha : alpha * ip[i];
        ck.fail(std::move(ce));
        return;
      }
    }
  };

  for (double t : kProbeScales)
    for (double a : kProbeAlphas) {
      const Vec p = scaled(ones(f.dim()), t);
      probe(p, scaled(p, a), a);        // boundary q = alpha p
      probe(p, scaled(p, 1.0 / a), a);  // boundary q = p / alpha
    }
  for (int s = 0; s < n_samples && !ck.done(); ++s) {
    Vec p = rng.log_uniform_vec(f.dim(), opts.power_lo, opts.power_hi);
    const double alpha = rng.log_uniform(1.0 + 1e-12, opts.alpha_max);
    const std::uint64_t mode = rng.integer(4);
    Vec q(p.size());
    if (mode == 0) {
      q = scaled(p, alpha);
    } else if (mode == 1) {
      q = scaled(p, 1.0 / alpha);
    } else {
      for (std::size_t i = 0; i < p.size(); ++i)
        q[i] = p[i] * rng.log_uniform(1.0 / alpha, alpha);
    }
    probe(p, q, alpha);
  }
  return ck.verdict;
}

AxiomVerdict check_two_sided_contractivity(const InterferenceFunction& f, const Vec& v, double c,
                                           std::uint64_t seed, int n_samples,
                                           const CheckOptions& opts) {
  if (n_samples < 1)
    throw std::invalid_argument("check_two_sided_contractivity: n_samples must be >= 1");
  if (v.size() != f.dim() || !all_positive(v))
    throw std::invalid_argument("check_two_sided_contractivity: v must be positive, length K");
  if (!(c >= 0.0 && c < 1.0))
    throw std::invalid_argument("check_two_sided_contractivity: c must lie in [0,1)");
  Checker ck(f, "two-sided-contractivity", seed, opts);
  ck.verdict.modulus = c;
  ck.verdict.weight = v;
  SampleRng rng(seed);

  auto probe = [&](const Vec& pprime, const Vec& p, double eps) {
    if (ck.done()) return;
    ++ck.verdict.samples_checked;
    const Vec iq = f(pprime);
    const Vec ip = f(p);
    for (std::size_t i = 0; i < ip.size(); ++i) {
      const double hi = iq[i] + c * eps * v[i];
      const double lo = iq[i] - c * eps * v[i];
      if (ip[i] > hi + slack_for(ip[i], hi, opts) ||
          ip[i] < lo - slack_for(ip[i], lo, opts)) {
        Counterexample ce;
        ce.p = p;
        ce.p2 = pprime;
        ce.epsilon = eps;
        ce.component = static_cast<int>(i);
        ce.lhs = ip[i];
        ce.rhs = (ip[i] > hi) ? hi : lo;
        ck.fail(std::move(ce));
        return;
      }
    }
  };

  for (double t : kProbeScales)
    for (double e : kProbeEps) {
      const Vec pprime = scaled(v, t);
      probe(pprime, add_scaled(pprime, e, v), e);
      probe(pprime, clamp_nonnegative(add_scaled(pprime, -e, v)), e);
    }
  for (int s = 0; s < n_samples && !ck.done(); ++s) {
    Vec pprime = rng.log_uniform_vec(f.dim(), opts.power_lo, opts.power_hi);
    const double eps = rng.log_uniform(opts.eps_min, opts.eps_max);
    Vec p(pprime.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = std::max(0.0, pprime[i] + eps * v[i] * rng.uniform(-1.0, 1.0));
    probe(pprime, p, eps);
  }
  return ck.verdict;
}

bool witness_violates(const InterferenceFunction& f, const AxiomVerdict& verdict,
                      const CheckOptions& opts) {
  if (verdict.pass || !verdict.witness) return false;
  const Counterexample& ce = *verdict.witness;
  const std::size_t i = static_cast<std::size_t>(std::max(ce.component, 0));

  if (verdict.axiom == "positivity") return !(f(ce.p)[i] > 0.0);
  if (verdict.axiom == "monotonicity") {
    const Vec ihi = f(ce.p);
    const Vec ilo = f(*ce.p2);
    return ilo[i] > ihi[i] + slack_for(ilo[i], ihi[i], opts);
  }
  if (verdict.axiom == "scalability") {
    const double lhs = *ce.alpha * f(ce.p)[i];
    return !(lhs > f(scaled(ce.p, *ce.alpha))[i]);
  }
  if (verdict.axiom == "contractivity") {
    const Vec& v = *verdict.weight;
    const double lhs = f(add_scaled(ce.p, *ce.epsilon, v))[i];
    const double rhs = f(ce.p)[i] + *verdict.modulus * *ce.epsilon * v[i];
    return lhs > rhs + slack_for(lhs, rhs, opts);
  }
  if (verdict.axiom == "two-sided-scalability") {
    const double ip = f(ce.p)[i];
    const double iq = f(*ce.p2)[i];
    return !(iq < *ce.alpha * ip && iq > ip / *ce.alpha);
  }
  if (verdict.axiom == "two-sided-contractivity") {
    const Vec& v = *verdict.weight;
    const double bound = *verdict.modulus * *ce.epsilon * v[i];
    const double ip = f(ce.p)[i];
    const double iq = f(*ce.p2)[i];
    return ip > iq + bound + slack_for(ip, iq + bound, opts) ||
           ip < iq - bound - slack_for(ip, iq - bound, opts);
  }
  return false;
}

InterferenceFunction log_transform(const InterferenceFunction& f) {
  const std::size_t dim = f.dim();
  auto inner = f;
  return InterferenceFunction(
      dim,
      [inner](const Vec& s) {
        Vec p(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) p[i] = std::exp(s[i]);
        Vec out = inner(p);
        for (std::size_t i = 0; i < out.size(); ++i) {
          if (!(out[i] > 0.0))
            throw std::domain_error("log_transform(" + inner.name() +
                                    "): nonpositive output in component " + std::to_string(i));
          out[i] = std::log(out[i]);
        }
        return out;
      },
      "log(" + f.name() + ")");
}

double dc_metric(const Vec& p, const Vec& q) {
  if (p.size() != q.size()) throw std::invalid_argument("dc_metric: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !(q[i] > 0.0))
      throw std::domain_error("dc_metric: vectors must be strictly positive");
    m = std::max(m, std::abs(std::log(p[i] / q[i])));
  }
  return m;
}

bool existence_test(const InterferenceFunction& f, const Vec& p_prime) {
  if (!all_positive(p_prime)) throw std::invalid_argument("existence_test: p' must be positive");
  const Vec out = f(p_prime);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] > p_prime[i]) return false;
  return true;
}

}  // namespace ifc
