#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifc/ifun.hpp"
#include "ifc/numkit.hpp"

namespace ifc {

enum class StopReason { Tolerance, MaxIterations, Divergence };

std::string to_string(StopReason r);

/// Logical-time schedule for the asynchronous iteration. Bounded-delay mode
/// updates every user each tick with per-component staleness drawn from
/// {0, ..., D-1} (a user always sees its own power fresh). Total-async mode
/// draws update sets so each user fires at least once per window and lets
/// staleness grow with elapsed time.
struct AsyncSchedule {
  enum class Mode { BoundedDelay, TotalAsync };
  Mode mode = Mode::BoundedDelay;
  int delay_bound = 0;              // D; 0 reduces to the synchronous sweep
  std::uint64_t seed = 0;
  int window = 0;                   // W for total-async; 0 means 10 * K
  double staleness_fraction = 0.5;  // total-async: delays up to this share of t
  double extra_update_prob = 0.5;   // total-async: chance of off-slot updates
};

struct IterationTrace {
  std::vector<Vec> powers;  // p(0), p(1), ..., p(n)
  StopReason stop = StopReason::MaxIterations;
  std::string mode = "sync";  // sync | bounded-delay | total-async
  std::uint64_t seed = 0;
  int delay_bound = 0;
  int window = 0;
  std::vector<int> max_staleness;  // per transition, async runs only

  std::size_t steps() const { return powers.empty() ? 0 : powers.size() - 1; }
  /// e(n) = || p(n) - p* ||_inf^v for every recorded step.
  Vec errors(const Vec& p_star, const Vec& v) const;
};

/// p(n+1) = I(p(n)) until the relative successive difference drops below tol,
/// the iteration cap is hit, or the powers blow past the divergence threshold.
IterationTrace run_sync(const InterferenceFunction& f, const Vec& p0, double tol, int max_iter);

/// Stale-information update: a user that fires evaluates its component on the
/// powers dictated by the schedule's read times; everyone else holds.
IterationTrace run_async(const InterferenceFunction& f, const Vec& p0,
                         const AsyncSchedule& schedule, double tol, int max_iter);

struct RateEstimate {
  bool conclusive = false;
  double rate = 0.0;
  bool sublinear = false;          // rate >= 0.999
  std::size_t window_begin = 0;    // step range the fit used
  std::size_t window_end = 0;
};

/// Least-squares slope of ln e(n) over the last half of the usable steps
/// (those with e(n) above the noise floor 10 eps ||p*||).
RateEstimate empirical_rate(const IterationTrace& trace, const Vec& p_star, const Vec& v);
RateEstimate empirical_rate_from_errors(const Vec& errors, double floor);

struct EnvelopeReport {
  bool pass = false;
  std::ptrdiff_t first_violation = -1;  // step index, -1 when none
};

/// e(n) <= c^n e(0) (1 + 1e-9) for every step. Asynchronous bounded-delay
/// traces should be checked with the degraded modulus from async_modulus.
EnvelopeReport envelope_check(const IterationTrace& trace, double c, const Vec& v,
                              const Vec& p_star);

/// c^(1/(D+1)): the geometric rate surviving a bounded information delay D.
double async_modulus(double c, int delay_bound);

/// Smallest step with e(n) <= delta, or -1 if the trace never gets there.
std::ptrdiff_t measured_convergence_time(const IterationTrace& trace, const Vec& p_star,
                                         const Vec& v, double delta);

enum class DescentStatus { Pass, Fail, Skipped };

struct DescentReport {
  DescentStatus status = DescentStatus::Skipped;
  std::string reason;
  std::ptrdiff_t first_violation = -1;
};

/// From a feasible start (I(p') <= p') a declared-monotone function must
/// produce componentwise nonincreasing iterates. Skipped with a reason when
/// the preconditions do not hold.
DescentReport monotone_descent_check(const InterferenceFunction& f, const Vec& p_prime,
                                     double tol = 1e-12, int max_iter = 1000);

}  // namespace ifc
