#pragma once

#include <span>
#include <vector>

namespace drmst {

// Product-limit estimate. `survival[k]` is S immediately after
// `event_times[k]`; deaths precede censorings at tied times.
struct SurvivalCurve {
  std::vector<double> event_times;  // strictly increasing, >=1 event each
  std::vector<double> survival;
  std::vector<int> at_risk;
  std::vector<int> n_events;
  double max_observed_time = 0.0;
  bool last_is_event = false;

  // Right-continuous: the value at an event time includes its drop.
  double survival_at(double t) const;
};

struct RestrictedMean {
  double value = 0.0;
  double horizon = 0.0;
  // Set when the upper integration bound exceeded the largest observed
  // time while the curve was still positive there (no extrapolation).
  bool truncated = false;
};

SurvivalCurve kaplan_meier(std::span<const double> times, std::span<const int> statuses);

// Area under S(t) over [0, min(tau, max observed time)].
RestrictedMean rmst(const SurvivalCurve& curve, double tau);

// Conditional restricted mean over the window (s, s+w]:
// integral of S over (s, s+w] divided by S(s). crmst(curve, 0, w) == rmst(curve, w).
RestrictedMean crmst(const SurvivalCurve& curve, double s, double w);

struct KmInterval {
  double estimate = 1.0;
  double lower = 1.0;
  double upper = 1.0;
};

// Greenwood variance with a log-transformed 95% interval.
KmInterval km_survival_ci(const SurvivalCurve& curve, double t);

namespace detail {
// Product-limit over already sorted data (time ascending, events before
// censorings at ties). Shared with the jackknife loop in the pseudo module.
SurvivalCurve km_sorted(std::span<const double> times, std::span<const int> statuses);
}  // namespace detail

}  // namespace drmst
