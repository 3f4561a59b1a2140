#include "drmst/survival.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "drmst/errors.hpp"

namespace drmst {

double SurvivalCurve::survival_at(double t) const {
  const auto it = std::upper_bound(event_times.begin(), event_times.end(), t);
  const auto k = static_cast<std::size_t>(it - event_times.begin());
  return k == 0 ? 1.0 : survival[k - 1];
}

namespace detail {

SurvivalCurve km_sorted(std::span<const double> times, std::span<const int> statuses) {
  const std::size_t n = times.size();
  SurvivalCurve curve;
  curve.max_observed_time = times[n - 1];
  curve.last_is_event = statuses[n - 1] == 1;
  double s = 1.0;
  std::size_t i = 0;
  while (i < n) {
    const double t = times[i];
    int d = 0;
    std::size_t j = i;
    while (j < n && times[j] == t) {
      d += statuses[j];
      ++j;
    }
    if (d > 0) {
      const int at_risk = static_cast<int>(n - i);
      s *= 1.0 - static_cast<double>(d) / at_risk;
      curve.event_times.push_back(t);
      curve.survival.push_back(s);
      curve.at_risk.push_back(at_risk);
      curve.n_events.push_back(d);
    }
    i = j;
  }
  return curve;
}

}  // namespace detail

SurvivalCurve kaplan_meier(std::span<const double> times, std::span<const int> statuses) {
  if (times.empty()) throw std::invalid_argument("kaplan_meier: empty input");
  if (times.size() != statuses.size()) {
    throw std::invalid_argument("kaplan_meier: times and statuses differ in length");
  }
  std::vector<int> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (times[static_cast<std::size_t>(a)] != times[static_cast<std::size_t>(b)]) {
      return times[static_cast<std::size_t>(a)] < times[static_cast<std::size_t>(b)];
    }
    // deaths first at tied times
    return statuses[static_cast<std::size_t>(a)] > statuses[static_cast<std::size_t>(b)];
  });
  std::vector<double> t(times.size());
  std::vector<int> st(times.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto idx = static_cast<std::size_t>(order[k]);
    if (!(times[idx] > 0)) {
      throw std::invalid_argument("kaplan_meier: times must be positive, got " +
                                  std::to_string(times[idx]));
    }
    if (statuses[idx] != 0 && statuses[idx] != 1) {
      throw std::invalid_argument("kaplan_meier: status must be 0 or 1");
    }
    t[k] = times[idx];
    st[k] = statuses[idx];
  }
  return detail::km_sorted(t, st);
}

namespace {

// Exact integral of the survival step function over [a, b], b <= max time.
double integrate_survival(const SurvivalCurve& c, double a, double b) {
  if (b <= a) return 0.0;
  const auto& et = c.event_times;
  auto it = std::upper_bound(et.begin(), et.end(), a);
  auto k = static_cast<std::size_t>(it - et.begin());
  double s = k == 0 ? 1.0 : c.survival[k - 1];
  double total = 0.0;
  double prev = a;
  while (k < et.size() && et[k] < b) {
    total += s * (et[k] - prev);
    prev = et[k];
    s = c.survival[k];
    ++k;
  }
  total += s * (b - prev);
  return total;
}

}  // namespace

RestrictedMean rmst(const SurvivalCurve& curve, double tau) {
  if (!(tau > 0)) throw std::invalid_argument("rmst: tau must be positive");
  RestrictedMean out;
  out.horizon = tau;
  const double b = std::min(tau, curve.max_observed_time);
  out.value = integrate_survival(curve, 0.0, b);
  out.truncated =
      tau > curve.max_observed_time && curve.survival_at(curve.max_observed_time) > 0;
  return out;
}

RestrictedMean crmst(const SurvivalCurve& curve, double s, double w) {
  if (!(w > 0)) throw std::invalid_argument("crmst: window must be positive");
  if (s < 0) throw std::invalid_argument("crmst: prediction time must be >= 0");
  const double s_at = curve.survival_at(s);
  if (s_at <= 0) {
    throw std::invalid_argument("crmst: no one at risk at s = " + std::to_string(s));
  }
  RestrictedMean out;
  out.horizon = w;
  const double b = std::min(s + w, curve.max_observed_time);
  out.value = integrate_survival(curve, s, b) / s_at;
  out.truncated = s + w > curve.max_observed_time &&
                  curve.survival_at(curve.max_observed_time) > 0;
  return out;
}

KmInterval km_survival_ci(const SurvivalCurve& curve, double t) {
  static constexpr double kZ975 = 1.959963984540054;
  KmInterval out;
  double var = 0.0;  // Greenwood cumulative sum for d/(n(n-d))
  for (std::size_t k = 0; k < curve.event_times.size() && curve.event_times[k] <= t; ++k) {
    const double d = curve.n_events[k];
    const double n = curve.at_risk[k];
    out.estimate = curve.survival[k];
    if (n > d) {
      var += d / (n * (n - d));
    } else {
      var = std::numeric_limits<double>::quiet_NaN();
    }
  }
  if (out.estimate >= 1.0) {
    out.lower = out.upper = 1.0;
    return out;
  }
  if (out.estimate <= 0.0 || std::isnan(var)) {
    out.lower = 0.0;
    out.upper = out.estimate > 0 ? out.estimate : 0.0;
    return out;
  }
  const double half_width = kZ975 * std::sqrt(var);
  out.lower = std::exp(std::log(out.estimate) - half_width);
  out.upper = std::min(1.0, std::exp(std::log(out.estimate) + half_width));
  return out;
}

}  // namespace drmst
