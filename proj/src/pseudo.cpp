#include "drmst/pseudo.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "drmst/survival.hpp"

namespace drmst {

PseudoValueSet pseudo_values_crmst(std::span<const double> times,
                                   std::span<const int> statuses, double s, double w) {
  const std::size_t n = times.size();
  if (n < 2) throw std::invalid_argument("pseudo_values_crmst: need at least 2 subjects");
  if (times.size() != statuses.size()) {
    throw std::invalid_argument("pseudo_values_crmst: length mismatch");
  }
  if (!(w > 0)) throw std::invalid_argument("pseudo_values_crmst: window must be positive");
  for (double t : times) {
    if (!(t > s)) {
      throw std::invalid_argument(
          "pseudo_values_crmst: subject with time " + std::to_string(t) +
          " is not at risk at s = " + std::to_string(s));
    }
  }

  const SurvivalCurve full = kaplan_meier(times, statuses);
  const double theta = crmst(full, s, w).value;

  // Sort once; each leave-one-out sample is the sorted arrays minus one slot.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
    if (times[ia] != times[ib]) return times[ia] < times[ib];
    return statuses[ia] > statuses[ib];
  });
  std::vector<double> t_sorted(n);
  std::vector<int> s_sorted(n);
  for (std::size_t k = 0; k < n; ++k) {
    t_sorted[k] = times[static_cast<std::size_t>(order[k])];
    s_sorted[k] = statuses[static_cast<std::size_t>(order[k])];
  }

  PseudoValueSet out;
  out.landmark = s;
  out.window = w;
  out.estimate = theta;
  out.values.resize(n);
  std::vector<double> t_loo(n - 1);
  std::vector<int> s_loo(n - 1);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      t_loo[m] = t_sorted[j];
      s_loo[m] = s_sorted[j];
      ++m;
    }
    const SurvivalCurve loo = detail::km_sorted(t_loo, s_loo);
    const double theta_loo = crmst(loo, s, w).value;
    out.values[static_cast<std::size_t>(order[k])] = dn * theta - (dn - 1.0) * theta_loo;
  }
  return out;
}

PseudoValueSet pseudo_values_rmst(std::span<const double> times,
                                  std::span<const int> statuses, double tau) {
  return pseudo_values_crmst(times, statuses, 0.0, tau);
}

}  // namespace drmst
