#pragma once

#include <span>
#include <vector>

namespace drmst {

struct PseudoValueSet {
  double landmark = 0.0;
  double window = 0.0;
  std::vector<double> values;  // one per subject, input order
  double estimate = 0.0;       // full-sample cRMST the values jackknife around
};

// Leave-one-out jackknife pseudo-values of the Kaplan-Meier plug-in cRMST:
// PV_i = n*theta - (n-1)*theta_without_i. Every subject must already be at
// risk at s (time > s); truncation handling matches the survival module on
// both the full and the leave-one-out curves.
PseudoValueSet pseudo_values_crmst(std::span<const double> times,
                                   std::span<const int> statuses, double s, double w);

// The s = 0 special case used by the static model.
PseudoValueSet pseudo_values_rmst(std::span<const double> times,
                                  std::span<const int> statuses, double tau);

}  // namespace drmst
