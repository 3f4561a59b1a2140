#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drmst/schema.hpp"
#include "drmst/survival.hpp"

namespace drmst {

struct SubjectVisit {
  double time = 0.0;           // years since referral
  std::vector<double> values;  // encoded design columns; NaN = missing
};

struct SubjectRecord {
  std::string id;
  double outcome_time = 0.0;
  int status = 0;  // 1 = event, 0 = censored
  std::vector<SubjectVisit> visits;  // strictly increasing, baseline at 0
};

// Immutable after construction; safe for concurrent reads.
class LongitudinalDataset {
 public:
  LongitudinalDataset(CovariateSchema schema, std::vector<SubjectRecord> subjects);

  const CovariateSchema& schema() const { return schema_; }
  const std::vector<SubjectRecord>& subjects() const { return subjects_; }
  std::size_t n_subjects() const { return subjects_.size(); }
  std::size_t n_rows() const;
  std::size_t n_events() const;

  int subject_index(std::string_view id) const;  // -1 if unknown

  // Encoded covariate vector at time s: per column, the latest non-missing
  // value from a visit at or before s (last observation carried forward).
  std::vector<double> covariates_at(int subject_index, double s) const;
  std::vector<double> covariates_at(std::string_view id, double s) const;

  std::vector<double> outcome_times() const;
  std::vector<int> statuses() const;

  // New dataset containing the selected subjects (indices into subjects()).
  LongitudinalDataset subset(const std::vector<int>& subject_indices) const;

  void write_csv(std::ostream& out) const;

 private:
  CovariateSchema schema_;
  std::vector<SubjectRecord> subjects_;
  std::map<std::string, int, std::less<>> index_;
};

LongitudinalDataset parse_longitudinal(std::istream& in, CovariateSchema schema);
LongitudinalDataset parse_longitudinal_file(const std::string& path,
                                            CovariateSchema schema);

// Prediction input: same layout minus the outcome columns (tolerated if
// present, ignored). Returns one record per patient with visits only.
std::vector<SubjectRecord> parse_patient_records(std::istream& in,
                                                 const CovariateSchema& schema);

// LOCF resolution against a bare record (used for prediction inputs).
std::vector<double> covariates_at(const SubjectRecord& record,
                                  const CovariateSchema& schema, double s);

struct DatasetSummary {
  std::size_t n_subjects = 0;
  std::size_t n_rows = 0;
  std::size_t n_events = 0;
  double median_followup = 0.0;
  double followup_min = 0.0;
  double followup_max = 0.0;
  std::map<double, KmInterval> survival_at;
};

DatasetSummary summarize(const LongitudinalDataset& data,
                         const std::vector<double>& survival_times);

}  // namespace drmst
