#include "drmst/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "drmst/csv.hpp"
#include "drmst/errors.hpp"

namespace drmst {

namespace {

double parse_double(const std::string& raw, const char* what, int lineno) {
  const std::string value = trim(raw);
  double v = 0;
  const char* b = value.data();
  const char* e = b + value.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || value.empty()) {
    throw DataError("line " + std::to_string(lineno) + ": bad " + std::string(what) +
                    " value '" + raw + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ParsedRow {
  std::string id;
  double time;
  double outcome_time;
  int status;
  std::vector<double> values;
  int lineno;
};

}  // namespace

LongitudinalDataset::LongitudinalDataset(CovariateSchema schema,
                                         std::vector<SubjectRecord> subjects)
    : schema_(std::move(schema)), subjects_(std::move(subjects)) {
  for (std::size_t i = 0; i < subjects_.size(); ++i) {
    index_.emplace(subjects_[i].id, static_cast<int>(i));
  }
}

std::size_t LongitudinalDataset::n_rows() const {
  std::size_t n = 0;
  for (const auto& s : subjects_) n += s.visits.size();
  return n;
}

std::size_t LongitudinalDataset::n_events() const {
  std::size_t n = 0;
  for (const auto& s : subjects_) n += static_cast<std::size_t>(s.status == 1);
  return n;
}

int LongitudinalDataset::subject_index(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::vector<double> covariates_at(const SubjectRecord& record,
                                  const CovariateSchema& schema, double s) {
  if (s < 0) throw std::invalid_argument("covariates_at: s must be >= 0");
  if (record.visits.empty() || record.visits.front().time > s) {
    throw std::invalid_argument("covariates_at: no visit at or before s for subject '" +
                                record.id + "'");
  }
  const int ncols = schema.n_design_columns();
  std::vector<double> out(static_cast<std::size_t>(ncols),
                          std::numeric_limits<double>::quiet_NaN());
  // Walk visits from the latest at or before s; per column, keep the most
  // recent non-missing value.
  int remaining = ncols;
  for (auto it = record.visits.rbegin(); it != record.visits.rend() && remaining > 0;
       ++it) {
    if (it->time > s) continue;
    for (int c = 0; c < ncols; ++c) {
      const auto uc = static_cast<std::size_t>(c);
      if (std::isnan(out[uc]) && !std::isnan(it->values[uc])) {
        out[uc] = it->values[uc];
        --remaining;
      }
    }
  }
  return out;
}

std::vector<double> LongitudinalDataset::covariates_at(int subject_index,
                                                       double s) const {
  const auto& rec = subjects_.at(static_cast<std::size_t>(subject_index));
  return drmst::covariates_at(rec, schema_, s);
}

std::vector<double> LongitudinalDataset::covariates_at(std::string_view id,
                                                       double s) const {
  const int idx = subject_index(id);
  if (idx < 0) {
    throw std::invalid_argument("covariates_at: unknown subject '" + std::string(id) +
                                "'");
  }
  return covariates_at(idx, s);
}

std::vector<double> LongitudinalDataset::outcome_times() const {
  std::vector<double> out;
  out.reserve(subjects_.size());
  for (const auto& s : subjects_) out.push_back(s.outcome_time);
  return out;
}

std::vector<int> LongitudinalDataset::statuses() const {
  std::vector<int> out;
  out.reserve(subjects_.size());
  for (const auto& s : subjects_) out.push_back(s.status);
  return out;
}

LongitudinalDataset LongitudinalDataset::subset(
    const std::vector<int>& subject_indices) const {
  std::vector<SubjectRecord> selected;
  selected.reserve(subject_indices.size());
  for (int idx : subject_indices) {
    selected.push_back(subjects_.at(static_cast<std::size_t>(idx)));
  }
  return LongitudinalDataset(schema_, std::move(selected));
}

namespace {

std::vector<ParsedRow> parse_rows(const CsvTable& table, const CovariateSchema& schema,
                                  bool require_outcome) {
  const int id_col = table.column(schema.id_column);
  const int time_col = table.column(schema.time_column);
  const int outcome_col = table.column(schema.outcome_time_column);
  const int status_col = table.column(schema.status_column);
  if (id_col < 0) throw DataError("missing id column '" + schema.id_column + "'");
  if (time_col < 0) throw DataError("missing time column '" + schema.time_column + "'");
  if (require_outcome) {
    if (outcome_col < 0) {
      throw DataError("missing outcome time column '" + schema.outcome_time_column +
                      "'");
    }
    if (status_col < 0) {
      throw DataError("missing status column '" + schema.status_column + "'");
    }
  }
  std::vector<int> cov_cols;
  for (const auto& cov : schema.covariates) {
    const int c = table.column(cov.name);
    if (c < 0) throw DataError("missing covariate column '" + cov.name + "'");
    cov_cols.push_back(c);
  }

  const bool has_outcome = outcome_col >= 0 && status_col >= 0;
  const int ncols = schema.n_design_columns();
  std::vector<ParsedRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& fields = table.rows[r];
    const int lineno = table.row_lines[r];
    ParsedRow row;
    row.lineno = lineno;
    row.id = trim(fields[static_cast<std::size_t>(id_col)]);
    if (row.id.empty()) {
      throw DataError("line " + std::to_string(lineno) + ": empty subject id");
    }
    row.time = parse_double(fields[static_cast<std::size_t>(time_col)], "visit time",
                            lineno);
    if (row.time < 0) {
      throw DataError("line " + std::to_string(lineno) + ": negative visit time");
    }
    if (has_outcome) {
      row.outcome_time = parse_double(fields[static_cast<std::size_t>(outcome_col)],
                                      "outcome time", lineno);
      const std::string st = trim(fields[static_cast<std::size_t>(status_col)]);
      if (st == "0") row.status = 0;
      else if (st == "1") row.status = 1;
      else
        throw DataError("line " + std::to_string(lineno) + ": status must be 0 or 1, got '" +
                        st + "'");
      if (!(row.outcome_time > 0)) {
        throw DataError("line " + std::to_string(lineno) +
                        ": outcome time must be positive");
      }
      if (row.time > row.outcome_time) {
        throw DataError("line " + std::to_string(lineno) + ": subject '" + row.id +
                        "' has a visit after its outcome time");
      }
    } else {
      row.outcome_time = std::numeric_limits<double>::quiet_NaN();
      row.status = -1;
    }
    row.values.resize(static_cast<std::size_t>(ncols));
    int offset = 0;
    for (std::size_t c = 0; c < schema.covariates.size(); ++c) {
      const auto& cov = schema.covariates[c];
      cov.encode(fields[static_cast<std::size_t>(cov_cols[c])], row.values.data() + offset,
                 lineno);
      offset += cov.n_columns();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SubjectRecord> group_rows(std::vector<ParsedRow>& rows,
                                      const CovariateSchema& schema,
                                      bool require_outcome) {
  std::vector<SubjectRecord> subjects;
  std::map<std::string, std::size_t> seen;
  std::vector<int> first_line;
  for (auto& row : rows) {
    auto it = seen.find(row.id);
    if (it == seen.end()) {
      seen.emplace(row.id, subjects.size());
      SubjectRecord rec;
      rec.id = row.id;
      rec.outcome_time = row.outcome_time;
      rec.status = row.status;
      rec.visits.push_back({row.time, std::move(row.values)});
      subjects.push_back(std::move(rec));
      first_line.push_back(row.lineno);
      continue;
    }
    SubjectRecord& rec = subjects[it->second];
    if (require_outcome &&
        (rec.outcome_time != row.outcome_time || rec.status != row.status)) {
      throw DataError("line " + std::to_string(row.lineno) + ": subject '" + row.id +
                      "' has inconsistent outcome columns (first seen at line " +
                      std::to_string(first_line[it->second]) + ")");
    }
    if (!rec.visits.empty() && row.time <= rec.visits.back().time) {
      if (row.time == rec.visits.back().time) {
        throw DataError("line " + std::to_string(row.lineno) + ": duplicate visit time " +
                        format_double(row.time) + " for subject '" + row.id + "'");
      }
      throw DataError("line " + std::to_string(row.lineno) +
                      ": visit times out of order for subject '" + row.id + "'");
    }
    rec.visits.push_back({row.time, std::move(row.values)});
  }

  const auto labels = schema.design_labels();
  for (const auto& rec : subjects) {
    if (rec.visits.front().time != 0.0) {
      throw DataError("subject '" + rec.id + "' has no baseline visit at time 0");
    }
    int offset = 0;
    for (const auto& cov : schema.covariates) {
      for (int c = 0; c < cov.n_columns(); ++c) {
        const auto col = static_cast<std::size_t>(offset + c);
        if (std::isnan(rec.visits.front().values[col])) {
          throw DataError("subject '" + rec.id + "' is missing baseline value for '" +
                          labels[col] + "'");
        }
        if (!cov.time_dependent) {
          for (const auto& v : rec.visits) {
            if (!std::isnan(v.values[col]) &&
                v.values[col] != rec.visits.front().values[col]) {
              throw DataError("subject '" + rec.id + "': baseline-only covariate '" +
                              labels[col] + "' changes over time");
            }
          }
        }
      }
      offset += cov.n_columns();
    }
  }
  return subjects;
}

}  // namespace

LongitudinalDataset parse_longitudinal(std::istream& in, CovariateSchema schema) {
  CsvTable table = read_csv(in, schema.delimiter);
  auto rows = parse_rows(table, schema, true);
  if (rows.empty()) throw DataError("no data rows");
  auto subjects = group_rows(rows, schema, true);
  return LongitudinalDataset(std::move(schema), std::move(subjects));
}

LongitudinalDataset parse_longitudinal_file(const std::string& path,
                                            CovariateSchema schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  return parse_longitudinal(in, std::move(schema));
}

std::vector<SubjectRecord> parse_patient_records(std::istream& in,
                                                 const CovariateSchema& schema) {
  CsvTable table = read_csv(in, schema.delimiter);
  auto rows = parse_rows(table, schema, false);
  if (rows.empty()) throw DataError("no patient rows");
  return group_rows(rows, schema, false);
}

void LongitudinalDataset::write_csv(std::ostream& out) const {
  std::vector<std::string> header{schema_.id_column, schema_.time_column,
                                  schema_.outcome_time_column, schema_.status_column};
  for (const auto& label : schema_.design_labels()) header.push_back(label);
  write_csv_row(out, header, schema_.delimiter);
  for (const auto& rec : subjects_) {
    for (const auto& v : rec.visits) {
      std::vector<std::string> fields{rec.id, format_double(v.time),
                                      format_double(rec.outcome_time),
                                      std::to_string(rec.status)};
      for (double x : v.values) {
        fields.push_back(std::isnan(x) ? "" : format_double(x));
      }
      write_csv_row(out, fields, schema_.delimiter);
    }
  }
}

DatasetSummary summarize(const LongitudinalDataset& data,
                         const std::vector<double>& survival_times) {
  if (data.n_subjects() == 0) throw DataError("summarize: empty dataset");
  DatasetSummary s;
  s.n_subjects = data.n_subjects();
  s.n_rows = data.n_rows();
  s.n_events = data.n_events();
  std::vector<double> times = data.outcome_times();
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median_followup = (n % 2 == 1) ? sorted[n / 2]
                                   : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  s.followup_min = sorted.front();
  s.followup_max = sorted.back();
  const std::vector<int> st = data.statuses();
  const SurvivalCurve curve = kaplan_meier(times, st);
  for (double t : survival_times) {
    s.survival_at[t] = km_survival_ci(curve, t);
  }
  return s;
}

}  // namespace drmst
