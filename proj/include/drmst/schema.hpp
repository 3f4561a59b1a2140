#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drmst {

enum class CovariateKind { numeric, binary, categorical };

// Describes how one source column maps onto design columns.
//   numeric:     value / scale, one column
//   binary:      0 for the reference level, 1 for anything else, one column
//   categorical: one indicator column per non-reference level; every
//                observed level must be listed as reference or indicator
struct CovariateDescriptor {
  std::string name;
  CovariateKind kind = CovariateKind::numeric;
  std::vector<std::string> reference_levels;
  std::vector<std::string> levels;        // categorical indicator levels (raw)
  std::vector<std::string> level_labels;  // display labels, parallel to levels
  double scale = 1.0;
  bool time_dependent = true;

  int n_columns() const {
    return kind == CovariateKind::categorical ? static_cast<int>(levels.size()) : 1;
  }
  std::vector<std::string> column_labels() const;

  // Encodes a raw cell into `out[0..n_columns)`. Empty cells become NaN
  // (missing); unknown categorical levels throw DataError.
  void encode(const std::string& raw, double* out, int source_line) const;
};

struct CovariateSchema {
  std::string id_column = "id";
  std::string time_column = "time";
  std::string outcome_time_column = "outcome_time";
  std::string status_column = "status";
  char delimiter = ',';
  std::vector<CovariateDescriptor> covariates;

  int n_design_columns() const;
  // Encoded-column labels, in declaration order; this order defines the
  // covariate block layout used everywhere downstream.
  std::vector<std::string> design_labels() const;
  int design_label_index(const std::string& label) const;  // -1 if absent
};

CovariateSchema load_schema(std::istream& in);
CovariateSchema load_schema_file(const std::string& path);

}  // namespace drmst
