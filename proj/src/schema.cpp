#include "drmst/schema.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "drmst/csv.hpp"
#include "drmst/errors.hpp"

namespace drmst {

std::vector<std::string> CovariateDescriptor::column_labels() const {
  if (kind != CovariateKind::categorical) return {name};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string& label = i < level_labels.size() ? level_labels[i] : levels[i];
    out.push_back(name + ":" + label);
  }
  return out;
}

void CovariateDescriptor::encode(const std::string& raw, double* out,
                                 int source_line) const {
  const std::string value = trim(raw);
  const int nc = n_columns();
  if (value.empty()) {
    for (int i = 0; i < nc; ++i) out[i] = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  switch (kind) {
    case CovariateKind::numeric: {
      double v = 0;
      const char* b = value.data();
      const char* e = b + value.size();
      auto [p, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || p != e) {
        throw DataError("line " + std::to_string(source_line) + ": covariate '" +
                        name + "' has non-numeric value '" + value + "'");
      }
      out[0] = v / scale;
      return;
    }
    case CovariateKind::binary: {
      out[0] = (value == reference_levels.front()) ? 0.0 : 1.0;
      return;
    }
    case CovariateKind::categorical: {
      for (const auto& ref : reference_levels) {
        if (value == ref) {
          for (int i = 0; i < nc; ++i) out[i] = 0.0;
          return;
        }
      }
      for (int i = 0; i < nc; ++i) {
        if (value == levels[static_cast<std::size_t>(i)]) {
          for (int j = 0; j < nc; ++j) out[j] = (i == j) ? 1.0 : 0.0;
          return;
        }
      }
      throw DataError("line " + std::to_string(source_line) +
                      ": unknown categorical level '" + value + "' for covariate '" +
                      name + "'");
    }
  }
  throw DataError("unreachable covariate kind");
}

int CovariateSchema::n_design_columns() const {
  int n = 0;
  for (const auto& c : covariates) n += c.n_columns();
  return n;
}

std::vector<std::string> CovariateSchema::design_labels() const {
  std::vector<std::string> out;
  for (const auto& c : covariates) {
    for (auto& label : c.column_labels()) out.push_back(label);
  }
  return out;
}

int CovariateSchema::design_label_index(const std::string& label) const {
  const auto labels = design_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

namespace {

void finish_covariate(CovariateSchema& schema, CovariateDescriptor& cov, int lineno) {
  if (cov.name.empty()) {
    throw ConfigError("schema line " + std::to_string(lineno) +
                      ": covariate block without a name");
  }
  if (cov.name.find_first_of(" \t") != std::string::npos) {
    throw ConfigError("schema: covariate name '" + cov.name +
                      "' must not contain whitespace");
  }
  if (cov.scale <= 0) {
    throw ConfigError("schema: covariate '" + cov.name + "' has non-positive scale");
  }
  if (cov.kind == CovariateKind::binary && cov.reference_levels.size() != 1) {
    throw ConfigError("schema: binary covariate '" + cov.name +
                      "' needs exactly one reference level");
  }
  if (cov.kind == CovariateKind::categorical) {
    if (cov.reference_levels.empty() || cov.levels.empty()) {
      throw ConfigError("schema: categorical covariate '" + cov.name +
                        "' needs reference and levels entries");
    }
    if (!cov.level_labels.empty() && cov.level_labels.size() != cov.levels.size()) {
      throw ConfigError("schema: covariate '" + cov.name +
                        "' has labels not matching its levels");
    }
  }
  for (const auto& existing : schema.covariates) {
    if (existing.name == cov.name) {
      throw ConfigError("schema: duplicate covariate '" + cov.name + "'");
    }
  }
  schema.covariates.push_back(cov);
  cov = CovariateDescriptor{};
}

}  // namespace

CovariateSchema load_schema(std::istream& in) {
  CovariateSchema schema;
  CovariateDescriptor cov;
  bool in_covariate = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text == "[covariate]") {
      if (in_covariate) finish_covariate(schema, cov, lineno);
      in_covariate = true;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("schema line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!in_covariate) {
      if (key == "id_column") schema.id_column = value;
      else if (key == "time_column") schema.time_column = value;
      else if (key == "outcome_time_column") schema.outcome_time_column = value;
      else if (key == "status_column") schema.status_column = value;
      else if (key == "delimiter") {
        if (value.size() != 1) {
          throw ConfigError("schema: delimiter must be a single character");
        }
        schema.delimiter = value[0];
      } else {
        throw ConfigError("schema line " + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
      }
      continue;
    }
    if (key == "name") cov.name = value;
    else if (key == "kind") {
      if (value == "numeric") cov.kind = CovariateKind::numeric;
      else if (value == "binary") cov.kind = CovariateKind::binary;
      else if (value == "categorical") cov.kind = CovariateKind::categorical;
      else throw ConfigError("schema line " + std::to_string(lineno) +
                             ": unknown kind '" + value + "'");
    } else if (key == "reference") cov.reference_levels = split_list(value);
    else if (key == "levels") cov.levels = split_list(value);
    else if (key == "labels") cov.level_labels = split_list(value);
    else if (key == "scale") {
      try {
        cov.scale = std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError("schema line " + std::to_string(lineno) +
                          ": bad scale '" + value + "'");
      }
    } else if (key == "time_dependent") {
      if (value == "yes" || value == "on" || value == "true") cov.time_dependent = true;
      else if (value == "no" || value == "off" || value == "false")
        cov.time_dependent = false;
      else throw ConfigError("schema line " + std::to_string(lineno) +
                             ": time_dependent must be yes or no");
    } else {
      throw ConfigError("schema line " + std::to_string(lineno) +
                        ": unknown covariate key '" + key + "'");
    }
  }
  if (in_covariate) finish_covariate(schema, cov, lineno);
  if (schema.covariates.empty()) {
    throw ConfigError("schema: no covariates declared");
  }
  return schema;
}

CovariateSchema load_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schema file '" + path + "'");
  return load_schema(in);
}

}  // namespace drmst
