#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "l1sieve/experiments.hpp"

namespace l1sieve {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct Metadata {
  std::string tool_version = kToolVersion;
  std::string command;
  std::map<std::string, double> tolerances;
  std::vector<std::uint64_t> seeds;
  std::string timestamp;  // empty when timing is disabled
  unsigned workers = 1;

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct OutputRecord {
  int schema_version = kSchemaVersion;
  Metadata metadata;
  std::vector<ExperimentRow> rows;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

void to_json(nlohmann::json& j, const Metric& m);
void from_json(const nlohmann::json& j, Metric& m);
void to_json(nlohmann::json& j, const ExperimentRow& row);
void from_json(const nlohmann::json& j, ExperimentRow& row);
void to_json(nlohmann::json& j, const Metadata& meta);
void from_json(const nlohmann::json& j, Metadata& meta);
void to_json(nlohmann::json& j, const OutputRecord& record);
void from_json(const nlohmann::json& j, OutputRecord& record);

// One CSV line per (row, metric); a row without metrics still gets a line.
// Floats use 12 significant digits.
void write_csv(std::ostream& out, const OutputRecord& record);
void write_json(std::ostream& out, const OutputRecord& record);

std::string format_float(double value);

// Suite configuration file:
//
//   # comment
//   key = value            global settings (rel_tol, floor, seed, workers, ...)
//   [experiment]           starts a block; repeated once per experiment
//   name = kernel_gap
//   n = 1024 4096          N-ladder, space or comma separated
//   kinds = gstar h        anything else becomes an experiment parameter
//
// Throws ParameterError with the offending line number on malformed input.
SuiteConfig parse_suite_config(std::istream& in);
SuiteConfig load_suite_config(const std::string& path);

}  // namespace l1sieve
