#include "l1sieve/record.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "l1sieve/errors.hpp"

namespace l1sieve {

namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string csv_int(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string{};
}

std::string csv_float(const std::optional<double>& v) { return v ? format_float(*v) : std::string{}; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void to_json(nlohmann::json& j, const Metric& m) {
  j = nlohmann::json{{"name", m.name},
                     {"value", m.value},
                     {"reference", optional_json(m.reference)},
                     {"ratio", optional_json(m.ratio)},
                     {"check", optional_json(m.check)},
                     {"analytic", m.analytic}};
}

void from_json(const nlohmann::json& j, Metric& m) {
  m.name = j.at("name").get<std::string>();
  m.value = j.at("value").get<double>();
  m.reference = optional_from<double>(j, "reference");
  m.ratio = optional_from<double>(j, "ratio");
  m.check = optional_from<bool>(j, "check");
  m.analytic = j.at("analytic").get<bool>();
}

void to_json(nlohmann::json& j, const ExperimentRow& row) {
  j = nlohmann::json{{"experiment", row.experiment},
                     {"variant", row.variant},
                     {"N", optional_json(row.N)},
                     {"P", optional_json(row.P)},
                     {"Q", optional_json(row.Q)},
                     {"M", optional_json(row.M)},
                     {"seed", optional_json(row.seed)},
                     {"metrics", row.metrics},
                     {"pass", row.pass},
                     {"converged", row.converged},
                     {"tolerance", row.tolerance},
                     {"note", row.note},
                     {"runtime_ms", row.runtime_ms}};
}

void from_json(const nlohmann::json& j, ExperimentRow& row) {
  row.experiment = j.at("experiment").get<std::string>();
  row.variant = j.at("variant").get<std::string>();
  row.N = optional_from<std::int64_t>(j, "N");
  row.P = optional_from<std::int64_t>(j, "P");
  row.Q = optional_from<std::int64_t>(j, "Q");
  row.M = optional_from<std::int64_t>(j, "M");
  row.seed = optional_from<std::uint64_t>(j, "seed");
  row.metrics = j.at("metrics").get<std::vector<Metric>>();
  row.pass = j.at("pass").get<bool>();
  row.converged = j.at("converged").get<bool>();
  row.tolerance = j.at("tolerance").get<double>();
  row.note = j.at("note").get<std::string>();
  row.runtime_ms = j.at("runtime_ms").get<double>();
}

void to_json(nlohmann::json& j, const Metadata& meta) {
  j = nlohmann::json{{"tool_version", meta.tool_version}, {"command", meta.command},
                     {"tolerances", meta.tolerances},     {"seeds", meta.seeds},
                     {"timestamp", meta.timestamp},       {"workers", meta.workers}};
}

void from_json(const nlohmann::json& j, Metadata& meta) {
  meta.tool_version = j.at("tool_version").get<std::string>();
  meta.command = j.at("command").get<std::string>();
  meta.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  meta.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  meta.timestamp = j.at("timestamp").get<std::string>();
  meta.workers = j.at("workers").get<unsigned>();
}

void to_json(nlohmann::json& j, const OutputRecord& record) {
  j = nlohmann::json{{"schema_version", record.schema_version},
                     {"metadata", record.metadata},
                     {"rows", record.rows}};
}

void from_json(const nlohmann::json& j, OutputRecord& record) {
  record.schema_version = j.at("schema_version").get<int>();
  record.metadata = j.at("metadata").get<Metadata>();
  record.rows = j.at("rows").get<std::vector<ExperimentRow>>();
}

void write_csv(std::ostream& out, const OutputRecord& record) {
  out << "experiment,variant,N,P,Q,M,seed,pass,converged,tolerance,runtime_ms,note,"
         "metric,value,reference,ratio,check,analytic\n";
  for (const auto& row : record.rows) {
    const std::string prefix = csv_escape(row.experiment) + "," + csv_escape(row.variant) + "," + csv_int(row.N) +
                               "," + csv_int(row.P) + "," + csv_int(row.Q) + "," + csv_int(row.M) + "," +
                               csv_int(row.seed) + "," + (row.pass ? "1" : "0") + "," +
                               (row.converged ? "1" : "0") + "," + format_float(row.tolerance) + "," +
                               format_float(row.runtime_ms) + "," + csv_escape(row.note) + ",";
    if (row.metrics.empty()) {
      out << prefix << ",,,,,\n";
      continue;
    }
    for (const auto& m : row.metrics) {
      out << prefix << csv_escape(m.name) << "," << format_float(m.value) << "," << csv_float(m.reference) << ","
          << csv_float(m.ratio) << "," << (m.check ? (*m.check ? "pass" : "fail") : "") << ","
          << (m.analytic ? "1" : "0") << "\n";
    }
  }
}

void write_json(std::ostream& out, const OutputRecord& record) {
  out << nlohmann::json(record).dump(2) << "\n";
}

SuiteConfig parse_suite_config(std::istream& in) {
  SuiteConfig config;
  ExperimentEntry* current = nullptr;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ParameterError("config line " + std::to_string(line_no) + ": " + why);
  };
  auto parse_double = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) fail("trailing characters in '" + v + "'");
      return d;
    } catch (const std::logic_error&) {
      fail("expected a number, got '" + v + "'");
    }
    return 0.0;
  };
  auto parse_int = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const long long i = std::stoll(v, &used);
      if (used != v.size()) fail("expected an integer, got '" + v + "'");
      return static_cast<std::int64_t>(i);
    } catch (const std::logic_error&) {
      fail("expected an integer, got '" + v + "'");
    }
    return std::int64_t{0};
  };

  auto& s = config.settings;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[experiment]") {
      config.experiments.emplace_back();
      current = &config.experiments.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail("empty key or value");

    if (current) {
      if (key == "name") {
        current->name = value;
      } else if (key == "n") {
        std::string words = value;
        for (char& c : words)
          if (c == ',') c = ' ';
        std::istringstream list(words);
        std::string w;
        while (list >> w) current->n_values.push_back(parse_int(w));
      } else {
        current->params[key] = value;
      }
      continue;
    }
    if (key == "rel_tol") s.quadrature.rel_tol = parse_double(value);
    else if (key == "oversample") s.quadrature.oversample_start = parse_int(value);
    else if (key == "oversample_cap") s.quadrature.oversample_cap = parse_int(value);
    else if (key == "floor") s.floor = parse_double(value);
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_int(value));
    else if (key == "epsilon") s.epsilon = parse_double(value);
    else if (key == "workers") s.exec.workers = static_cast<unsigned>(parse_int(value));
    else if (key == "vaughan_quadrature_tol") s.vaughan_quadrature_tol = parse_double(value);
    else if (key == "vaughan_quadrature_max_n") s.vaughan_quadrature_max_n = parse_int(value);
    else fail("unknown setting '" + key + "'");
  }
  for (const auto& e : config.experiments) {
    if (e.name.empty()) throw ParameterError("config: experiment block without a name");
    if (e.n_values.empty()) throw ParameterError("config: experiment '" + e.name + "' has no n values");
  }
  return config;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  return parse_suite_config(in);
}

}  // namespace l1sieve
