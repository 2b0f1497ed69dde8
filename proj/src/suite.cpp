#include <algorithm>
#include <cctype>
#include <chrono>
#include <limits>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "l1sieve/errors.hpp"
#include "l1sieve/experiments.hpp"

namespace l1sieve {

namespace {

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string word;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!word.empty()) out.push_back(std::move(word));
      word.clear();
    } else {
      word.push_back(c);
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

std::string param(const ExperimentEntry& e, const std::string& key, const std::string& fallback) {
  const auto it = e.params.find(key);
  return it == e.params.end() ? fallback : it->second;
}

std::optional<std::int64_t> int_param(const ExperimentEntry& e, const std::string& key) {
  const auto it = e.params.find(key);
  if (it == e.params.end()) return std::nullopt;
  return std::stoll(it->second);
}

ExperimentRow failed_row(const ExperimentEntry& e, std::optional<std::int64_t> N, const std::string& why) {
  ExperimentRow row;
  row.experiment = e.name;
  row.variant = "error";
  row.N = N;
  row.pass = false;
  row.note = why;
  return row;
}

void run_entry(const ArithmeticTables& tables, const ExperimentEntry& e, std::int64_t N,
               const ExperimentSettings& s, std::vector<ExperimentRow>& rows) {
  if (e.name == "arith_checks") {
    rows.push_back(arithmetic_checks(tables, N, s));
  } else if (e.name == "kernel_gap") {
    const auto factor = int_param(e, "m_factor").value_or(8);
    for (const auto& name : split_words(param(e, "kinds", "gstar h h_truncated"))) {
      const auto kind = parse_kernel_kind(name);
      if (!kind) throw ParameterError("unknown kernel kind '" + name + "'");
      const auto spec = make_kernel_spec(*kind, N, int_param(e, "p"));
      rows.push_back(kernel_gap_scan(tables, N, spec.P, *kind, factor * N, s));
    }
  } else if (e.name == "squarefree_theorem") {
    const auto seed = static_cast<std::uint64_t>(int_param(e, "seed").value_or(static_cast<std::int64_t>(s.seed)));
    for (const auto& name : split_words(param(e, "kinds", "mobius squarefree_random"))) {
      const auto kind = parse_sequence_kind(name);
      if (!kind) throw ParameterError("unknown sequence kind '" + name + "'");
      rows.push_back(squarefree_theorem_ratio(tables, {*kind, seed}, N, s));
    }
  } else if (e.name == "prime_support") {
    for (auto& row : prime_support_experiments(tables, N, s)) rows.push_back(std::move(row));
  } else if (e.name == "vaughan") {
    const auto Q = int_param(e, "q").value_or(integer_root(N, 2));
    const auto start = std::chrono::steady_clock::now();
    auto row = to_row(vaughan_V(tables, N, Q, s), s);
    if (s.record_timing)
      row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  } else if (e.name == "lambda_l1") {
    rows.push_back(lambda_l1_bounds(tables, N, int_param(e, "q").value_or(0), s));
  } else if (e.name == "large_sieve") {
    const auto kind = parse_point_set_kind(param(e, "point_set", "reduced_farey"));
    const auto seq = parse_sequence_kind(param(e, "sequence", "mobius"));
    if (!kind || !seq) throw ParameterError("large_sieve: unknown point_set or sequence");
    const auto parameter = int_param(e, "param").value_or(integer_root(N, 2));
    const auto seed = static_cast<std::uint64_t>(int_param(e, "seed").value_or(static_cast<std::int64_t>(s.seed)));
    const auto trials = static_cast<int>(int_param(e, "trials").value_or(10));
    rows.push_back(large_sieve_experiment(tables, *kind, parameter, {*seq, seed}, N, trials, s));
  } else if (e.name == "annihilation") {
    for (const auto& name : split_words(param(e, "kinds", "gstar h_truncated"))) {
      const auto kind = parse_kernel_kind(name);
      if (!kind) throw ParameterError("unknown kernel kind '" + name + "'");
      rows.push_back(convolution_annihilation(tables, *kind, N, s));
    }
  } else {
    throw ParameterError("unknown experiment '" + e.name + "'");
  }
}

// Non-decreasing in N for each (experiment, variant) series of `metric`.
void monotone_trend(const std::vector<ExperimentRow>& rows, const std::string& experiment,
                    const std::string& metric, std::vector<ExperimentRow>& out) {
  std::map<std::string, std::vector<std::pair<std::int64_t, double>>> series;
  for (const auto& row : rows) {
    if (row.experiment != experiment || !row.N) continue;
    if (const auto* m = row.metric(metric)) series[row.variant].push_back({*row.N, m->value});
  }
  for (auto& [variant, points] : series) {
    if (points.size() < 2) continue;
    std::sort(points.begin(), points.end());
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      min_step = std::min(min_step, points[i + 1].second - points[i].second);
    ExperimentRow row;
    row.experiment = "trend";
    row.variant = experiment + "/" + variant + "/" + metric;
    row.N = points.back().first;
    row.metrics.push_back(Metric{"min_step", min_step, 0.0, std::nullopt, min_step >= 0.0, false});
    row.note = "non-decreasing across N-ladder";
    row.finalize();
    out.push_back(std::move(row));
  }
}

// |v_over_target - 1| at the largest N must be below the value at the smallest N.
void vaughan_trend(const std::vector<ExperimentRow>& rows, std::vector<ExperimentRow>& out) {
  std::vector<std::pair<std::int64_t, double>> points;
  for (const auto& row : rows)
    if (row.experiment == "vaughan" && row.N)
      if (const auto* m = row.metric("v_over_target")) points.push_back({*row.N, std::abs(m->value - 1.0)});
  if (points.size() < 2) return;
  std::sort(points.begin(), points.end());
  ExperimentRow row;
  row.experiment = "trend";
  row.variant = "vaughan/mangoldt/v_over_target";
  row.N = points.back().first;
  const double improvement = points.front().second - points.back().second;
  row.metrics.push_back(Metric{"distance_to_one_improvement", improvement, 0.0, std::nullopt, improvement > 0.0, false});
  row.note = "distance to 1 shrinks from smallest to largest N";
  row.finalize();
  out.push_back(std::move(row));
}

}  // namespace

SuiteConfig default_suite_config() {
  SuiteConfig config;
  const std::vector<std::int64_t> ladder{1 << 10, 1 << 12, 1 << 14, 1 << 16};
  config.experiments = {
      {"arith_checks", {1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18, 1 << 20}, {}},
      {"kernel_gap", ladder, {}},
      {"squarefree_theorem", ladder, {}},
      {"prime_support", ladder, {}},
      {"vaughan", ladder, {}},
      {"lambda_l1", ladder, {}},
      {"large_sieve", {512}, {{"point_set", "reduced_farey"}, {"param", "100"}}},
      {"large_sieve", {512}, {{"point_set", "prime_farey"}, {"param", "100"}}},
      {"large_sieve", {64}, {{"point_set", "prime_square_farey"}, {"param", "30"}}},
      {"annihilation", {256, 1024}, {}},
  };
  return config;
}

std::int64_t required_table_size(const SuiteConfig& config) {
  std::int64_t need = 2;
  for (const auto& e : config.experiments) {
    for (const auto n : e.n_values) need = std::max(need, n);
    for (const char* key : {"p", "q", "param"})
      if (const auto v = int_param(e, key)) need = std::max(need, *v);
  }
  return need;
}

std::vector<ExperimentRow> run_suite(const ArithmeticTables& tables, const SuiteConfig& config) {
  std::vector<ExperimentRow> rows;
  for (const auto& entry : config.experiments) {
    for (const auto N : entry.n_values) {
      try {
        run_entry(tables, entry, N, config.settings, rows);
      } catch (const InvariantViolation& ex) {
        auto row = failed_row(entry, N, ex.what());
        row.metrics.push_back(Metric{"invariant", 0.0, std::nullopt, std::nullopt, false, true});
        rows.push_back(std::move(row));
      } catch (const std::exception& ex) {
        rows.push_back(failed_row(entry, N, ex.what()));
      }
    }
  }
  std::vector<ExperimentRow> trends;
  monotone_trend(rows, "squarefree_theorem", "theorem_ratio", trends);
  monotone_trend(rows, "squarefree_theorem", "mobius_ratio", trends);
  vaughan_trend(rows, trends);
  for (auto& t : trends) rows.push_back(std::move(t));
  return rows;
}

}  // namespace l1sieve
