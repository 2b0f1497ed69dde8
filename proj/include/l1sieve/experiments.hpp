#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "l1sieve/arith.hpp"
#include "l1sieve/config.hpp"
#include "l1sieve/expsum.hpp"
#include "l1sieve/largesieve.hpp"
#include "l1sieve/quadrature.hpp"

namespace l1sieve {

// One measured quantity. `check` is set when the metric carries a pass
// criterion; `analytic` marks criteria that hold at every scale, so a
// failure there is a bug rather than a finite-N effect.
struct Metric {
  std::string name;
  double value = 0.0;
  std::optional<double> reference;
  std::optional<double> ratio;
  std::optional<bool> check;
  bool analytic = false;

  friend bool operator==(const Metric&, const Metric&) = default;
};

struct ExperimentRow {
  std::string experiment;
  std::string variant;
  std::optional<std::int64_t> N, P, Q, M;
  std::optional<std::uint64_t> seed;
  std::vector<Metric> metrics;
  bool pass = true;
  bool converged = true;
  double tolerance = 0.0;
  std::string note;
  double runtime_ms = 0.0;

  // Any analytic metric failed.
  bool invariant_violated() const;
  // pass = every checked metric passed and the quadrature converged.
  void finalize();
  const Metric* metric(const std::string& name) const;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ExperimentSettings {
  QuadratureOptions quadrature;
  double floor = 0.1;                // empirical floor for the >> statements
  std::uint64_t seed = 42;
  double epsilon = 0.05;             // reporting epsilon in the final V display
  double vaughan_quadrature_tol = 1e-9;
  std::int64_t vaughan_quadrature_max_n = std::int64_t{1} << 16;
  bool record_timing = true;
  Budget budget;
  Execution exec;
};

// max / min over an M-grid of (kernel - T_N) for gstar, h, h_truncated,
// against the certified large-sieve ceiling and the N^{3/4} log N or
// N^{1/2} log N growth rates.
ExperimentRow kernel_gap_scan(const ArithmeticTables& tables, std::int64_t N, std::int64_t P,
                              KernelKind kind, std::int64_t M, const ExperimentSettings& settings = {});

// L1(b) N^{3/8} (log N)^{1/2} / ||b||_2 for squarefree-supported b (mobius or
// squarefree_random). N must be even.
ExperimentRow squarefree_theorem_ratio(const ArithmeticTables& tables, const SequenceSpec& b,
                                       std::int64_t N, const ExperimentSettings& settings = {});
// Same ratio for an explicit sequence; N is its length.
ExperimentRow squarefree_theorem_ratio(const ArithmeticTables& tables, const CoefficientSequence& b,
                                       const std::string& variant, const ExperimentSettings& settings = {});

// Prime indicator, chi3 on primes, and random prime-supported coefficients.
std::vector<ExperimentRow> prime_support_experiments(const ArithmeticTables& tables, std::int64_t N,
                                                     const ExperimentSettings& settings = {});

// L1(a) N^{1/4} (log N)^{1/2} / ||a||_2 for prime-supported a.
ExperimentRow prime_support_theorem(const ArithmeticTables& tables, const CoefficientSequence& a,
                                    const std::string& variant, const ExperimentSettings& settings = {});

struct VReport {
  std::int64_t N = 0, Q = 0;
  double v_spectral = 0.0;
  std::optional<double> v_quadrature;  // absent above vaughan_quadrature_max_n
  double target = 0.0;                 // 3 Q N^2 / pi^2
  double ratio = 0.0;
  std::optional<bool> routes_agree;
  double crude_bound = 0.0;            // sum_q q * sum (N - n) Lambda(n)
};

// sum_{q<=Q} mu(q) sum_{n<=N} (N - n) Lambda(n) c_q(n) through Ramanujan sums.
double vaughan_v_spectral(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q);

// integral of (sum Lambda(n) e(n a)) K_{N,Q}(a) on a 4N-point grid.
double vaughan_v_quadrature(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q,
                            const Execution& exec = {});

VReport vaughan_V(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q,
                  const ExperimentSettings& settings = {});
ExperimentRow to_row(const VReport& report, const ExperimentSettings& settings = {});

// L1 of the von Mangoldt sum against V / (N (N + Q^2)), 3/(2 pi^2) N^{1/2}
// and ((1/2 + 1/4) N log N)^{1/2}. Q = 0 selects floor(N^{1/2}).
ExperimentRow lambda_l1_bounds(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q = 0,
                               const ExperimentSettings& settings = {});

// Large-sieve ratio over `trials` random shifts of one point set.
ExperimentRow large_sieve_experiment(const ArithmeticTables& tables, PointSetKind kind,
                                     std::int64_t parameter, const SequenceSpec& seq, std::int64_t N,
                                     int trials, const ExperimentSettings& settings = {});

// integral of kernel(alpha - beta) M_N(beta) d beta at random alpha: gstar against
// squarefree-supported b, or h_truncated against prime-supported a.
ExperimentRow convolution_annihilation(const ArithmeticTables& tables, KernelKind kind, std::int64_t N,
                                       const ExperimentSettings& settings = {});

// Sieve-only checks: pi(N) > N / log N on [17, N], sum (N - n) Lambda(n) / (N^2/2),
// squarefree density, sum Lambda^2 / (N log N), Mertens guard.
ExperimentRow arithmetic_checks(const ArithmeticTables& tables, std::int64_t N,
                                const ExperimentSettings& settings = {});

struct ExperimentEntry {
  std::string name;
  std::vector<std::int64_t> n_values;
  std::map<std::string, std::string> params;

  friend bool operator==(const ExperimentEntry&, const ExperimentEntry&) = default;
};

struct SuiteConfig {
  ExperimentSettings settings;
  std::vector<ExperimentEntry> experiments;
};

// All experiments over N in {2^10, 2^12, 2^14, 2^16}; sieve-only rows up to 2^20.
SuiteConfig default_suite_config();

// Largest table size needed by the configuration.
std::int64_t required_table_size(const SuiteConfig& config);

// Rows in configuration order, followed by monotone-trend rows across each
// N-ladder. A failing experiment is recorded as a failed row.
std::vector<ExperimentRow> run_suite(const ArithmeticTables& tables, const SuiteConfig& config);

}  // namespace l1sieve
