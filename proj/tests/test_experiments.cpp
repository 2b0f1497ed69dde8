#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "l1sieve/arith.hpp"
#include "l1sieve/errors.hpp"
#include "l1sieve/experiments.hpp"
#include "l1sieve/largesieve.hpp"
#include "l1sieve/record.hpp"

using namespace l1sieve;

namespace {

const ArithmeticTables& tables() {
  static const ArithmeticTables t = build_tables(20000);
  return t;
}

double value(const ExperimentRow& row, const std::string& name) {
  const auto* m = row.metric(name);
  REQUIRE(m != nullptr);
  return m->value;
}

bool check(const ExperimentRow& row, const std::string& name) {
  const auto* m = row.metric(name);
  REQUIRE(m != nullptr);
  REQUIRE(m->check.has_value());
  return *m->check;
}

// V from its defining double sum with the trigonometric Ramanujan sum.
double v_oracle(const ArithmeticTables& t, std::int64_t N, std::int64_t Q) {
  long double acc = 0;
  for (std::int64_t q = 1; q <= Q; ++q) {
    if (t.mobius(q) == 0) continue;
    for (std::int64_t n = 1; n <= N; ++n)
      if (t.mangoldt(n) != 0.0)
        acc += t.mobius(q) * (N - n) * t.mangoldt(n) * ramanujan_sum_direct(q, -n);
  }
  return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("kernel_gap_scan: gstar stays under the certified ceiling") {
  const auto& t = tables();
  const auto row = kernel_gap_scan(t, 4096, 8, KernelKind::gstar, 32768);
  CHECK(row.pass);
  CHECK(value(row, "max_gap") <= sieve_bound_for_kernel_gap(t, 4096, 8, KernelKind::gstar));
  CHECK(value(row, "min_gap") >= -1e-8 * 4096);
  CHECK(row.M == 32768);
}

TEST_CASE("kernel_gap_scan: h is nonnegative against T_N") {
  const auto row = kernel_gap_scan(tables(), 4096, 64, KernelKind::h, 32768);
  CHECK(row.pass);
  CHECK(value(row, "min_gap") >= -1e-8 * 4096);
  CHECK(value(row, "max_gap") <= sieve_bound_for_kernel_gap(tables(), 4096, 64, KernelKind::h));
}

TEST_CASE("kernel_gap_scan: truncation changes H by at most 3P") {
  const auto& t = tables();
  for (std::int64_t N : {256, 1024, 4096}) {
    const std::int64_t P = integer_root(N, 2);
    const auto row = kernel_gap_scan(t, N, P, KernelKind::h_truncated, 8 * N);
    CHECK(row.pass);
    CHECK(value(row, "truncation_diff") <= 3.0 * double(P) * (1 + 1e-9));
    // Independent view: the two grids differ by exactly that much.
    const auto h = grid_eval_kernel(t, make_kernel_spec(KernelKind::h, N, P), 8 * N);
    const auto ht = grid_eval_kernel(t, make_kernel_spec(KernelKind::h_truncated, N, P), 8 * N);
    CHECK((h.values - ht.values).cwiseAbs().maxCoeff() == doctest::Approx(value(row, "truncation_diff")).epsilon(1e-9));
  }
}

TEST_CASE("kernel_gap_scan: nonnegativity across N and P") {
  const auto& t = tables();
  for (std::int64_t N : {64, 300, 1024, 2048}) {
    for (std::int64_t P : {2, 3, 5}) {
      const auto g = kernel_gap_scan(t, N, P, KernelKind::gstar, 4 * N);
      REQUIRE(g.pass);
      const auto h = kernel_gap_scan(t, N, P * P, KernelKind::h, 4 * N);
      REQUIRE(h.pass);
    }
  }
}

TEST_CASE("kernel_gap_scan: grid too coarse is reported") {
  const auto row = kernel_gap_scan(tables(), 1024, 5, KernelKind::gstar, 2048);
  CHECK(row.note.find("M < 4N") != std::string::npos);
}

TEST_CASE("squarefree_theorem_ratio examples") {
  const auto& t = tables();
  const auto mu = squarefree_theorem_ratio(t, {SequenceKind::mobius, 0}, 1024);
  CHECK(mu.pass);
  const double N = 1024;
  CHECK(value(mu, "l1") >= std::pow(N, 0.125) / std::sqrt(std::log(N)) * 0.1);
  CHECK(value(mu, "mobius_ratio") == doctest::Approx(value(mu, "l1") * std::sqrt(std::log(N)) / std::pow(N, 0.125)));

  CoefficientSequence b1{Eigen::VectorXcd::Zero(1024), Support::squarefree};
  b1.coeffs(0) = 1.0;
  const auto single = squarefree_theorem_ratio(t, b1, "single");
  CHECK(value(single, "l1") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(value(single, "theorem_ratio") == doctest::Approx(std::pow(N, 0.375) * std::sqrt(std::log(N))).epsilon(1e-9));

  const auto rnd = squarefree_theorem_ratio(t, {SequenceKind::squarefree_random, 42}, 512);
  CHECK(check(rnd, "autocorrelation"));
  CHECK(rnd.seed == 42u);

  CHECK_THROWS_AS(squarefree_theorem_ratio(t, {SequenceKind::mobius, 0}, 1023), ParameterError);
  CHECK_THROWS_AS(squarefree_theorem_ratio(t, {SequenceKind::ones, 0}, 1024), ParameterError);
  CoefficientSequence bad{Eigen::VectorXcd::Zero(16), Support::squarefree};
  bad.coeffs(3) = 1.0;  // n = 4
  CHECK_THROWS_AS(squarefree_theorem_ratio(t, bad, "bad"), ParameterError);
}

TEST_CASE("prime_support_experiments examples") {
  const auto& t = tables();
  const auto rows = prime_support_experiments(t, 4096);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) CHECK(row.pass);
  const double N = 4096;
  CHECK(value(rows[0], "l1") >= 0.1 * std::sqrt(N) / std::pow(std::log(N), 2));
  double chi_sum = 0;
  for (std::int64_t p = 2; p <= 4096; ++p)
    if (t.is_prime(p)) chi_sum += chi3(p);
  CHECK(value(rows[1], "partial_sum_at_zero") == chi_sum);
  CHECK(rows[2].metric("prime_support_ratio") != nullptr);

  CoefficientSequence a{Eigen::VectorXcd::Zero(4096), Support::primes};
  a.coeffs(4093 - 1) = std::complex<double>(0.6, 0.8);
  const auto single = prime_support_theorem(t, a, "single");
  CHECK(value(single, "prime_support_ratio") == doctest::Approx(std::pow(N, 0.25) * std::sqrt(std::log(N))).epsilon(1e-9));
}

TEST_CASE("vaughan_V examples") {
  const auto& t = tables();
  const auto small = vaughan_V(t, 16, 1);
  double direct = 0;
  for (std::int64_t n = 1; n <= 16; ++n) direct += double(16 - n) * t.mangoldt(n);
  CHECK(small.v_spectral == doctest::Approx(direct).epsilon(1e-12));
  REQUIRE(small.v_quadrature.has_value());
  CHECK(*small.v_quadrature == doctest::Approx(direct).epsilon(1e-9));
  CHECK(small.routes_agree == true);

  const auto big = vaughan_V(t, 10000, 100);
  const auto ref = vaughan_V(t, 1000, integer_root(1000, 2));
  CHECK(big.ratio >= 0.7);
  CHECK(big.ratio <= 1.3);
  CHECK(std::abs(big.ratio - 1) < std::abs(ref.ratio - 1));
  CHECK(big.routes_agree == true);

  for (std::int64_t Q : {1, 5, 30}) {
    const auto r = vaughan_V(t, 900, Q);
    CHECK(std::abs(r.v_spectral) <= r.crude_bound);
  }
}

TEST_CASE("V routes agree with each other and with the direct double sum") {
  const auto& t = tables();
  for (const auto [N, Q] : {std::pair<std::int64_t, std::int64_t>{64, 3}, {100, 10}, {256, 16}, {777, 20},
                            {1024, 32}, {2000, 44}, {4096, 64}}) {
    CAPTURE(N);
    const auto r = vaughan_V(t, N, Q);
    REQUIRE(r.routes_agree == true);
    if (N <= 1024) REQUIRE(r.v_spectral == doctest::Approx(v_oracle(t, N, Q)).epsilon(1e-9));
    const auto row = to_row(r);
    REQUIRE(row.pass);
  }
}

TEST_CASE("lambda_l1_bounds examples") {
  const auto& t = tables();
  const auto row = lambda_l1_bounds(t, 4096);
  CHECK(row.pass);
  CHECK(row.Q == 64);
  const double L = value(row, "l1");
  const double V = vaughan_v_spectral(t, 4096, 64);
  CHECK(L >= V / (4096.0 * (4096.0 + 64.0 * 64.0)));
  CHECK(L / std::sqrt(4096.0) >= 0.15);
  CHECK(L <= std::sqrt(0.75 * 4096.0 * std::log(4096.0)));
}

TEST_CASE("convolution annihilation") {
  const auto& t = tables();
  for (const auto kind : {KernelKind::gstar, KernelKind::h_truncated}) {
    const auto row = convolution_annihilation(t, kind, 512);
    CHECK(row.pass);
  }
  CHECK_THROWS_AS(convolution_annihilation(t, KernelKind::fejer, 512), ParameterError);
}

TEST_CASE("large_sieve_experiment") {
  const auto& t = tables();
  const auto row = large_sieve_experiment(t, PointSetKind::reduced_farey, 30, {SequenceKind::random_complex, 1}, 200, 20);
  CHECK(row.pass);
  CHECK(value(row, "max_ratio") <= 1.0 + 1e-9);
  CHECK(value(row, "delta") == doctest::Approx(1.0 / (30.0 * 29.0)));
}

TEST_CASE("arithmetic_checks") {
  const auto row = arithmetic_checks(tables(), 16384);
  CHECK(row.pass);
  CHECK(check(row, "weighted_lambda_ratio"));
  CHECK(check(row, "rosser_schoenfeld_min"));
}

TEST_CASE("rows pass iff every check passes") {
  ExperimentRow row;
  row.metrics.push_back(Metric{"a", 1.0, 1.0, 1.0, true, true});
  row.metrics.push_back(Metric{"b", 1.0, std::nullopt, std::nullopt, std::nullopt, false});
  row.finalize();
  CHECK(row.pass);
  CHECK_FALSE(row.invariant_violated());
  row.metrics.push_back(Metric{"c", 0.0, 1.0, 0.0, false, false});
  row.finalize();
  CHECK_FALSE(row.pass);
  CHECK_FALSE(row.invariant_violated());
  row.metrics.push_back(Metric{"d", 0.0, 1.0, 0.0, false, true});
  row.finalize();
  CHECK(row.invariant_violated());
}

TEST_CASE("run_suite: empty and single-entry configs") {
  const auto& t = tables();
  SuiteConfig empty;
  empty.experiments.clear();
  CHECK(run_suite(t, empty).empty());

  SuiteConfig one;
  one.experiments.push_back({"vaughan", {1024}, {}});
  const auto rows = run_suite(t, one);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].experiment == "vaughan");
  CHECK(rows[0].pass);
}

TEST_CASE("run_suite: failures become rows") {
  SuiteConfig cfg;
  cfg.experiments.push_back({"squarefree_theorem", {1023}, {{"kinds", "mobius"}}});
  cfg.experiments.push_back({"no_such_experiment", {64}, {}});
  const auto rows = run_suite(tables(), cfg);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].pass);
  CHECK_FALSE(rows[1].pass);
}

TEST_CASE("default suite enumerates the N-ladder") {
  const auto cfg = default_suite_config();
  const std::vector<std::int64_t> ladder{1 << 10, 1 << 12, 1 << 14, 1 << 16};
  for (const char* name : {"kernel_gap", "squarefree_theorem", "prime_support", "vaughan", "lambda_l1"}) {
    const auto it = std::find_if(cfg.experiments.begin(), cfg.experiments.end(),
                                 [&](const ExperimentEntry& e) { return e.name == name; });
    REQUIRE(it != cfg.experiments.end());
    CHECK(it->n_values == ladder);
  }
  CHECK(required_table_size(cfg) >= (1 << 20));
}

TEST_CASE("run_suite is deterministic without timing") {
  SuiteConfig cfg;
  cfg.settings.record_timing = false;
  cfg.experiments.push_back({"squarefree_theorem", {256, 512}, {}});
  cfg.experiments.push_back({"kernel_gap", {256}, {}});
  const auto a = run_suite(tables(), cfg);
  const auto b = run_suite(tables(), cfg);
  CHECK(a == b);
  // Two rows per N plus the monotone-trend rows.
  CHECK(std::count_if(a.begin(), a.end(), [](const ExperimentRow& r) { return r.experiment == "trend"; }) >= 2);
}
