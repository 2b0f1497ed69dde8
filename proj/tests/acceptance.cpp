// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "l1sieve/arith.hpp"
#include "l1sieve/experiments.hpp"
#include "l1sieve/expsum.hpp"
#include "l1sieve/largesieve.hpp"
#include "l1sieve/quadrature.hpp"

using namespace l1sieve;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    out.ok = false;
    out.detail += "; exceeded " + std::to_string(static_cast<int>(limit_s)) + " s";
  }
  if (!out.ok) ++failures;
  std::printf("%s  %-5s %s [%s] (%.2f s)\n", out.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), out.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const Metric& metric(const ExperimentRow& row, const std::string& name) {
  const auto* m = row.metric(name);
  if (!m) throw std::runtime_error("row " + row.experiment + " lacks metric " + name);
  return *m;
}

std::vector<std::int64_t> ladder(int lo, int hi) {
  std::vector<std::int64_t> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::int64_t{1} << e);
  return out;
}

}  // namespace

int main() {
  const auto tables = build_tables(1'000'000);
  ExperimentSettings settings;
  settings.record_timing = false;

  std::printf("Exact identities\n");

  criterion("1.1", "Parseval: quadrature L2 equals sum |a_n|^2 within 1e-9", 10, [&] {
    double worst = 0;
    int count = 0;
    for (std::int64_t N : {64, 512, 4096})
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto seq = coefficient_sequence(tables, {SequenceKind::random_complex, seed}, N);
        const double exact = l2_norm_sq(seq);
        worst = std::max(worst, std::abs(l2_norm_sq_quadrature(seq) - exact) / exact);
        ++count;
      }
    return Outcome{worst <= 1e-9, std::to_string(count) + " sequences, worst rel err " + fmt(worst)};
  });

  criterion("1.2", "Ramanujan closed form equals the direct sum, q <= 200, |n| <= 200", 5, [&] {
    int mismatches = 0;
    for (std::int64_t q = 1; q <= 200; ++q)
      for (std::int64_t n = -200; n <= 200; ++n)
        mismatches += ramanujan_sum(tables, q, n) != std::llround(ramanujan_sum_direct(q, n));
    return Outcome{mismatches == 0, std::to_string(mismatches) + " mismatches of 80200"};
  });

  criterion("1.3", "V: Ramanujan-sum route equals the kernel-integral route", 60, [&] {
    Outcome out;
    for (const auto [N, Q] : {std::pair<std::int64_t, std::int64_t>{256, 16}, {1024, 32}, {4096, 64}}) {
      const auto r = vaughan_V(tables, N, Q, settings);
      const bool ok = r.routes_agree.value_or(false);
      out.ok = out.ok && ok;
      out.detail += "N=" + std::to_string(N) + " rel diff " +
                    fmt(std::abs(r.v_spectral - r.v_quadrature.value_or(0)) / std::abs(r.v_spectral)) + "; ";
    }
    return out;
  });

  criterion("1.4", "eps_q orthogonality, q <= 50, |n| <= 200, within 1e-9", 0, [&] {
    double worst = 0;
    for (std::int64_t q = 1; q <= 50; ++q)
      for (std::int64_t n = -200; n <= 200; ++n) {
        std::complex<double> s{};
        for (std::int64_t a = 1; a <= q; ++a)
          s += std::polar(1.0, -2 * std::numbers::pi * double((n * a) % q) / double(q));
        worst = std::max(worst, std::abs(s - double(eps(q, n))));
      }
    return Outcome{worst <= 1e-9, "max error " + fmt(worst)};
  });

  criterion("1.5", "Kernel duality: shifted and spectral routes agree within 1e-6 at 100 points", 0, [&] {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    int specs = 0;
    for (const auto kind : {KernelKind::gstar, KernelKind::h})
      for (std::int64_t N : {256, 1024, 4096, 16384})
        for (const auto P : {std::optional<std::int64_t>{}, std::optional<std::int64_t>{3}}) {
          const auto spec = make_kernel_spec(kind, N, P);
          ++specs;
          for (int i = 0; i < 100; ++i) {
            const double a = u(rng);
            const double x = eval_kernel(tables, spec, a);
            const double y = eval_kernel_spectral(tables, spec, a);
            worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(y)));
          }
        }
    return Outcome{worst <= 1e-6, std::to_string(specs) + " specs, worst rel diff " + fmt(worst)};
  });

  std::printf("Analytic inequalities\n");

  criterion("2.1", "Large sieve ratio <= 1 + 1e-9 over 1000 trials, all Farey kinds, parameters to 10^3", 0, [&] {
    struct Plan {
      PointSetKind kind;
      std::int64_t param;
      int trials;
      std::int64_t max_n;
    };
    const Plan plans[] = {
        {PointSetKind::reduced_farey, 2, 60, 64},         {PointSetKind::reduced_farey, 10, 100, 256},
        {PointSetKind::reduced_farey, 50, 100, 1024},     {PointSetKind::reduced_farey, 200, 60, 512},
        {PointSetKind::reduced_farey, 1000, 10, 64},      {PointSetKind::prime_farey, 2, 60, 64},
        {PointSetKind::prime_farey, 13, 100, 256},        {PointSetKind::prime_farey, 100, 100, 1024},
        {PointSetKind::prime_farey, 1000, 30, 256},       {PointSetKind::prime_square_farey, 2, 60, 64},
        {PointSetKind::prime_square_farey, 5, 100, 256},  {PointSetKind::prime_square_farey, 20, 100, 256},
        {PointSetKind::prime_square_farey, 60, 87, 64},   {PointSetKind::prime_square_farey, 200, 30, 16},
        {PointSetKind::prime_square_farey, 1000, 3, 16},
    };
    const SequenceKind kinds[] = {SequenceKind::random_complex, SequenceKind::mobius, SequenceKind::mangoldt,
                                  SequenceKind::squarefree_random, SequenceKind::prime_random, SequenceKind::ones};
    Budget budget;
    budget.max_point_set_size = std::int64_t{1} << 26;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 1);
    int trials = 0, violations = 0;
    double worst = 0;
    for (const auto& plan : plans) {
      const auto set = build_point_set(tables, plan.kind, plan.param, budget);
      for (int i = 0; i < plan.trials; ++i) {
        const auto N = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(plan.max_n));
        const auto kind = kinds[rng() % std::size(kinds)];
        const auto seq = coefficient_sequence(tables, {kind, rng()}, N);
        if (seq.coeffs.squaredNorm() == 0.0) {
          --i;
          continue;
        }
        const double shift = i == 0 ? 0.0 : u(rng);
        const auto r = large_sieve_check(seq, set, shift, settings.exec);
        worst = std::max(worst, r.ratio);
        violations += r.ratio > 1.0 + 1e-9;
        ++trials;
      }
    }
    return Outcome{violations == 0 && trials == 1000,
                   std::to_string(trials) + " trials, " + std::to_string(violations) + " violations, max ratio " +
                       fmt(worst)};
  });

  std::vector<ExperimentRow> gap_rows;
  for (const auto N : ladder(10, 16))
    for (const auto kind : {KernelKind::gstar, KernelKind::h, KernelKind::h_truncated}) {
      gap_rows.push_back(kernel_gap_scan(tables, N, make_kernel_spec(kind, N).P, kind, 8 * N, settings));
      if (kind != KernelKind::h_truncated) {
        const std::int64_t alt = kind == KernelKind::gstar ? 2 : 10;
        gap_rows.push_back(kernel_gap_scan(tables, N, alt, kind, 4 * N, settings));
      }
    }

  criterion("2.2", "Kernel nonnegativity: min (K - T_N) >= -1e-8 N for gstar and h, N = 2^10..2^16", 0, [&] {
    Outcome out;
    double worst = INFINITY;
    for (const auto& row : gap_rows) {
      if (row.variant == "h_truncated") continue;
      const auto& m = metric(row, "min_gap");
      out.ok = out.ok && m.check.value_or(false);
      worst = std::min(worst, m.value / double(*row.N));
    }
    out.detail = "min gap / N " + fmt(worst);
    return out;
  });

  criterion("2.3", "Certified gap ceilings (N + P^4 - 1)/pi(P) and (N + P^2 - 1)/pi(P)", 0, [&] {
    Outcome out;
    double worst = 0;
    int count = 0;
    for (const auto& row : gap_rows) {
      if (row.variant == "h_truncated") continue;
      const auto kind = *parse_kernel_kind(row.variant);
      const double ceiling = sieve_bound_for_kernel_gap(tables, *row.N, *row.P, kind);
      const double gap = metric(row, "max_gap").value;
      out.ok = out.ok && gap <= ceiling;
      worst = std::max(worst, gap / ceiling);
      ++count;
    }
    out.detail = std::to_string(count) + " (N, P) pairs, max gap / ceiling " + fmt(worst);
    return out;
  });

  criterion("2.4", "L1(Lambda) >= V / (N (N + Q^2)), N = 2^10..2^14", 0, [&] {
    Outcome out;
    double worst = INFINITY;
    for (const auto N : ladder(10, 14)) {
      const auto row = lambda_l1_bounds(tables, N, 0, settings);
      const auto& m = metric(row, "chain_lower_bound");
      out.ok = out.ok && m.value >= *m.reference;
      worst = std::min(worst, m.value / *m.reference);
    }
    out.detail = "min L1 / bound " + fmt(worst);
    return out;
  });

  criterion("2.5", "max |H_N - H_{N,P}| <= 3.5 P", 0, [&] {
    Outcome out;
    double worst = 0;
    for (const auto& row : gap_rows) {
      if (row.variant != "h_truncated") continue;
      const double ratio = metric(row, "truncation_diff").value / double(*row.P);
      out.ok = out.ok && ratio <= 3.5;
      worst = std::max(worst, ratio);
    }
    out.detail = "max diff / P " + fmt(worst);
    return out;
  });

  std::printf("Asymptotic and trend checks (empirical floors)\n");

  criterion("3.1", "V pi^2 / (3 Q N^2) in [0.6, 1.4] at N = 2^14, closer to 1 than at 2^10", 120, [&] {
    const auto big = vaughan_V(tables, 1 << 14, integer_root(1 << 14, 2), settings);
    const auto small = vaughan_V(tables, 1 << 10, integer_root(1 << 10, 2), settings);
    const bool ok = big.ratio >= 0.6 && big.ratio <= 1.4 && std::abs(big.ratio - 1) < std::abs(small.ratio - 1);
    return Outcome{ok, "ratio " + fmt(big.ratio) + " at 2^14, " + fmt(small.ratio) + " at 2^10"};
  });

  criterion("3.2", "0.15 <= L1(Lambda)/N^{1/2} and L1(Lambda) <= (0.75 N log N)^{1/2}, N = 2^12, 2^14, 2^16", 180, [&] {
    Outcome out;
    for (const auto N : {1 << 12, 1 << 14, 1 << 16}) {
      const auto row = lambda_l1_bounds(tables, N, 0, settings);
      const double L = metric(row, "l1").value;
      const double lower = L / std::sqrt(double(N));
      const double upper = L / std::sqrt(0.75 * double(N) * std::log(double(N)));
      out.ok = out.ok && lower >= 0.15 && upper <= 1.0 && row.converged;
      out.detail += "N=" + std::to_string(N) + ": " + fmt(lower) + ", " + fmt(upper) + "; ";
    }
    return out;
  });

  criterion("3.3", "L1(mu) (log N)^{1/2} / N^{1/8} >= 0.1 and non-decreasing, N = 2^10..2^16", 0, [&] {
    Outcome out;
    double previous = -INFINITY;
    for (const auto N : ladder(10, 16)) {
      const auto row = squarefree_theorem_ratio(tables, {SequenceKind::mobius, 0}, N, settings);
      const double r = metric(row, "mobius_ratio").value;
      out.ok = out.ok && r >= 0.1 && r >= previous && row.converged;
      previous = r;
      out.detail += fmt(r) + " ";
    }
    return out;
  });

  criterion("3.4", "Prime floors: L1(1_p)(log N)^2/N^{1/2} >= 0.1, chi3 on primes L1 log N / N^{1/4} >= 0.1", 0, [&] {
    Outcome out;
    double min_indicator = INFINITY, min_chi = INFINITY;
    for (const auto N : ladder(10, 16)) {
      const auto rows = prime_support_experiments(tables, N, settings);
      min_indicator = std::min(min_indicator, metric(rows[0], "indicator_ratio").value);
      min_chi = std::min(min_chi, metric(rows[1], "theorem_ratio").value);
    }
    out.ok = min_indicator >= 0.1 && min_chi >= 0.1;
    out.detail = "min ratios " + fmt(min_indicator) + ", " + fmt(min_chi);
    return out;
  });

  criterion("3.5", "sum (N-n) Lambda(n) / (N^2/2) in [0.9, 1.1] for N >= 2^14; pi(N) > N/log N for 17..10^6", 0, [&] {
    Outcome out;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto N : ladder(14, 19)) {
      long double s = 0;
      for (std::int64_t n = 2; n <= N; ++n) s += (N - n) * tables.mangoldt(n);
      const double r = static_cast<double>(s / (0.5L * N * N));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    std::int64_t pi = 0;
    double worst = INFINITY;
    for (std::int64_t n = 2; n <= 1'000'000; ++n) {
      pi += tables.is_prime(n);
      if (n >= 17) worst = std::min(worst, double(pi) * std::log(double(n)) / double(n));
    }
    out.ok = lo >= 0.9 && hi <= 1.1 && worst > 1.0;
    out.detail = "ratio range [" + fmt(lo) + ", " + fmt(hi) + "], min pi(N) log N / N " + fmt(worst);
    return out;
  });

  criterion("3.6", "Full default suite passes every row", 600, [&] {
    auto config = default_suite_config();
    config.settings.record_timing = false;
    const auto suite_tables = build_tables(required_table_size(config));
    const auto rows = run_suite(suite_tables, config);
    int failed = 0;
    std::string names;
    for (const auto& row : rows)
      if (!row.pass) {
        ++failed;
        names += " " + row.experiment + "/" + row.variant;
      }
    return Outcome{failed == 0 && !rows.empty(),
                   std::to_string(rows.size()) + " rows, " + std::to_string(failed) + " failed" + names};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
