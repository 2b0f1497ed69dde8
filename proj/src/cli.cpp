#include "l1sieve/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "l1sieve/errors.hpp"

namespace l1sieve::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Metadata make_metadata(const std::string& command, const CommonOptions& common) {
  Metadata meta;
  meta.command = command;
  meta.workers = resolved_workers(Execution{common.workers});
  if (common.timing) meta.timestamp = utc_timestamp();
  return meta;
}

ExperimentSettings settings_from(const CommonOptions& common) {
  ExperimentSettings s;
  s.exec.workers = common.workers;
  s.record_timing = common.timing;
  return s;
}

SequenceKind sequence_kind(const std::string& name) {
  const auto kind = parse_sequence_kind(name);
  if (!kind) throw ParameterError("unknown coefficient kind '" + name + "'");
  return *kind;
}

ArithmeticTables tables_for(std::int64_t n) { return build_tables(std::max<std::int64_t>(n, 2)); }

}  // namespace

OutputRecord cmd_norm(const NormArgs& args, const CommonOptions& common) {
  const auto clock = std::chrono::steady_clock::now();
  const auto kind = sequence_kind(args.kind);
  if (args.n < 1) throw ParameterError("--n must be positive");
  const auto tables = tables_for(args.n);
  const auto settings = settings_from(common);
  const auto seq = coefficient_sequence(tables, {kind, args.seed}, args.n);
  const auto est = l1_norm(seq, args.quadrature, settings.budget, settings.exec);
  const double l2 = l2_norm_sq(seq);
  const double l2_quad = l2_norm_sq_quadrature(seq);

  ExperimentRow row;
  row.experiment = "norm";
  row.variant = args.kind;
  row.N = args.n;
  row.M = est.grids.back().M;
  if (kind == SequenceKind::random_complex || kind == SequenceKind::squarefree_random ||
      kind == SequenceKind::prime_random)
    row.seed = args.seed;
  row.tolerance = args.quadrature.rel_tol;
  row.converged = est.converged;
  row.metrics.push_back(Metric{"l1", est.value, std::sqrt(l2), est.value / std::sqrt(l2), std::nullopt, false});
  row.metrics.push_back(Metric{"l2_sq", l2, std::nullopt, std::nullopt, std::nullopt, false});
  const bool parseval = std::abs(l2_quad - l2) <= 1e-9 * std::max(l2, 1e-300);
  row.metrics.push_back(Metric{"l2_sq_quadrature", l2_quad, l2, l2 > 0 ? l2_quad / l2 : 1.0, parseval, true});
  row.metrics.push_back(Metric{"last_delta", est.last_delta, args.quadrature.rel_tol, std::nullopt, std::nullopt, false});
  std::string grids = "grids";
  for (const auto& g : est.grids) {
    row.metrics.push_back(Metric{"grid_" + std::to_string(g.M), g.value, std::nullopt, std::nullopt, std::nullopt, false});
    grids += " " + std::to_string(g.M);
  }
  row.note = est.converged ? grids : grids + "; quadrature did not converge";
  row.finalize();
  row.pass = row.pass || !est.converged;  // non-convergence is a warning here
  if (common.timing)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - clock).count();

  OutputRecord record;
  record.metadata = make_metadata("norm", common);
  record.metadata.tolerances = {{"rel_tol", args.quadrature.rel_tol},
                                {"oversample_start", double(args.quadrature.oversample_start)},
                                {"oversample_cap", double(args.quadrature.oversample_cap)}};
  record.metadata.seeds = {args.seed};
  record.rows.push_back(std::move(row));
  return record;
}

OutputRecord cmd_kernel_gap(const KernelGapArgs& args, const CommonOptions& common) {
  const auto kind = parse_kernel_kind(args.kind);
  if (!kind || (*kind != KernelKind::gstar && *kind != KernelKind::h && *kind != KernelKind::h_truncated))
    throw ParameterError("--kind must be gstar, h or h_truncated");
  const auto spec = make_kernel_spec(*kind, args.n, args.p);
  const auto tables = tables_for(std::max(spec.P, std::int64_t{2}));
  const std::int64_t M = args.m.value_or(8 * args.n);
  OutputRecord record;
  record.metadata = make_metadata("kernel-gap", common);
  record.metadata.tolerances = {{"min_gap_floor_per_N", 1e-8}};
  record.rows.push_back(kernel_gap_scan(tables, args.n, spec.P, *kind, M, settings_from(common)));
  return record;
}

OutputRecord cmd_sieve_check(const SieveCheckArgs& args, const CommonOptions& common) {
  const auto clock = std::chrono::steady_clock::now();
  const auto set_kind = parse_point_set_kind(args.set);
  if (!set_kind) throw ParameterError("unknown point set '" + args.set + "'");
  const auto kind = sequence_kind(args.coeff_kind);
  const auto tables = tables_for(std::max(args.n, args.parameter));
  const auto settings = settings_from(common);
  const auto set = build_point_set(tables, *set_kind, args.parameter, settings.budget);
  const auto seq = coefficient_sequence(tables, {kind, args.seed}, args.n);
  const auto check = large_sieve_check(seq, set, args.shift, settings.exec);

  ExperimentRow row;
  row.experiment = "sieve_check";
  row.variant = args.set + "/" + args.coeff_kind;
  row.N = args.n;
  row.P = args.parameter;
  row.seed = args.seed;
  row.tolerance = 1e-9;
  row.note = "shift=" + format_float(args.shift);
  row.metrics.push_back(Metric{"points", double(set.size()), std::nullopt, std::nullopt, std::nullopt, false});
  row.metrics.push_back(Metric{"delta", set.delta, std::nullopt, std::nullopt, std::nullopt, false});
  row.metrics.push_back(Metric{"lhs", check.lhs, check.rhs, check.ratio, std::nullopt, false});
  row.metrics.push_back(Metric{"ratio", check.ratio, 1.0, check.ratio, check.ratio <= 1.0 + 1e-9, true});
  row.finalize();
  if (common.timing)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - clock).count();

  OutputRecord record;
  record.metadata = make_metadata("sieve-check", common);
  record.metadata.tolerances = {{"ratio_slack", 1e-9}};
  record.metadata.seeds = {args.seed};
  record.rows.push_back(std::move(row));
  return record;
}

OutputRecord cmd_vaughan(const VaughanArgs& args, const CommonOptions& common) {
  const std::int64_t Q = args.q.value_or(integer_root(args.n, 2));
  if (Q < 1 || Q > args.n) throw ParameterError("--q must satisfy 1 <= Q <= N");
  const auto tables = tables_for(args.n);
  auto settings = settings_from(common);
  settings.quadrature.rel_tol = args.rel_tol;
  OutputRecord record;
  record.metadata = make_metadata("vaughan", common);
  record.metadata.tolerances = {{"rel_tol", args.rel_tol}, {"vaughan_quadrature_tol", settings.vaughan_quadrature_tol}};

  const auto clock = std::chrono::steady_clock::now();
  auto v_row = to_row(vaughan_V(tables, args.n, Q, settings), settings);
  if (common.timing)
    v_row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - clock).count();
  record.rows.push_back(std::move(v_row));
  record.rows.push_back(lambda_l1_bounds(tables, args.n, Q, settings));
  return record;
}

OutputRecord cmd_suite(const std::string& config_path, const CommonOptions& common) {
  SuiteConfig config = config_path.empty() ? default_suite_config() : load_suite_config(config_path);
  if (common.workers != 0) config.settings.exec.workers = common.workers;
  config.settings.record_timing = common.timing;
  const auto tables = tables_for(required_table_size(config));

  OutputRecord record;
  record.metadata = make_metadata(config_path.empty() ? "suite (default)" : "suite " + config_path, common);
  record.metadata.workers = resolved_workers(config.settings.exec);
  const auto& s = config.settings;
  record.metadata.tolerances = {{"rel_tol", s.quadrature.rel_tol},
                                {"oversample_start", double(s.quadrature.oversample_start)},
                                {"oversample_cap", double(s.quadrature.oversample_cap)},
                                {"empirical_floor", s.floor},
                                {"epsilon", s.epsilon},
                                {"vaughan_quadrature_tol", s.vaughan_quadrature_tol}};
  record.metadata.seeds = {s.seed};
  record.rows = run_suite(tables, config);
  return record;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential-sum kernels, large-sieve checks and L1-norm experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOptions common;
  bool no_timing = false;
  app.add_flag("--json", common.json, "Emit JSON instead of CSV");
  app.add_option("--out", common.out_path, "Write output to PATH instead of stdout");
  app.add_option("--workers", common.workers, "Worker threads (0 = hardware concurrency)");
  app.add_flag("--no-timing", no_timing, "Omit runtimes and timestamps (byte-stable output)");

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "L1 and L2 norms of a coefficient sequence");
  norm_cmd->add_option("--kind", norm.kind, "Coefficient kind")->required();
  norm_cmd->add_option("--n", norm.n, "Length N")->required();
  norm_cmd->add_option("--seed", norm.seed, "Seed for random kinds");
  norm_cmd->add_option("--tol", norm.quadrature.rel_tol, "Relative tolerance for the L1 quadrature");
  norm_cmd->add_option("--oversample", norm.quadrature.oversample_start, "Initial oversampling factor");
  norm_cmd->add_option("--oversample-cap", norm.quadrature.oversample_cap, "Oversampling cap");

  KernelGapArgs gap;
  std::int64_t gap_p = 0, gap_m = 0;
  auto* gap_cmd = app.add_subcommand("kernel-gap", "max |kernel - T_N| over a uniform grid");
  gap_cmd->add_option("--kind", gap.kind, "gstar, h or h_truncated")->required();
  gap_cmd->add_option("--n", gap.n, "N")->required();
  auto* gap_p_opt = gap_cmd->add_option("--p", gap_p, "P (default floor(N^(1/4)) or floor(N^(1/2)))");
  auto* gap_m_opt = gap_cmd->add_option("--m", gap_m, "Grid size (default 8N)");

  SieveCheckArgs sieve;
  auto* sieve_cmd = app.add_subcommand("sieve-check", "Large-sieve inequality on a spaced point set");
  sieve_cmd->add_option("--set", sieve.set, "prime_square_farey, prime_farey, reduced_farey or equispaced");
  sieve_cmd->add_option("--param", sieve.parameter, "P, Q or M of the point set");
  sieve_cmd->add_option("--kind", sieve.coeff_kind, "Coefficient kind");
  sieve_cmd->add_option("--n", sieve.n, "Length N");
  sieve_cmd->add_option("--shift", sieve.shift, "Shift applied to every point");
  sieve_cmd->add_option("--seed", sieve.seed, "Seed for random kinds");

  VaughanArgs vaughan;
  std::int64_t vaughan_q = 0;
  auto* vaughan_cmd = app.add_subcommand("vaughan", "V by both routes and the L1 bounds for Lambda");
  vaughan_cmd->add_option("--n", vaughan.n, "N")->required();
  auto* vaughan_q_opt = vaughan_cmd->add_option("--q", vaughan_q, "Q (default floor(N^(1/2)))");
  vaughan_cmd->add_option("--tol", vaughan.rel_tol, "Relative tolerance for the L1 quadrature");

  std::string config_path;
  auto* suite_cmd = app.add_subcommand("suite", "Run an experiment suite");
  suite_cmd->add_option("--config", config_path, "Suite configuration file (default suite when absent)");

  std::vector<const char*> raw;
  raw.reserve(argv.size() + 1);
  raw.push_back("l1sieve");
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }
  common.timing = !no_timing;
  if (gap_p_opt->count()) gap.p = gap_p;
  if (gap_m_opt->count()) gap.m = gap_m;
  if (vaughan_q_opt->count()) vaughan.q = vaughan_q;

  OutputRecord record;
  try {
    if (norm_cmd->parsed()) record = cmd_norm(norm, common);
    else if (gap_cmd->parsed()) record = cmd_kernel_gap(gap, common);
    else if (sieve_cmd->parsed()) record = cmd_sieve_check(sieve, common);
    else if (vaughan_cmd->parsed()) record = cmd_vaughan(vaughan, common);
    else if (suite_cmd->parsed()) record = cmd_suite(config_path, common);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::ofstream file;
  if (!common.out_path.empty()) {
    file.open(common.out_path);
    if (!file) {
      err << "error: cannot write '" << common.out_path << "'\n";
      return kUsage;
    }
  }
  std::ostream& sink = common.out_path.empty() ? out : file;
  if (common.json)
    write_json(sink, record);
  else
    write_csv(sink, record);

  int code = kSuccess;
  for (const auto& row : record.rows) {
    if (!row.converged) err << "warning: " << row.experiment << " N=" << row.N.value_or(0) << " did not converge\n";
    if (row.invariant_violated()) {
      err << "invariant violation in " << row.experiment << "/" << row.variant << "\n";
      code = kInvariant;
    }
  }
  return code;
}

}  // namespace l1sieve::cli
