#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "l1sieve/record.hpp"

namespace l1sieve::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kInvariant = 2 };

struct CommonOptions {
  bool json = false;
  std::string out_path;
  unsigned workers = 0;
  bool timing = true;
};

struct NormArgs {
  std::string kind = "mobius";
  std::int64_t n = 1024;
  std::uint64_t seed = 42;
  QuadratureOptions quadrature;
};

struct KernelGapArgs {
  std::string kind = "gstar";
  std::int64_t n = 1024;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> m;  // default 8N
};

struct SieveCheckArgs {
  std::string set = "reduced_farey";
  std::int64_t parameter = 10;
  std::string coeff_kind = "mobius";
  std::int64_t n = 512;
  double shift = 0.0;
  std::uint64_t seed = 42;
};

struct VaughanArgs {
  std::int64_t n = 4096;
  std::optional<std::int64_t> q;
  double rel_tol = 1e-4;
};

// Each command builds the tables it needs and returns the record it would
// print. Bad arguments throw ParameterError / RangeError.
OutputRecord cmd_norm(const NormArgs& args, const CommonOptions& common);
OutputRecord cmd_kernel_gap(const KernelGapArgs& args, const CommonOptions& common);
OutputRecord cmd_sieve_check(const SieveCheckArgs& args, const CommonOptions& common);
OutputRecord cmd_vaughan(const VaughanArgs& args, const CommonOptions& common);
// Empty path runs the default suite.
OutputRecord cmd_suite(const std::string& config_path, const CommonOptions& common);

// Full front end: parses argv, runs the command, writes CSV or JSON to `out`
// (or --out PATH), diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace l1sieve::cli
