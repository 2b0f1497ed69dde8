#pragma once

#include <cstddef>
#include <cstdint>

namespace l1sieve {

// Memory ceilings shared by every module. Sizes are element counts.
struct Budget {
  std::int64_t max_table_entries = std::int64_t{1} << 26;
  std::int64_t max_grid_points = std::int64_t{1} << 25;
  std::int64_t max_point_set_size = std::int64_t{1} << 22;
};

// Worker count used for grid partitioning. 0 means hardware concurrency.
struct Execution {
  unsigned workers = 0;
};

unsigned resolved_workers(const Execution& exec);

}  // namespace l1sieve
