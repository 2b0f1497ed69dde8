#include "l1sieve/config.hpp"

#include <thread>

namespace l1sieve {

unsigned resolved_workers(const Execution& exec) {
  if (exec.workers > 0) return exec.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace l1sieve
