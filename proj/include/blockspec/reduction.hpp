#pragma once

#include "blockspec/types.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace blockspec {

/// Compensated (Neumaier) accumulator. Used for the long series in this
/// library so that results are both accurate and independent of how the
/// terms were produced, as long as they are added in a fixed order.
struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + compensation; }
};

/// Number of worker threads the library may use. Reads BLOCKSPEC_THREADS,
/// falling back to the hardware concurrency; always at least 1.
int thread_budget();

/// Runs body(i) for i in [0, n). Work items must be independent and write
/// only to their own output slots; the partitioning is static so results do
/// not depend on the thread count.
template <typename Body>
void parallel_for(Index n, Body&& body) {
  const int budget = thread_budget();
  if (budget <= 1 || n < 4) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }
  const int workers = static_cast<int>(std::min<Index>(budget, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (Index i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace blockspec
