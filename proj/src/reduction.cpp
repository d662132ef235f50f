#include "blockspec/reduction.hpp"

#include <cstdlib>
#include <string>

namespace blockspec {

int thread_budget() {
  if (const char* env = std::getenv("BLOCKSPEC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // fall through to the default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace blockspec
