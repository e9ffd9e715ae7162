#include "infocap/harness/worker_pool.hpp"

#include <cstdlib>
#include <string>

#include "infocap/errors.hpp"
#include "infocap/harness/config.hpp"

namespace infocap::harness {

unsigned resolve_threads(std::optional<unsigned> requested) {
  if (requested) {
    if (*requested == 0) throw ConfigError("--threads must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("INFOCAP_THREADS"); env && *env) {
    const auto v = parse_u64(env, "INFOCAP_THREADS");
    if (v == 0) throw ConfigError("INFOCAP_THREADS must be >= 1");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace infocap::harness
