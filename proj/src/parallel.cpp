#include "holo_interp/parallel.hpp"

#include <cstdlib>
#include <string>

#include "holo_interp/errors.hpp"

namespace holo_interp {

unsigned resolve_threads(std::optional<unsigned> requested) {
  if (requested) return std::max(1u, *requested);
  if (const char* env = std::getenv("HOLO_INTERP_THREADS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("HOLO_INTERP_THREADS must be a positive integer, got '") + env +
                     "'");
  }
  return 1;
}

}  // namespace holo_interp
