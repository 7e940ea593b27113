#include <cstdlib>
#include <string_view>

#include "haar/kernels.hpp"

namespace haar::kernels {

const Table& active() {
  static const Table& chosen = [] () -> const Table& {
    const char* env = std::getenv("HAARMOMENTS_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    const Table* simd = simd_table();
    return simd != nullptr ? *simd : scalar_table();
  }();
  return chosen;
}

}  // namespace haar::kernels
