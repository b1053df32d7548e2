#include <cstdlib>
#include <string_view>

#include "coarsekit/kernels.hpp"

namespace coarsekit::kernels {

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("COARSEKIT_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    const KernelTable* simd = avx2_kernels();
    return simd != nullptr ? *simd : scalar_kernels();
  }();
  return table;
}

}  // namespace coarsekit::kernels
