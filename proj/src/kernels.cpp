#include "ddm/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace ddm::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops& active() {
    static const Ops& chosen = []() -> const Ops& {
        const char* env = std::getenv("DDM_KERNEL");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_ops();
        if (env != nullptr && std::strcmp(env, "avx2") == 0) {
            if (!avx2_available()) throw std::runtime_error("DDM_KERNEL=avx2 but AVX2 not supported");
            return avx2_ops();
        }
        if (env != nullptr && std::strcmp(env, "auto") != 0)
            throw std::runtime_error("DDM_KERNEL must be scalar, avx2, or auto");
        return avx2_available() ? avx2_ops() : scalar_ops();
    }();
    return chosen;
}

}  // namespace ddm::kernels
