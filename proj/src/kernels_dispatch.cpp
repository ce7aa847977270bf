#include "evac/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace evac::kernels {

#if defined(EVACSIM_HAVE_AVX2)
const Kernels& avx2_impl();
#endif

const Kernels* avx2() {
#if defined(EVACSIM_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return &avx2_impl();
#endif
    return nullptr;
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        const char* env = std::getenv("EVACSIM_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar();
        if (env && std::strcmp(env, "avx2") == 0 && avx2()) return avx2();
        if (const Kernels* k = avx2()) return k;
        return &scalar();
    }();
    return *chosen;
}

} // namespace evac::kernels
