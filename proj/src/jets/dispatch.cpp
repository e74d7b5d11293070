#include <atomic>
#include <cstdlib>
#include <cstring>

#include "wsm/jets/kernels.hpp"

namespace wsm::jets::kern {

namespace {

const backend* probe(const char* name) {
    if (std::strcmp(name, "scalar") == 0) return &scalar_backend();
#if defined(WSM_HAVE_AVX2_BUILD)
    if (std::strcmp(name, "avx2") == 0 && __builtin_cpu_supports("avx2")) return &avx2_backend();
#endif
#if defined(WSM_HAVE_NEON_BUILD)
    if (std::strcmp(name, "neon") == 0) return &neon_backend();
#endif
    return nullptr;
}

const backend* pick_default() {
    if (const char* env = std::getenv("WSM_KERNEL"))
        if (const backend* b = probe(env)) return b;
#if defined(WSM_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2")) return &avx2_backend();
#endif
#if defined(WSM_HAVE_NEON_BUILD)
    return &neon_backend();
#endif
    return &scalar_backend();
}

std::atomic<const backend*>& slot() {
    static std::atomic<const backend*> current{pick_default()};
    return current;
}

} // namespace

const backend& active() { return *slot().load(std::memory_order_relaxed); }

bool select(const char* name) {
    const backend* b = probe(name);
    if (!b) return false;
    slot().store(b, std::memory_order_relaxed);
    return true;
}

} // namespace wsm::jets::kern
