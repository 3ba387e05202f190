#include <atomic>
#include <stdexcept>

#include "skewloc/kernels/kernels.hpp"

namespace skewloc::kernels {

#if !SKEWLOC_HAVE_AVX2
const Ops* avx2_ops() { return nullptr; }
#endif

bool avx2_supported() {
#if SKEWLOC_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {
std::atomic<Backend> g_backend{avx2_supported() ? Backend::Avx2 : Backend::Scalar};
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && (!avx2_supported() || avx2_ops() == nullptr))
        throw std::invalid_argument("kernel backend avx2 not available on this machine");
    g_backend.store(b, std::memory_order_relaxed);
}

Backend select_backend(const std::string& preference) {
    if (preference == "scalar") {
        set_backend(Backend::Scalar);
    } else if (preference == "avx2") {
        set_backend(Backend::Avx2);
    } else if (preference == "auto" || preference.empty()) {
        set_backend(avx2_supported() ? Backend::Avx2 : Backend::Scalar);
    } else {
        throw std::invalid_argument("unknown kernel backend: " + preference);
    }
    return active_backend();
}

const char* backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

const Ops& ops() {
    if (active_backend() == Backend::Avx2) {
        const Ops* t = avx2_ops();
        if (t) return *t;
    }
    return scalar_ops();
}

} // namespace skewloc::kernels
