#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qadder/kernels.hpp"

namespace qadder::kernels {

#ifdef QADDER_WITH_AVX2
const KernelTable &avx2_table();
#endif

const KernelTable *avx2() {
#ifdef QADDER_WITH_AVX2
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (supported) {
        return &avx2_table();
    }
#endif
    return nullptr;
}

namespace {

const KernelTable &choose() {
    const char *env = std::getenv("QADDER_KERNELS");
    const std::string wanted = env ? env : "";
    if (wanted == "scalar") {
        return scalar();
    }
    if (wanted == "avx2") {
        if (const KernelTable *t = avx2()) {
            return *t;
        }
        throw std::runtime_error("QADDER_KERNELS=avx2 requested but AVX2+FMA is unavailable");
    }
    if (!wanted.empty()) {
        throw std::runtime_error("QADDER_KERNELS must be 'scalar' or 'avx2', got '" + wanted + "'");
    }
    if (const KernelTable *t = avx2()) {
        return *t;
    }
    return scalar();
}

}  // namespace

const KernelTable &active() {
    static const KernelTable &table = choose();
    return table;
}

}  // namespace qadder::kernels
