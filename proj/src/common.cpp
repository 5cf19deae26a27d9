#include "qdp/common.hpp"

#include <cstdlib>

namespace qdp {

namespace {

index_t env_cap(const char* name, index_t fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || parsed == 0) return fallback;
    return static_cast<index_t>(parsed);
}

}  // namespace

const Caps& caps() {
    static const Caps c{env_cap("QDP_LAB_CAP_DENSE", index_t{1} << 12),
                        env_cap("QDP_LAB_CAP_PRODUCT", index_t{1} << 22)};
    return c;
}

index_t ipow(index_t q, unsigned e) {
    index_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / q) throw std::overflow_error("ipow overflow");
        r *= q;
    }
    return r;
}

}  // namespace qdp
