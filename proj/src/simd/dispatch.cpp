#include <atomic>

#include "lisl/simd/kernels.hpp"

namespace lisl::simd {

namespace {

constexpr KernelTable kScalarTable{&detail::within_range_scalar, &detail::visible_from_scalar};
#if defined(LISL_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&detail::within_range_avx2, &detail::visible_from_avx2};
#endif

bool cpu_has_avx2()
{
#if defined(LISL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Backend>& selected()
{
    static std::atomic<Backend> backend{detected_backend()};
    return backend;
}

} // namespace

std::string_view backend_name(Backend b)
{
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend b)
{
    return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

Backend detected_backend() { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }

Backend active_backend() { return selected().load(std::memory_order_relaxed); }

bool set_backend(Backend b)
{
    if (!backend_available(b)) {
        return false;
    }
    selected().store(b, std::memory_order_relaxed);
    return true;
}

const KernelTable& kernels(Backend b)
{
#if defined(LISL_HAVE_AVX2)
    if (b == Backend::Avx2) {
        return kAvx2Table;
    }
#endif
    (void)b;
    return kScalarTable;
}

} // namespace lisl::simd
