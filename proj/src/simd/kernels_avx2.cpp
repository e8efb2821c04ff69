// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "lisl/simd/kernels.hpp"

namespace lisl::simd::detail {

namespace {

inline std::size_t emit(int mask, std::size_t base, __m256d d2, std::uint32_t* idx_out, double* d2_out,
                        std::size_t count)
{
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, d2);
    while (mask != 0) {
        const int lane = __builtin_ctz(static_cast<unsigned>(mask));
        idx_out[count] = static_cast<std::uint32_t>(base + lane);
        d2_out[count] = lanes[lane];
        ++count;
        mask &= mask - 1;
    }
    return count;
}

} // namespace

std::size_t within_range_avx2(const PointsView& pts, std::size_t first, Point p, double max_d2,
                              std::uint32_t* idx_out, double* d2_out)
{
    const std::size_t n = pts.size();
    const __m256d px = _mm256_set1_pd(p.x);
    const __m256d py = _mm256_set1_pd(p.y);
    const __m256d pz = _mm256_set1_pd(p.z);
    const __m256d limit = _mm256_set1_pd(max_d2);

    std::size_t count = 0;
    std::size_t j = first;
    for (; j + 4 <= n; j += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(pts.x.data() + j), px);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(pts.y.data() + j), py);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pts.z.data() + j), pz);
        const __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                         _mm256_mul_pd(dz, dz));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, limit, _CMP_LE_OQ));
        if (mask != 0) {
            count = emit(mask, j, d2, idx_out, d2_out, count);
        }
    }
    if (j < n) {
        const PointsView tail{pts.x, pts.y, pts.z};
        count += within_range_scalar(tail, j, p, max_d2, idx_out + count, d2_out + count);
    }
    return count;
}

std::size_t visible_from_avx2(const PointsView& pts, Point station, Point up, double sin_min_elev,
                              std::uint32_t* idx_out, double* d2_out)
{
    const std::size_t n = pts.size();
    const __m256d sx = _mm256_set1_pd(station.x);
    const __m256d sy = _mm256_set1_pd(station.y);
    const __m256d sz = _mm256_set1_pd(station.z);
    const __m256d ux = _mm256_set1_pd(up.x);
    const __m256d uy = _mm256_set1_pd(up.y);
    const __m256d uz = _mm256_set1_pd(up.z);
    const __m256d smin = _mm256_set1_pd(sin_min_elev);
    const __m256d zero = _mm256_setzero_pd();

    std::size_t count = 0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(pts.x.data() + j), sx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(pts.y.data() + j), sy);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pts.z.data() + j), sz);
        const __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                         _mm256_mul_pd(dz, dz));
        const __m256d dot = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, ux), _mm256_mul_pd(dy, uy)),
                                          _mm256_mul_pd(dz, uz));
        const __m256d rhs = _mm256_mul_pd(smin, _mm256_sqrt_pd(d2));
        const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(d2, zero, _CMP_GT_OQ), _mm256_cmp_pd(dot, rhs, _CMP_GE_OQ));
        const int mask = _mm256_movemask_pd(ok);
        if (mask != 0) {
            count = emit(mask, j, d2, idx_out, d2_out, count);
        }
    }
    for (; j < n; ++j) {
        const double dx = pts.x[j] - station.x;
        const double dy = pts.y[j] - station.y;
        const double dz = pts.z[j] - station.z;
        const double d2 = (dx * dx + dy * dy) + dz * dz;
        const double dot = (dx * up.x + dy * up.y) + dz * up.z;
        if (d2 > 0.0 && dot >= sin_min_elev * std::sqrt(d2)) {
            idx_out[count] = static_cast<std::uint32_t>(j);
            d2_out[count] = d2;
            ++count;
        }
    }
    return count;
}

} // namespace lisl::simd::detail
