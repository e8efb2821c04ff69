#pragma once

// Data-parallel geometry kernels behind the topology builder.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 variant chosen at runtime. Variants evaluate the same
// IEEE operations in the same order (no FMA contraction), so their outputs are
// bit-identical; the kernel tests enforce this.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lisl::simd {

enum class Backend : std::uint8_t { Scalar, Avx2 };

std::string_view backend_name(Backend b);

// Best backend the running CPU supports.
Backend detected_backend();

// Backend used by the dispatching entry points below.
Backend active_backend();

// Returns false (and leaves the selection unchanged) if `b` is unavailable.
bool set_backend(Backend b);

bool backend_available(Backend b);

// Structure-of-arrays view of 3D points (km).
struct PointsView {
    std::span<const double> x;
    std::span<const double> y;
    std::span<const double> z;

    std::size_t size() const { return x.size(); }
};

struct Point {
    double x, y, z;
};

// Appends every index j in [first, pts.size()) whose squared distance to `p`
// is <= max_d2, together with that squared distance. Output buffers must hold
// pts.size() - first entries. Returns the number written; indices ascend.
using WithinRangeFn = std::size_t (*)(const PointsView& pts, std::size_t first, Point p, double max_d2,
                                      std::uint32_t* idx_out, double* d2_out);

// Appends every index j whose line of sight from the station at `station`
// (with outward unit normal `up`) rises at least asin(sin_min_elev) above the
// local horizontal, together with the squared slant distance.
using VisibleFromFn = std::size_t (*)(const PointsView& pts, Point station, Point up, double sin_min_elev,
                                      std::uint32_t* idx_out, double* d2_out);

struct KernelTable {
    WithinRangeFn within_range;
    VisibleFromFn visible_from;
};

const KernelTable& kernels(Backend b);

inline std::size_t within_range(const PointsView& pts, std::size_t first, Point p, double max_d2,
                                std::uint32_t* idx_out, double* d2_out)
{
    return kernels(active_backend()).within_range(pts, first, p, max_d2, idx_out, d2_out);
}

inline std::size_t visible_from(const PointsView& pts, Point station, Point up, double sin_min_elev,
                                std::uint32_t* idx_out, double* d2_out)
{
    return kernels(active_backend()).visible_from(pts, station, up, sin_min_elev, idx_out, d2_out);
}

namespace detail {
std::size_t within_range_scalar(const PointsView&, std::size_t, Point, double, std::uint32_t*, double*);
std::size_t visible_from_scalar(const PointsView&, Point, Point, double, std::uint32_t*, double*);
#if defined(LISL_HAVE_AVX2)
std::size_t within_range_avx2(const PointsView&, std::size_t, Point, double, std::uint32_t*, double*);
std::size_t visible_from_avx2(const PointsView&, Point, Point, double, std::uint32_t*, double*);
#endif
} // namespace detail

} // namespace lisl::simd
