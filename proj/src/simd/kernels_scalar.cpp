#include <cmath>

#include "lisl/simd/kernels.hpp"

namespace lisl::simd::detail {

std::size_t within_range_scalar(const PointsView& pts, std::size_t first, Point p, double max_d2,
                                std::uint32_t* idx_out, double* d2_out)
{
    std::size_t count = 0;
    const std::size_t n = pts.size();
    for (std::size_t j = first; j < n; ++j) {
        const double dx = pts.x[j] - p.x;
        const double dy = pts.y[j] - p.y;
        const double dz = pts.z[j] - p.z;
        const double d2 = (dx * dx + dy * dy) + dz * dz;
        if (d2 <= max_d2) {
            idx_out[count] = static_cast<std::uint32_t>(j);
            d2_out[count] = d2;
            ++count;
        }
    }
    return count;
}

std::size_t visible_from_scalar(const PointsView& pts, Point station, Point up, double sin_min_elev,
                                std::uint32_t* idx_out, double* d2_out)
{
    std::size_t count = 0;
    const std::size_t n = pts.size();
    for (std::size_t j = 0; j < n; ++j) {
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
