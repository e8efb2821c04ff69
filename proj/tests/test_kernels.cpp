#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "lisl/simd/kernels.hpp"

using namespace lisl::simd;

namespace {

struct Cloud {
    std::vector<double> x, y, z;
    PointsView view() const { return {x, y, z}; }
};

Cloud random_shell(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> r(6500.0, 7200.0);
    Cloud c;
    for (std::size_t i = 0; i < n; ++i) {
        double a = g(rng), b = g(rng), d = g(rng);
        const double s = r(rng) / std::sqrt(a * a + b * b + d * d);
        c.x.push_back(a * s);
        c.y.push_back(b * s);
        c.z.push_back(d * s);
    }
    return c;
}

struct Hits {
    std::vector<std::uint32_t> idx;
    std::vector<double> d2;

    bool operator==(const Hits& o) const
    {
        return idx == o.idx && d2.size() == o.d2.size() &&
               std::memcmp(d2.data(), o.d2.data(), d2.size() * sizeof(double)) == 0;
    }
};

Hits run_within(const KernelTable& k, const Cloud& c, std::size_t first, Point p, double max_d2)
{
    Hits h{std::vector<std::uint32_t>(c.x.size()), std::vector<double>(c.x.size())};
    const auto n = k.within_range(c.view(), first, p, max_d2, h.idx.data(), h.d2.data());
    h.idx.resize(n);
    h.d2.resize(n);
    return h;
}

Hits run_visible(const KernelTable& k, const Cloud& c, Point gs, Point up, double smin)
{
    Hits h{std::vector<std::uint32_t>(c.x.size()), std::vector<double>(c.x.size())};
    const auto n = k.visible_from(c.view(), gs, up, smin, h.idx.data(), h.d2.data());
    h.idx.resize(n);
    h.d2.resize(n);
    return h;
}

} // namespace

TEST_CASE("scalar within_range matches a direct distance test")
{
    const auto c = random_shell(301, 1);
    const Point p{c.x[0], c.y[0], c.z[0]};
    const double range = 3000.0;
    const auto h = run_within(kernels(Backend::Scalar), c, 1, p, range * range);
    std::vector<std::uint32_t> expect;
    for (std::size_t j = 1; j < c.x.size(); ++j) {
        const double d = std::hypot(c.x[j] - p.x, c.y[j] - p.y, c.z[j] - p.z);
        if (d <= range) {
            expect.push_back(static_cast<std::uint32_t>(j));
        }
    }
    // hypot and the kernel's squared form may disagree only within rounding of the threshold.
    CHECK(h.idx == expect);
}

TEST_CASE("scalar visible_from matches elevation computed with asin")
{
    const auto c = random_shell(500, 2);
    const Point gs{6371.0 * std::cos(0.7), 0.0, 6371.0 * std::sin(0.7)};
    const Point up{std::cos(0.7), 0.0, std::sin(0.7)};
    const double mask = 25.0 * M_PI / 180.0;
    const auto h = run_visible(kernels(Backend::Scalar), c, gs, up, std::sin(mask));
    std::vector<std::uint32_t> expect;
    for (std::size_t j = 0; j < c.x.size(); ++j) {
        const double dx = c.x[j] - gs.x, dy = c.y[j] - gs.y, dz = c.z[j] - gs.z;
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (std::asin((dx * up.x + dy * up.y + dz * up.z) / d) >= mask) {
            expect.push_back(static_cast<std::uint32_t>(j));
        }
    }
    CHECK(h.idx == expect);
    CHECK(!expect.empty());
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference")
{
    if (!backend_available(Backend::Avx2)) {
        MESSAGE("AVX2 unavailable on this CPU; equivalence not exercised");
        return;
    }
    const auto& s = kernels(Backend::Scalar);
    const auto& v = kernels(Backend::Avx2);
    std::mt19937_64 rng(42);
    // Sizes around the vector width exercise the scalar tails.
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 63u, 64u, 65u, 1584u}) {
        const auto c = random_shell(n, n + 17);
        std::uniform_real_distribution<double> range(100.0, 6000.0);
        for (int trial = 0; trial < 20; ++trial) {
            const double r = range(rng);
            for (std::size_t first : {std::size_t{0}, n / 3, n}) {
                const Point p = n ? Point{c.x[first % n], c.y[first % n], c.z[first % n]} : Point{7000.0, 0.0, 0.0};
                CHECK(run_within(s, c, first, p, r * r) == run_within(v, c, first, p, r * r));
            }
            const double lat = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
            const double lon = std::uniform_real_distribution<double>(-3.1, 3.1)(rng);
            const Point up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
            const Point gs{6371.0 * up.x, 6371.0 * up.y, 6371.0 * up.z};
            const double smin = std::sin(std::uniform_real_distribution<double>(0.0, 1.2)(rng));
            CHECK(run_visible(s, c, gs, up, smin) == run_visible(v, c, gs, up, smin));
        }
    }
}

TEST_CASE("AVX2 handles exact threshold and coincident points like scalar")
{
    if (!backend_available(Backend::Avx2)) {
        return;
    }
    Cloud c;
    for (int i = 0; i < 11; ++i) {
        c.x.push_back(i * 100.0);
        c.y.push_back(0.0);
        c.z.push_back(0.0);
    }
    const Point p{0.0, 0.0, 0.0};
    const auto a = run_within(kernels(Backend::Scalar), c, 0, p, 500.0 * 500.0);
    const auto b = run_within(kernels(Backend::Avx2), c, 0, p, 500.0 * 500.0);
    CHECK(a == b);
    CHECK(a.idx == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});

    const Point up{1.0, 0.0, 0.0};
    CHECK(run_visible(kernels(Backend::Scalar), c, p, up, 0.5) == run_visible(kernels(Backend::Avx2), c, p, up, 0.5));
}

TEST_CASE("backend selection")
{
    CHECK(backend_available(Backend::Scalar));
    CHECK(backend_available(detected_backend()));
    const Backend before = active_backend();
    CHECK(set_backend(Backend::Scalar));
    CHECK(active_backend() == Backend::Scalar);
    CHECK(set_backend(before));
    CHECK(backend_name(Backend::Scalar) == "scalar");
}
