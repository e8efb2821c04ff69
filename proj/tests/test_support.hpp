#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "lisl/scenario.hpp"

namespace lisl::test {

inline bool rel_close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("lisl-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path write(const std::string& name, const std::string& content) const
    {
        const auto p = path_ / name;
        std::ofstream(p) << content;
        return p;
    }

private:
    std::filesystem::path path_;
};

// A reduced Starlink-like shell that keeps scenario tests fast.
inline ScenarioConfig small_config(int slots = 20)
{
    ScenarioConfig cfg;
    cfg.constellation = {12, 22, 53.0, 550.0, 0, 360.0, 0.0};
    cfg.stations = {
        {"New York", 40.7128, -74.0060, 0.0, 10.0},
        {"London", 51.5074, -0.1278, 0.0, 10.0},
        {"Istanbul", 41.0082, 28.9784, 0.0, 10.0},
    };
    cfg.pairs = {{"New York", "London"}, {"New York", "Istanbul"}};
    cfg.lisl_ranges_km = {3000.0, 5016.0};
    cfg.latency.setup_delays_ms = {1.0, 10.0, 100.0, 1000.0};
    cfg.num_slots = slots;
    return cfg;
}

} // namespace lisl::test
