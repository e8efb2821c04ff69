#pragma once

// Walker-delta constellation generation, two-body circular propagation and
// spherical-Earth geodesy.

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace lisl {

namespace constants {
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kMuKm3PerS2 = 398600.4418;
inline constexpr double kEarthRotationRadPerS = 7.2921159e-5;
inline constexpr double kLightSpeedMPerS = 299'792'458.0;
inline constexpr double kFiberSpeedMPerS = 204'287'876.0;
} // namespace constants

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct ConstellationSpec {
    int num_planes = 24;
    int sats_per_plane = 66;
    double inclination_deg = 53.0;
    double altitude_km = 550.0;
    int phasing_factor = 0;
    double raan_spread_deg = 360.0;
    double epoch_s = 0.0;

    // Throws ConfigError naming the first violated invariant.
    void validate() const;
    int total() const { return num_planes * sats_per_plane; }
};

struct SatelliteElement {
    int plane = 0;
    int slot = 0;
    double raan = 0.0;           // rad
    double inclination = 0.0;    // rad
    double initial_phase = 0.0;  // argument of latitude at t = 0, rad
    double orbital_radius = 0.0; // km
    double angular_rate = 0.0;   // rad/s

    // "P{plane:02}-S{sat:02}"
    std::string id() const;
    double period() const { return 2.0 * std::numbers::pi / angular_rate; }
};

struct GroundStation {
    std::string name;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;
    double min_elevation_deg = 25.0;

    void validate() const;
};

enum class Frame : std::uint8_t { ECI, ECEF };

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    Frame frame = Frame::ECI;

    double norm() const;
};

double distance_km(const Position3D& a, const Position3D& b);

std::vector<SatelliteElement> build_constellation(const ConstellationSpec& spec);

// ECI position at t seconds after the element reference time.
Position3D propagate(const SatelliteElement& elem, double t);

// Rotates by the Earth rotation angle accumulated over t seconds. Throws FrameError
// unless pos is ECI.
Position3D eci_to_ecef(const Position3D& pos, double t);

Position3D ground_station_position(const GroundStation& gs);

struct LatLon {
    double latitude_deg;
    double longitude_deg;
};
LatLon ecef_to_latlon(const Position3D& pos);

// Degrees above the local horizontal plane at gs_pos, in [-90, 90].
double elevation_angle(const Position3D& gs_pos, const Position3D& sat_pos);

// Haversine distance in meters on a sphere of radius kEarthRadiusKm.
double great_circle_distance(const GroundStation& a, const GroundStation& b);

// Chord between two satellites at `altitude_km` that grazes a shell at
// `atmosphere_height_km`.
double max_lisl_range(double altitude_km, double atmosphere_height_km);

} // namespace lisl
