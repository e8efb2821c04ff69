#include "lisl/orbital.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lisl/errors.hpp"

namespace lisl {

using std::numbers::pi;

void ConstellationSpec::validate() const
{
    if (num_planes < 1) {
        throw ConfigError("constellation: num_planes must be >= 1");
    }
    if (sats_per_plane < 1) {
        throw ConfigError("constellation: sats_per_plane must be >= 1");
    }
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
        throw ConfigError("constellation: inclination must be within [0, 180] degrees");
    }
    if (phasing_factor < 0 || phasing_factor >= num_planes) {
        throw ConfigError("constellation: phasing_factor must satisfy 0 <= F < num_planes");
    }
    if (!(altitude_km > 0.0)) {
        throw ConfigError("constellation: altitude must be > 0 km");
    }
    if (!std::isfinite(raan_spread_deg) || !std::isfinite(epoch_s)) {
        throw ConfigError("constellation: raan_spread and epoch must be finite");
    }
}

std::string SatelliteElement::id() const
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "P%02d-S%02d", plane, slot);
    return buf;
}

void GroundStation::validate() const
{
    if (name.empty()) {
        throw ConfigError("ground station: name must be nonempty");
    }
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
        throw ConfigError("ground station '" + name + "': latitude outside [-90, 90]");
    }
    if (!(longitude_deg > -180.0 && longitude_deg <= 180.0)) {
        throw ConfigError("ground station '" + name + "': longitude outside (-180, 180]");
    }
    if (!(min_elevation_deg >= 0.0 && min_elevation_deg < 90.0)) {
        throw ConfigError("ground station '" + name + "': min_elevation outside [0, 90)");
    }
    if (!std::isfinite(altitude_m)) {
        throw ConfigError("ground station '" + name + "': altitude must be finite");
    }
}

double Position3D::norm() const { return std::sqrt(x * x + y * y + z * z); }

double distance_km(const Position3D& a, const Position3D& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<SatelliteElement> build_constellation(const ConstellationSpec& spec)
{
    spec.validate();

    const double radius = constants::kEarthRadiusKm + spec.altitude_km;
    const double rate = std::sqrt(constants::kMuKm3PerS2 / (radius * radius * radius));
    const double incl = deg_to_rad(spec.inclination_deg);
    const double raan_step = deg_to_rad(spec.raan_spread_deg) / spec.num_planes;
    const double total = static_cast<double>(spec.num_planes) * spec.sats_per_plane;

    std::vector<SatelliteElement> out;
    out.reserve(static_cast<std::size_t>(spec.total()));
    for (int p = 0; p < spec.num_planes; ++p) {
        for (int s = 0; s < spec.sats_per_plane; ++s) {
            SatelliteElement e;
            e.plane = p;
            e.slot = s;
            e.raan = p * raan_step;
            e.inclination = incl;
            e.initial_phase = 2.0 * pi * s / spec.sats_per_plane +
                              2.0 * pi * spec.phasing_factor * p / total;
            e.orbital_radius = radius;
            e.angular_rate = rate;
            out.push_back(e);
        }
    }
    return out;
}

Position3D propagate(const SatelliteElement& elem, double t)
{
    const double u = elem.initial_phase + elem.angular_rate * t;
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(elem.raan), so = std::sin(elem.raan);
    const double ci = std::cos(elem.inclination), si = std::sin(elem.inclination);
    const double r = elem.orbital_radius;
    return {r * (co * cu - so * su * ci), r * (so * cu + co * su * ci), r * (su * si), Frame::ECI};
}

Position3D eci_to_ecef(const Position3D& pos, double t)
{
    if (pos.frame != Frame::ECI) {
        throw FrameError("eci_to_ecef: input position is not in the ECI frame");
    }
    const double theta = constants::kEarthRotationRadPerS * t;
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * pos.x + s * pos.y, -s * pos.x + c * pos.y, pos.z, Frame::ECEF};
}

Position3D ground_station_position(const GroundStation& gs)
{
    const double r = constants::kEarthRadiusKm + gs.altitude_m / 1000.0;
    const double lat = deg_to_rad(gs.latitude_deg);
    const double lon = deg_to_rad(gs.longitude_deg);
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat),
            Frame::ECEF};
}

LatLon ecef_to_latlon(const Position3D& pos)
{
    const double horiz = std::hypot(pos.x, pos.y);
    return {rad_to_deg(std::atan2(pos.z, horiz)), rad_to_deg(std::atan2(pos.y, pos.x))};
}

double elevation_angle(const Position3D& gs_pos, const Position3D& sat_pos)
{
    const double dx = sat_pos.x - gs_pos.x;
    const double dy = sat_pos.y - gs_pos.y;
    const double dz = sat_pos.z - gs_pos.z;
    if (gs_pos.norm() == 0.0 || (dx == 0.0 && dy == 0.0 && dz == 0.0)) {
        throw DomainError("elevation_angle: station and satellite positions coincide");
    }
    // atan2 of the vertical and horizontal components stays accurate near the
    // zenith, where asin of a normalized dot product does not.
    const double up = dx * gs_pos.x + dy * gs_pos.y + dz * gs_pos.z;
    const double cx = dy * gs_pos.z - dz * gs_pos.y;
    const double cy = dz * gs_pos.x - dx * gs_pos.z;
    const double cz = dx * gs_pos.y - dy * gs_pos.x;
    return rad_to_deg(std::atan2(up, std::sqrt(cx * cx + cy * cy + cz * cz)));
}

double great_circle_distance(const GroundStation& a, const GroundStation& b)
{
    const double lat1 = deg_to_rad(a.latitude_deg);
    const double lat2 = deg_to_rad(b.latitude_deg);
    const double dlat = lat2 - lat1;
    const double dlon = deg_to_rad(b.longitude_deg - a.longitude_deg);
    const double sl = std::sin(dlat / 2.0);
    const double so = std::sin(dlon / 2.0);
    const double h = std::min(1.0, sl * sl + std::cos(lat1) * std::cos(lat2) * so * so);
    return 2.0 * constants::kEarthRadiusKm * 1000.0 * std::asin(std::sqrt(h));
}

double max_lisl_range(double altitude_km, double atmosphere_height_km)
{
    if (!(atmosphere_height_km >= 0.0) || !(altitude_km > atmosphere_height_km)) {
        throw DomainError("max_lisl_range: requires altitude > atmosphere_height >= 0");
    }
    const double ro = constants::kEarthRadiusKm + altitude_km;
    const double ra = constants::kEarthRadiusKm + atmosphere_height_km;
    return 2.0 * std::sqrt(ro * ro - ra * ra);
}

} // namespace lisl
