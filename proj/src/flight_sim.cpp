#include "plume/flight_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace plume {

namespace {
// Arc-length positions closer than this are considered the same sample point.
constexpr double kArcEps = 1e-9;
}

SensorModel::SensorModel(double noise_std, std::uint64_t rng_seed)
    : noise_std_(noise_std), rng_(rng_seed) {
    if (noise_std < 0.0) throw std::invalid_argument("SensorModel: noise_std must be >= 0");
}

double SensorModel::measure(const ConcentrationField& field, const Vec2& p) {
    double v = field.concentration_at(p);
    if (noise_std_ > 0.0) {
        v += noise_std_ * rng_.gaussian();
    }
    return std::max(v, 0.0);
}

std::pair<std::vector<Sample>, DroneState> fly_polyline(DroneState drone,
                                                        const std::vector<Vec2>& waypoints,
                                                        double speed, double sample_interval,
                                                        const ConcentrationField& field,
                                                        SensorModel& sensor) {
    if (!(sample_interval > 0.0)) {
        throw std::invalid_argument("fly_polyline: sample_interval must be > 0");
    }
    if (!(speed > 0.0)) throw std::invalid_argument("fly_polyline: speed must be > 0");
    if (waypoints.empty() || distance(waypoints.front(), drone.position) > 1e-9) {
        throw std::invalid_argument("fly_polyline: first waypoint must be the drone position");
    }

    // cumulative arc length at each waypoint
    std::vector<double> cum(waypoints.size(), 0.0);
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        cum[i] = cum[i - 1] + distance(waypoints[i - 1], waypoints[i]);
    }
    double length = cum.back();

    const double reach = drone.battery_remaining * speed;
    drone.truncated = length > reach + kArcEps;
    if (drone.truncated) length = reach;

    // sample positions: the regular grid plus every waypoint, deduplicated
    std::vector<double> stops;
    const auto n_grid = static_cast<std::size_t>(std::floor(length / sample_interval + kArcEps));
    stops.reserve(n_grid + waypoints.size() + 2);
    for (std::size_t k = 0; k <= n_grid; ++k) stops.push_back(k * sample_interval);
    for (double s : cum) {
        if (s <= length + kArcEps) stops.push_back(std::min(s, length));
    }
    if (drone.truncated) stops.push_back(length);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end(),
                            [](double a, double b) { return std::abs(a - b) <= kArcEps; }),
                stops.end());

    std::vector<Sample> samples;
    samples.reserve(stops.size());
    std::size_t seg = 1;
    Vec2 last_pos = drone.position;
    for (double s : stops) {
        while (seg + 1 < cum.size() && cum[seg] < s - kArcEps) ++seg;
        Vec2 p;
        if (waypoints.size() == 1) {
            p = waypoints[0];
        } else {
            const double seg_len = cum[seg] - cum[seg - 1];
            const double t = seg_len > 0.0 ? std::clamp((s - cum[seg - 1]) / seg_len, 0.0, 1.0) : 0.0;
            p = waypoints[seg - 1] + (waypoints[seg] - waypoints[seg - 1]) * t;
        }
        samples.push_back({drone.id, p, drone.elapsed + s / speed, sensor.measure(field, p)});
        if (distance(p, last_pos) > kArcEps) {
            drone.heading = normalize_deg(std::atan2(p.y - last_pos.y, p.x - last_pos.x) * 180.0 /
                                          3.141592653589793238462643383279502884);
        }
        last_pos = p;
    }

    const double dt = length / speed;
    drone.elapsed += dt;
    drone.battery_remaining = std::max(0.0, drone.battery_remaining - dt);
    drone.position = last_pos;
    return {std::move(samples), drone};
}

double bounce_heading(double heading, Rng& rng) {
    const double shift = rng.coin() ? 180.0 : -180.0;
    return normalize_deg(heading + shift);
}

std::vector<Sample> merge_samples(std::vector<std::vector<Sample>> streams) {
    std::vector<Sample> merged;
    std::size_t total = 0;
    for (const auto& s : streams) total += s.size();
    merged.reserve(total);
    for (auto& s : streams) {
        merged.insert(merged.end(), s.begin(), s.end());
    }
    std::stable_sort(merged.begin(), merged.end(), [](const Sample& a, const Sample& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.drone_id < b.drone_id;
    });
    return merged;
}

void write_samples_csv(std::ostream& os, const std::vector<Sample>& samples) {
    os << "drone_id,time_s,x_m,y_m,value\n";
    char buf[128];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%.9g,%.9g", s.drone_id, s.time, s.position.x,
                      s.position.y, s.value);
        os << buf << '\n';
    }
}

}  // namespace plume
