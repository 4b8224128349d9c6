#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "plume/geometry.hpp"
#include "plume/plume_field.hpp"
#include "plume/rng.hpp"

namespace plume {

/// Kinematic state of one drone. elapsed + battery_remaining stays equal
/// to the battery capacity the drone started with.
struct DroneState {
    int id = 1;
    Vec2 position;
    double heading = 0.0;           // degrees from +x
    double elapsed = 0.0;           // s
    double battery_remaining = 0.0; // s
    bool truncated = false;         // last flight ended on battery exhaustion
};

/// One time-stamped point measurement.
struct Sample {
    int drone_id = 0;
    Vec2 position;
    double time = 0.0;  // s, drone clock
    double value = 0.0; // concentration
};

/// Point gas sensor: reads the field exactly, plus optional additive
/// Gaussian noise clamped at zero. Noise draws only occur when
/// noise_std > 0, so noiseless runs are RNG-free.
class SensorModel {
  public:
    explicit SensorModel(double noise_std = 0.0, std::uint64_t rng_seed = 0);

    double noise_std() const { return noise_std_; }
    double measure(const ConcentrationField& field, const Vec2& p);

  private:
    double noise_std_;
    Rng rng_;
};

/// Fly a polyline at fixed speed, sampling every sample_interval meters of
/// arc length plus at every waypoint. The flight truncates exactly when the
/// battery reaches zero, with a final sample at the truncation point.
/// The first waypoint must equal the drone's current position.
std::pair<std::vector<Sample>, DroneState> fly_polyline(DroneState drone,
                                                        const std::vector<Vec2>& waypoints,
                                                        double speed, double sample_interval,
                                                        const ConcentrationField& field,
                                                        SensorModel& sensor);

/// Heading shift of +/-180 degrees (sign drawn at random; both are
/// congruent mod 360), normalized to [0, 360).
double bounce_heading(double heading, Rng& rng);

/// Merge sample streams into deterministic (time, drone_id) order.
std::vector<Sample> merge_samples(std::vector<std::vector<Sample>> streams);

/// CSV export: header line then one row per sample.
void write_samples_csv(std::ostream& os, const std::vector<Sample>& samples);

}  // namespace plume
