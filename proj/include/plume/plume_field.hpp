#pragma once

#include <iosfwd>

#include "plume/geometry.hpp"
#include "plume/label_grid.hpp"
#include "plume/region_grid.hpp"

namespace plume {

/// Continuous point-source release driving the synthetic ground truth.
/// Dispersion widths follow the power laws sigma_y = a_y * x'^b_y and
/// sigma_z = a_z * x'^b_z in downwind coordinates.
struct PlumeSource {
    Vec2 position;                 // m
    double emission_rate = 100.0;  // Q, g/s
    double effective_height = 0.0; // H, m
    double wind_speed = 2.0;       // u, m/s
    double wind_direction = 0.0;   // degrees from +x axis
    double a_y = 0.22;
    double b_y = 0.9;
    double a_z = 0.22;
    double b_z = 0.9;

    void validate() const;
};

/// Concentration the drones fly through at or above a given level.
struct DangerThreshold {
    double c_d;  // g/m^3

    explicit DangerThreshold(double value);
};

/// Ground-truth Gaussian plume field, queryable at any point on the
/// fixed flight plane z = sensor_altitude. Immutable after construction.
class ConcentrationField {
  public:
    explicit ConcentrationField(const PlumeSource& source, double sensor_altitude = 0.0);

    const PlumeSource& source() const { return source_; }
    double sensor_altitude() const { return altitude_; }

    /// Reflected Gaussian plume:
    ///   C = Q / (2 pi u sy sz) * exp(-y'^2 / (2 sy^2))
    ///       * [exp(-(z-H)^2 / (2 sz^2)) + exp(-(z+H)^2 / (2 sz^2))]
    /// Zero at and upwind of the source plane (x' <= 0).
    double concentration_at(const Vec2& p) const;

    /// Maximum over box centers of the region, used to pick thresholds.
    double max_over_region(const Region& region) const;

  private:
    PlumeSource source_;
    double altitude_;
    Vec2 downwind_;   // unit vector along the wind
    Vec2 crosswind_;  // unit vector 90 degrees left of the wind
};

/// Label every 1x1 m box of the region by the maximum concentration over
/// an n x n uniform subsample of the box (inclusive threshold).
LabelGrid ground_truth_labels(const ConcentrationField& field, const Region& region,
                              const DangerThreshold& threshold, int subsample_n = 5);

/// Plain-text dump of concentrations at box centers, row-major.
/// First line names the header fields, second carries their values.
void dump_concentration_grid(std::ostream& os, const ConcentrationField& field,
                             const Region& region);

}  // namespace plume
