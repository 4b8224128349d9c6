#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "plume/flight_sim.hpp"
#include "plume/plume_field.hpp"
#include "plume/region_grid.hpp"

namespace plume {

/// Gaussian kernel with cutoff radius; conventional choice is r = 3 sigma.
struct KernelSpec {
    double sigma;   // m
    double radius;  // m

    explicit KernelSpec(double sigma_m, double radius_m);
    static KernelSpec with_default_radius(double sigma_m, double factor = 3.0) {
        return KernelSpec(sigma_m, factor * sigma_m);
    }
};

/// Kernel estimates at box centers plus the coverage mask (boxes with at
/// least one contributing sample). Unsampled boxes carry the no-data
/// default of zero.
struct EstimateGrid {
    Region region;
    std::vector<double> values;
    std::vector<std::int32_t> counts;

    explicit EstimateGrid(const Region& r)
        : region(r), values(r.box_count(), 0.0), counts(r.box_count(), 0) {}

    bool covered(std::size_t i) const { return counts[i] > 0; }

    /// Index of the maximum estimate; ties break to the lowest box index.
    std::size_t argmax() const;
};

/// Distance-weighted average of all samples within the cutoff radius,
/// with weights proportional to exp(-d^2 / (2 sigma^2)). Returns the
/// estimate and the number of contributing samples; (0, 0) if none are
/// in range.
std::pair<double, int> estimate_at(const std::vector<Sample>& samples, const Vec2& x,
                                   const KernelSpec& kernel);

/// Kernel estimate at every box center. Uses a uniform bucket index so a
/// query only touches samples within the cutoff radius.
EstimateGrid estimate_grid(const std::vector<Sample>& samples, const Region& region,
                           const KernelSpec& kernel);

/// Axis-aligned bounding rectangle of all boxes at or above the threshold,
/// expanded by margin, snapped outward to the 1 m box lattice and clipped
/// to the region. Empty when no box reaches the threshold.
std::optional<Region> plume_bounding_box(const EstimateGrid& grid, const DangerThreshold& threshold,
                                         double margin);

/// Matrix dump of estimates plus a parallel 0/1 coverage-mask matrix.
void dump_estimate_grid(std::ostream& os, const EstimateGrid& grid);

}  // namespace plume
