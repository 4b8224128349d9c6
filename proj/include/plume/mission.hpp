#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plume/flight_sim.hpp"
#include "plume/kernel_estimator.hpp"
#include "plume/metrics.hpp"
#include "plume/plume_field.hpp"
#include "plume/region_grid.hpp"
#include "plume/vrp_router.hpp"

namespace plume {

enum class Strategy { single_phase, two_phase_random, two_phase_coverage };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// Full mission parameterization. File-facing fields mirror the config
/// keys; the trailing block holds library-level knobs with fixed defaults.
struct MissionConfig {
    Region region{{0.0, 0.0}, 200, 100};
    Vec2 depot{100.0, 0.0};
    int n_drones = 1;
    double speed = 10.0;       // m/s
    double battery_s = 1800.0; // per-drone flight time T_b
    double p1_lane_m = 10.0;
    double p2_lane_m = 2.0;
    std::optional<double> p2_duration_s; // strategy A; absent derives from the budget split
    std::optional<double> sigma_m;       // kernel sigma; absent tracks the phase lane distance
    double radius_factor = 3.0;          // cutoff radius r = factor * sigma
    double c_d = 0.2;                    // danger threshold
    std::optional<double> margin_m;      // bounding-box margin; absent = 2 * p1_lane_m
    Strategy strategy = Strategy::single_phase;
    std::uint64_t rng_seed = 1;

    double sample_interval_m = 1.0;
    double noise_std = 0.0;
    double phase1_budget_frac = 0.6;  // share of T_b reserved for phase 1
    int exact_cap_nodes = 13;
    int subsample_n = 5;

    KernelSpec phase1_kernel() const;
    KernelSpec phase2_kernel() const;
    double margin() const { return margin_m ? *margin_m : 2.0 * p1_lane_m; }
    double phase1_battery() const;
    double phase2_duration() const;

    void validate() const;
};

/// Drone-index heading interval [360(k-1)/N, 360k/N).
struct HeadingInterval {
    double lo_deg;
    double hi_deg;

    bool contains(double deg) const { return deg >= lo_deg && deg < hi_deg; }
};

HeadingInterval heading_interval(int k, int n_drones);

/// Exploration-phase output: coarse map, plume bounding box, flight state.
struct Phase1Result {
    std::vector<Sample> samples;
    EstimateGrid estimate;
    std::optional<Region> bounding_box;
    double elapsed = 0.0;  // phase makespan
    std::vector<DroneState> drones;
    RoutePlan plan;
};

/// Counters reported by the random-search phase.
struct Phase2Stats {
    std::size_t threshold_bounces = 0;  // sampled value fell below C_d
    std::size_t wall_bounces = 0;       // left the boundary rectangle
    std::size_t fresh_redraws = 0;      // heading redrawn after repeated failed bounces
    std::size_t revisited_boxes = 0;    // boxes re-entered at least once
};

struct MissionResult {
    Strategy strategy = Strategy::single_phase;
    std::vector<Sample> phase1_samples;
    std::vector<Sample> phase2_samples;
    std::vector<Sample> samples;  // merged, (time, drone_id) order
    EstimateGrid final_estimate;
    LabelGrid estimated_labels;
    ErrorReport report;
    double phase1_elapsed = 0.0;
    double phase2_elapsed = 0.0;
    double mission_time = 0.0;
    std::optional<Region> phase1_bounding_box;
    std::vector<DroneState> drones;
    Phase2Stats phase2_stats;
};

/// Coverage at the phase-1 resolution: lane graph, VRP (exact when the
/// instance is small enough, heuristic otherwise), flight, coarse
/// estimate, bounding box.
Phase1Result run_phase1(const MissionConfig& config, const ConcentrationField& field);

/// Random-search exploitation: drones head out from the max-estimate
/// point inside the boundary, bouncing off low readings and walls.
/// Returns samples_in plus the new samples, merged.
std::vector<Sample> run_phase2_random(const MissionConfig& config, const ConcentrationField& field,
                                      const Vec2& start, const Region& boundary,
                                      const std::vector<Sample>& samples_in,
                                      std::vector<DroneState>& drones, Phase2Stats* stats = nullptr,
                                      double* elapsed = nullptr,
                                      std::vector<Sample>* new_samples = nullptr);

/// Uniform coverage of the estimated plume box at the phase-2 resolution,
/// starting from the max-estimate point with the remaining battery.
std::vector<Sample> run_phase2_coverage(const MissionConfig& config,
                                        const ConcentrationField& field, const Region& sub,
                                        const Vec2& start, const std::vector<Sample>& samples_in,
                                        std::vector<DroneState>& drones, double* elapsed = nullptr,
                                        std::vector<Sample>* new_samples = nullptr);

/// Full mission under the configured strategy, scored against the
/// ground-truth labels of the given field.
MissionResult run_mission(const MissionConfig& config, const ConcentrationField& field);

/// Mission log: per-phase sample CSVs plus one summary row.
void write_mission_summary(std::ostream& os, const MissionConfig& config,
                           const MissionResult& result);

}  // namespace plume
