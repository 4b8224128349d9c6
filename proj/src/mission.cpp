#include "plume/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "plume/rng.hpp"

namespace plume {

namespace {
// stream salts for deriving independent per-drone, per-phase RNGs from the
// mission seed
constexpr std::uint64_t kSensorStream = 0x5e;
constexpr std::uint64_t kHeadingStream = 0x4d;

SensorModel sensor_for(const MissionConfig& config, int drone_id, int phase) {
    return SensorModel(config.noise_std,
                       mix_seed(config.rng_seed, kSensorStream + static_cast<std::uint64_t>(phase),
                                static_cast<std::uint64_t>(drone_id)));
}
}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::single_phase: return "single_phase";
        case Strategy::two_phase_random: return "two_phase_random";
        case Strategy::two_phase_coverage: return "two_phase_coverage";
    }
    return "single_phase";
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "single_phase") return Strategy::single_phase;
    if (name == "two_phase_random") return Strategy::two_phase_random;
    if (name == "two_phase_coverage") return Strategy::two_phase_coverage;
    throw std::invalid_argument("unknown strategy: " + name);
}

KernelSpec MissionConfig::phase1_kernel() const {
    return KernelSpec::with_default_radius(sigma_m ? *sigma_m : p1_lane_m, radius_factor);
}

KernelSpec MissionConfig::phase2_kernel() const {
    return KernelSpec::with_default_radius(sigma_m ? *sigma_m : p2_lane_m, radius_factor);
}

double MissionConfig::phase1_battery() const {
    switch (strategy) {
        case Strategy::single_phase: return battery_s;
        case Strategy::two_phase_random: return battery_s - phase2_duration();
        case Strategy::two_phase_coverage: return battery_s * phase1_budget_frac;
    }
    return battery_s;
}

double MissionConfig::phase2_duration() const {
    return p2_duration_s ? *p2_duration_s : (1.0 - phase1_budget_frac) * battery_s;
}

void MissionConfig::validate() const {
    if (n_drones < 1) throw std::invalid_argument("n_drones must be >= 1");
    if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
    if (!(battery_s > 0.0)) throw std::invalid_argument("battery_s must be > 0");
    if (!(p1_lane_m > 0.0)) throw std::invalid_argument("p1_lane_m must be > 0");
    if (p1_lane_m > region.width()) throw std::invalid_argument("p1_lane_m exceeds region width");
    if (!(p2_lane_m > 0.0)) throw std::invalid_argument("p2_lane_m must be > 0");
    if (p2_duration_s && *p2_duration_s < 0.0) {
        throw std::invalid_argument("p2_duration_s must be >= 0");
    }
    if (!region.contains(depot)) throw std::invalid_argument("depot must lie inside the region");
    if (sigma_m && !(*sigma_m > 0.0)) throw std::invalid_argument("sigma_m must be > 0");
    if (!(radius_factor > 0.0)) throw std::invalid_argument("radius_factor must be > 0");
    if (!(c_d > 0.0)) throw std::invalid_argument("c_d must be > 0");
    if (margin_m && *margin_m < 0.0) throw std::invalid_argument("margin_m must be >= 0");
    if (!(sample_interval_m > 0.0)) throw std::invalid_argument("sample interval must be > 0");
    if (noise_std < 0.0) throw std::invalid_argument("noise_std must be >= 0");
    if (!(phase1_budget_frac > 0.0 && phase1_budget_frac < 1.0)) {
        throw std::invalid_argument("phase1_budget_frac must lie in (0, 1)");
    }
    if (subsample_n < 1) throw std::invalid_argument("subsample_n must be >= 1");
    if (strategy != Strategy::single_phase && phase1_battery() <= 0.0) {
        throw std::invalid_argument("phase budgets exceed the battery");
    }
}

HeadingInterval heading_interval(int k, int n_drones) {
    if (n_drones < 1) throw std::out_of_range("heading_interval: need at least one drone");
    if (k < 1 || k > n_drones) throw std::out_of_range("heading_interval: drone index out of range");
    return {360.0 * (k - 1) / n_drones, 360.0 * k / n_drones};
}

Phase1Result run_phase1(const MissionConfig& config, const ConcentrationField& field) {
    config.validate();

    const LaneGraph graph = build_lane_graph(config.region, config.p1_lane_m, config.depot);
    VrpInstance instance{&graph, config.n_drones, config.speed, config.phase1_battery()};
    const RoutePlan plan = graph.node_count() <= config.exact_cap_nodes
                               ? solve_exact(instance, config.exact_cap_nodes)
                               : solve_heuristic(instance);

    Phase1Result result{.samples = {},
                        .estimate = EstimateGrid(config.region),
                        .bounding_box = std::nullopt,
                        .elapsed = 0.0,
                        .drones = {},
                        .plan = plan};

    std::vector<std::vector<Sample>> streams;
    for (int k = 0; k < config.n_drones; ++k) {
        DroneState drone{.id = k + 1,
                         .position = config.depot,
                         .heading = 90.0,
                         .elapsed = 0.0,
                         .battery_remaining = config.battery_s};
        SensorModel sensor = sensor_for(config, drone.id, 1);

        std::vector<Vec2> waypoints;
        waypoints.reserve(plan.routes[k].size());
        for (int id : plan.routes[k]) waypoints.push_back(graph.node(id));

        auto [samples, state] =
            fly_polyline(drone, waypoints, config.speed, config.sample_interval_m, field, sensor);
        result.elapsed = std::max(result.elapsed, state.elapsed);
        streams.push_back(std::move(samples));
        result.drones.push_back(state);
    }

    // phases are sequential: drones that finish early hold position (and
    // keep draining battery) until the fleet-wide makespan
    for (auto& d : result.drones) {
        d.battery_remaining = std::max(0.0, d.battery_remaining - (result.elapsed - d.elapsed));
        d.elapsed = result.elapsed;
    }

    result.samples = merge_samples(std::move(streams));
    result.estimate = estimate_grid(result.samples, config.region, config.phase1_kernel());
    result.bounding_box =
        plume_bounding_box(result.estimate, DangerThreshold(config.c_d), config.margin());
    return result;
}

std::vector<Sample> run_phase2_random(const MissionConfig& config, const ConcentrationField& field,
                                      const Vec2& start, const Region& boundary,
                                      const std::vector<Sample>& samples_in,
                                      std::vector<DroneState>& drones, Phase2Stats* stats,
                                      double* elapsed, std::vector<Sample>* new_samples) {
    if (!boundary.contains(start)) {
        throw std::invalid_argument("run_phase2_random: start must lie inside the boundary");
    }
    const Rect walls = boundary.rect();
    const double duration = config.phase2_duration();
    const double step = config.sample_interval_m;
    const double step_t = step / config.speed;

    Phase2Stats local_stats;
    double phase_elapsed = 0.0;
    std::vector<std::vector<Sample>> streams;

    for (auto& drone : drones) {
        const int k = drone.id;
        Rng rng(mix_seed(config.rng_seed, kHeadingStream, static_cast<std::uint64_t>(k)));
        SensorModel sensor = sensor_for(config, k, 2);

        const HeadingInterval interval = heading_interval(k, config.n_drones);
        drone.position = start;
        drone.heading = rng.uniform(interval.lo_deg, interval.hi_deg);

        const double deadline = drone.elapsed + duration;
        std::vector<Sample> stream;
        stream.push_back({k, drone.position, drone.elapsed, sensor.measure(field, drone.position)});

        std::unordered_set<std::size_t> visited;
        std::size_t cur_box = box_of(config.region, drone.position);
        visited.insert(cur_box);
        std::unordered_set<std::size_t> revisited;
        int consecutive_bounces = 0;
        const double t0 = drone.elapsed;

        while (drone.elapsed + step_t <= deadline + 1e-9 &&
               drone.battery_remaining >= step_t - 1e-12) {
            Vec2 next = drone.position + heading_dir(drone.heading) * step;
            const bool outside = !walls.contains(next);
            if (outside) next = walls.clamp(next);

            drone.position = next;
            drone.elapsed += step_t;
            drone.battery_remaining = std::max(0.0, drone.battery_remaining - step_t);
            const double value = sensor.measure(field, next);
            stream.push_back({k, next, drone.elapsed, value});

            const std::size_t box = box_of(config.region, next);
            if (box != cur_box) {
                if (!visited.insert(box).second) revisited.insert(box);
                cur_box = box;
            }

            if (value < config.c_d || outside) {
                if (outside) {
                    ++local_stats.wall_bounces;
                } else {
                    ++local_stats.threshold_bounces;
                }
                if (consecutive_bounces >= 3) {
                    drone.heading = rng.uniform(interval.lo_deg, interval.hi_deg);
                    ++local_stats.fresh_redraws;
                    consecutive_bounces = 0;
                } else {
                    drone.heading = bounce_heading(drone.heading, rng);
                    ++consecutive_bounces;
                }
            } else {
                consecutive_bounces = 0;
            }
        }
        local_stats.revisited_boxes += revisited.size();
        phase_elapsed = std::max(phase_elapsed, drone.elapsed - t0);
        streams.push_back(std::move(stream));
    }

    if (stats) *stats = local_stats;
    if (elapsed) *elapsed = phase_elapsed;
    if (new_samples) *new_samples = merge_samples(streams);

    streams.push_back(samples_in);
    return merge_samples(std::move(streams));
}

std::vector<Sample> run_phase2_coverage(const MissionConfig& config,
                                        const ConcentrationField& field, const Region& sub,
                                        const Vec2& start, const std::vector<Sample>& samples_in,
                                        std::vector<DroneState>& drones, double* elapsed,
                                        std::vector<Sample>* new_samples) {
    if (!config.region.contains(sub.origin()) ||
        !config.region.contains({sub.origin().x + sub.width(), sub.origin().y + sub.height()})) {
        throw std::invalid_argument("run_phase2_coverage: sub-region must lie inside the region");
    }

    // a box narrower than the lane distance still gets one central lane
    const double lane_distance = std::min(config.p2_lane_m, static_cast<double>(sub.width()));
    const LaneGraph graph = build_lane_graph(sub, lane_distance, start);

    double battery = config.battery_s;
    for (const auto& d : drones) battery = std::min(battery, d.battery_remaining);

    VrpInstance instance{&graph, config.n_drones, config.speed, battery};
    RoutePlan plan;
    try {
        plan = graph.node_count() <= config.exact_cap_nodes
                   ? solve_exact(instance, config.exact_cap_nodes)
                   : solve_heuristic(instance);
    } catch (const InfeasibleError&) {
        // coverage of the feasible prefix: plan without the battery cap and
        // let the flight truncate at exhaustion
        VrpInstance relaxed = instance;
        relaxed.battery_s = std::numeric_limits<double>::infinity();
        plan = solve_heuristic(relaxed);
    }

    double phase_elapsed = 0.0;
    std::vector<std::vector<Sample>> streams;
    for (std::size_t k = 0; k < drones.size(); ++k) {
        DroneState& drone = drones[k];
        drone.position = start;
        SensorModel sensor = sensor_for(config, drone.id, 2);

        std::vector<Vec2> waypoints;
        waypoints.reserve(plan.routes[k].size());
        for (int id : plan.routes[k]) waypoints.push_back(graph.node(id));

        const double t0 = drone.elapsed;
        auto [samples, state] =
            fly_polyline(drone, waypoints, config.speed, config.sample_interval_m, field, sensor);
        drone = state;
        phase_elapsed = std::max(phase_elapsed, drone.elapsed - t0);
        streams.push_back(std::move(samples));
    }

    if (elapsed) *elapsed = phase_elapsed;
    if (new_samples) *new_samples = merge_samples(streams);
    streams.push_back(samples_in);
    return merge_samples(std::move(streams));
}

MissionResult run_mission(const MissionConfig& config, const ConcentrationField& field) {
    config.validate();

    Phase1Result phase1 = run_phase1(config, field);

    MissionResult result{.strategy = config.strategy,
                         .phase1_samples = phase1.samples,
                         .phase2_samples = {},
                         .samples = phase1.samples,
                         .final_estimate = phase1.estimate,
                         .estimated_labels = LabelGrid(config.region),
                         .report = {},
                         .phase1_elapsed = phase1.elapsed,
                         .phase2_elapsed = 0.0,
                         .mission_time = phase1.elapsed,
                         .phase1_bounding_box = phase1.bounding_box,
                         .drones = phase1.drones,
                         .phase2_stats = {}};

    const bool two_phase = config.strategy != Strategy::single_phase;
    if (two_phase && phase1.bounding_box) {
        const Vec2 start = config.region.box_center(phase1.estimate.argmax());
        if (config.strategy == Strategy::two_phase_random) {
            result.samples =
                run_phase2_random(config, field, start, *phase1.bounding_box, phase1.samples,
                                  result.drones, &result.phase2_stats, &result.phase2_elapsed,
                                  &result.phase2_samples);
        } else {
            result.samples =
                run_phase2_coverage(config, field, *phase1.bounding_box, start, phase1.samples,
                                    result.drones, &result.phase2_elapsed, &result.phase2_samples);
        }
        result.mission_time = result.phase1_elapsed + result.phase2_elapsed;
        result.final_estimate = estimate_grid(result.samples, config.region, config.phase2_kernel());
    }

    result.estimated_labels = classify(result.final_estimate, DangerThreshold(config.c_d));
    const LabelGrid truth =
        ground_truth_labels(field, config.region, DangerThreshold(config.c_d), config.subsample_n);
    result.report = score(truth, result.estimated_labels);
    return result;
}

void write_mission_summary(std::ostream& os, const MissionConfig& config,
                           const MissionResult& result) {
    os << "strategy,seed,phase1_s,phase2_s,mission_time_s,fn_pct,fp_pct,total_pct,acquired,"
          "revisited_boxes\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%llu,%.9g,%.9g,%.9g,%.17g,%.17g,%.17g,%d,%zu",
                  to_string(result.strategy).c_str(),
                  static_cast<unsigned long long>(config.rng_seed), result.phase1_elapsed,
                  result.phase2_elapsed, result.mission_time, result.report.fn_pct,
                  result.report.fp_pct, result.report.total_pct,
                  result.report.plume_acquired ? 1 : 0, result.phase2_stats.revisited_boxes);
    os << buf << '\n';
}

}  // namespace plume
