#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "plume/region_grid.hpp"

namespace plume {

/// No route plan satisfies the battery constraint.
class InfeasibleError : public std::runtime_error {
  public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Instance exceeds the exact solver's node cap.
class InstanceTooLargeError : public std::runtime_error {
  public:
    explicit InstanceTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// Min-max routing instance over a lane graph.
struct VrpInstance {
    const LaneGraph* graph;
    int n_drones = 1;
    double speed = 10.0;    // m/s
    double battery_s = 1800.0;

    void validate() const;
};

/// Per-drone ordered node visits. Routes are open (no return to the
/// depot) and every route starts at node 1.
struct RoutePlan {
    std::vector<std::vector<int>> routes;  // node ids, routes[k] for drone k
    std::vector<double> flight_times;      // t_k, s
    double makespan = 0.0;                 // U = max_k t_k
};

/// Flight time of one route: sum of consecutive leg distances over speed.
double route_time(const std::vector<int>& route, const LaneGraph& graph, double speed);

/// Provably minimal-makespan plan by branch and bound over lane-to-drone
/// assignments, lane orders and traversal directions. Only for small
/// instances (node count at or below max_nodes).
RoutePlan solve_exact(const VrpInstance& instance, int max_nodes = 13);

/// LPT lane assignment balancing per-drone lane length, nearest-neighbor
/// ordering from the depot, then 2-opt on the lane order (with optimal
/// per-order directions) and inter-route moves until no improvement.
RoutePlan solve_heuristic(const VrpInstance& instance);

/// Checks every plan invariant; returns human-readable violations,
/// empty when the plan is valid. Never throws.
std::vector<std::string> validate(const RoutePlan& plan, const VrpInstance& instance);

/// Plain-text plan format: a header naming and carrying N, v, T_b, then
/// one comma-separated node-id line per route.
void write_plan(std::ostream& os, const RoutePlan& plan, const VrpInstance& instance);

/// Parses the write_plan format; returns the routes with times recomputed
/// against the given graph.
RoutePlan read_plan(std::istream& is, const LaneGraph& graph);

}  // namespace plume
