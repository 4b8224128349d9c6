#include "plume/vrp_router.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace plume {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTimeTol = 1e-9;

struct Lane {
    int a, b;       // node ids of the paired endpoints
    double length;  // m
};

std::vector<Lane> lanes_of(const LaneGraph& graph) {
    std::vector<Lane> lanes;
    lanes.reserve(graph.lane_pairs().size());
    for (const auto& [a, b] : graph.lane_pairs()) {
        lanes.push_back({a, b, graph.distance(a, b)});
    }
    return lanes;
}

// Minimal path length for a fixed lane order starting at the depot,
// optimizing traversal directions by DP over the two exit endpoints.
// Returns the length in meters and the chosen entry endpoint per lane.
double best_directions(const LaneGraph& graph, const std::vector<Lane>& lanes,
                       const std::vector<int>& order, std::vector<bool>* enter_at_a) {
    if (order.empty()) {
        if (enter_at_a) enter_at_a->clear();
        return 0.0;
    }
    const std::size_t m = order.size();
    // cost[e]: path length ending at endpoint e of the current lane (0 = exited at a, 1 = at b)
    thread_local std::vector<std::array<double, 2>> cost;
    thread_local std::vector<std::array<int, 2>> from;
    cost.assign(m, {0.0, 0.0});
    from.assign(m, {0, 0});

    const Lane& l0 = lanes[order[0]];
    cost[0][0] = graph.distance(1, l0.b) + l0.length;  // entered at b, exited at a
    cost[0][1] = graph.distance(1, l0.a) + l0.length;  // entered at a, exited at b
    from[0] = {-1, -1};
    for (std::size_t i = 1; i < m; ++i) {
        const Lane& li = lanes[order[i]];
        const Lane& lp = lanes[order[i - 1]];
        for (int e = 0; e < 2; ++e) {
            const int entry = e == 0 ? li.b : li.a;
            double best = kInf;
            int arg = 0;
            for (int pe = 0; pe < 2; ++pe) {
                const int prev_exit = pe == 0 ? lp.a : lp.b;
                const double c = cost[i - 1][pe] + graph.distance(prev_exit, entry);
                if (c < best) {
                    best = c;
                    arg = pe;
                }
            }
            cost[i][e] = best + li.length;
            from[i][e] = arg;
        }
    }
    int e = cost[m - 1][0] <= cost[m - 1][1] ? 0 : 1;
    const double total = cost[m - 1][e];
    if (enter_at_a) {
        enter_at_a->assign(m, false);
        for (std::size_t i = m; i-- > 0;) {
            (*enter_at_a)[i] = (e == 1);  // exiting at b means we entered at a
            e = i > 0 ? from[i][e] : 0;
        }
    }
    return total;
}

std::vector<int> route_nodes(const std::vector<Lane>& lanes, const std::vector<int>& order,
                             const std::vector<bool>& enter_at_a) {
    std::vector<int> route{1};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Lane& l = lanes[order[i]];
        if (enter_at_a[i]) {
            route.push_back(l.a);
            route.push_back(l.b);
        } else {
            route.push_back(l.b);
            route.push_back(l.a);
        }
    }
    return route;
}

RoutePlan plan_from_orders(const VrpInstance& inst, const std::vector<Lane>& lanes,
                           const std::vector<std::vector<int>>& orders) {
    RoutePlan plan;
    plan.routes.resize(orders.size());
    plan.flight_times.resize(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k) {
        std::vector<bool> dirs;
        const double len = best_directions(*inst.graph, lanes, orders[k], &dirs);
        plan.routes[k] = route_nodes(lanes, orders[k], dirs);
        plan.flight_times[k] = len / inst.speed;
        plan.makespan = std::max(plan.makespan, plan.flight_times[k]);
    }
    return plan;
}

// Nearest-neighbor lane ordering from the depot for one drone.
std::vector<int> nearest_neighbor_order(const LaneGraph& graph, const std::vector<Lane>& lanes,
                                        std::vector<int> assigned) {
    std::vector<int> order;
    order.reserve(assigned.size());
    int cur = 1;
    while (!assigned.empty()) {
        double best = kInf;
        std::size_t best_i = 0;
        int best_exit = 0;
        for (std::size_t i = 0; i < assigned.size(); ++i) {
            const Lane& l = lanes[assigned[i]];
            const double da = graph.distance(cur, l.a);
            const double db = graph.distance(cur, l.b);
            if (da < best) {
                best = da;
                best_i = i;
                best_exit = l.b;
            }
            if (db < best) {
                best = db;
                best_i = i;
                best_exit = l.a;
            }
        }
        order.push_back(assigned[best_i]);
        assigned.erase(assigned.begin() + best_i);
        cur = best_exit;
    }
    return order;
}

// Best-improvement 2-opt on the lane order, directions re-optimized by DP.
void two_opt(const LaneGraph& graph, const std::vector<Lane>& lanes, std::vector<int>& order) {
    if (order.size() < 2) return;
    double cur = best_directions(graph, lanes, order, nullptr);
    bool improved = true;
    while (improved) {
        improved = false;
        double best_gain = kTimeTol;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                std::reverse(order.begin() + i, order.begin() + j + 1);
                const double cand = best_directions(graph, lanes, order, nullptr);
                std::reverse(order.begin() + i, order.begin() + j + 1);
                if (cur - cand > best_gain) {
                    best_gain = cur - cand;
                    bi = i;
                    bj = j;
                    improved = true;
                }
            }
        }
        if (improved) {
            std::reverse(order.begin() + bi, order.begin() + bj + 1);
            cur -= best_gain;
        }
    }
}

}  // namespace

void VrpInstance::validate() const {
    if (graph == nullptr) throw std::invalid_argument("VrpInstance: graph is null");
    if (n_drones < 1) throw std::invalid_argument("VrpInstance: need at least one drone");
    if (!(speed > 0.0)) throw std::invalid_argument("VrpInstance: speed must be > 0");
    if (!(battery_s > 0.0)) throw std::invalid_argument("VrpInstance: battery must be > 0");
}

double route_time(const std::vector<int>& route, const LaneGraph& graph, double speed) {
    double length = 0.0;
    for (std::size_t i = 1; i < route.size(); ++i) {
        length += graph.distance(route[i - 1], route[i]);
    }
    return length / speed;
}

namespace {

// Depth-first branch and bound. Drones are filled one at a time; a drone is
// closed before the next one opens, so every ordered partition of lanes is
// reachable exactly once.
struct ExactSearch {
    const LaneGraph& graph;
    const std::vector<Lane>& lanes;
    int n_drones;
    double speed;
    double battery;

    double best_u = kInf;
    std::vector<std::vector<int>> best_routes;

    std::vector<std::vector<int>> routes;  // node ids per drone, in progress
    std::vector<double> times;
    std::vector<bool> used;
    double remaining_len = 0.0;  // meters of unassigned lanes
    int remaining_cnt = 0;

    ExactSearch(const LaneGraph& g, const std::vector<Lane>& l, const VrpInstance& inst)
        : graph(g), lanes(l), n_drones(inst.n_drones), speed(inst.speed),
          battery(inst.battery_s) {
        routes.assign(n_drones, {1});
        times.assign(n_drones, 0.0);
        used.assign(lanes.size(), false);
        for (const Lane& ln : lanes) remaining_len += ln.length;
        remaining_cnt = static_cast<int>(lanes.size());
    }

    double closed_max(int k) const {
        double m = 0.0;
        for (int i = 0; i < k; ++i) m = std::max(m, times[i]);
        return m;
    }

    void dfs(int k, int cur_node) {
        if (remaining_cnt == 0) {
            const double u = std::max(closed_max(k), times[k]);
            if (u < best_u - kTimeTol) {
                best_u = u;
                best_routes = routes;
            }
            return;
        }
        if (k >= n_drones) return;

        const double maxed = std::max(closed_max(k), times[k]);
        const int open = n_drones - k;
        const double lb = std::max({maxed,
                                    (std::accumulate(times.begin(), times.end(), 0.0) +
                                     remaining_len / speed) / n_drones,
                                    (times[k] + remaining_len / speed) / open});
        if (lb >= best_u - kTimeTol) return;

        // extend the current drone with one more lane
        for (std::size_t li = 0; li < lanes.size(); ++li) {
            if (used[li]) continue;
            const Lane& l = lanes[li];
            for (int dir = 0; dir < 2; ++dir) {
                const int entry = dir == 0 ? l.a : l.b;
                const int exit = dir == 0 ? l.b : l.a;
                const double dt = (graph.distance(cur_node, entry) + l.length) / speed;
                const double t_old = times[k];
                const double t_new = t_old + dt;
                if (t_new > battery + kTimeTol) continue;
                if (t_new >= best_u - kTimeTol) continue;

                used[li] = true;
                remaining_len -= l.length;
                --remaining_cnt;
                times[k] = t_new;
                routes[k].push_back(entry);
                routes[k].push_back(exit);

                dfs(k, exit);

                routes[k].pop_back();
                routes[k].pop_back();
                times[k] = t_old;
                used[li] = false;
                remaining_len += l.length;
                ++remaining_cnt;
            }
        }

        // close this drone and open the next; closing an empty drone only
        // re-explores an identical subtree, so require at least one lane
        if (k + 1 < n_drones && routes[k].size() > 1) {
            dfs(k + 1, 1);
        }
    }
};

}  // namespace

RoutePlan solve_exact(const VrpInstance& instance, int max_nodes) {
    instance.validate();
    const LaneGraph& graph = *instance.graph;
    if (graph.node_count() > max_nodes) {
        throw InstanceTooLargeError("solve_exact: " + std::to_string(graph.node_count()) +
                                    " nodes exceeds the cap of " + std::to_string(max_nodes));
    }
    const auto lanes = lanes_of(graph);

    ExactSearch search(graph, lanes, instance);
    // a feasible heuristic plan seeds the upper bound
    try {
        const RoutePlan seed = solve_heuristic(instance);
        bool fits = true;
        for (double t : seed.flight_times) {
            if (t > instance.battery_s + kTimeTol) fits = false;
        }
        if (fits) {
            search.best_u = seed.makespan + kTimeTol;
            search.best_routes = seed.routes;
        }
    } catch (const InfeasibleError&) {
        // fall through; the search proves infeasibility on its own
    }

    search.dfs(0, 1);
    if (search.best_routes.empty()) {
        throw InfeasibleError("solve_exact: no plan fits the battery constraint");
    }

    RoutePlan plan;
    plan.routes = search.best_routes;
    plan.flight_times.resize(plan.routes.size());
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        plan.flight_times[k] = route_time(plan.routes[k], graph, instance.speed);
        plan.makespan = std::max(plan.makespan, plan.flight_times[k]);
    }
    return plan;
}

RoutePlan solve_heuristic(const VrpInstance& instance) {
    instance.validate();
    const LaneGraph& graph = *instance.graph;
    const auto lanes = lanes_of(graph);
    const int n = instance.n_drones;

    for (const Lane& l : lanes) {
        const double t = (std::min(graph.distance(1, l.a), graph.distance(1, l.b)) + l.length) /
                         instance.speed;
        if (t > instance.battery_s + kTimeTol) {
            throw InfeasibleError("solve_heuristic: a single lane exceeds the battery");
        }
    }

    // longest-processing-time assignment on lane length
    std::vector<int> by_length(lanes.size());
    std::iota(by_length.begin(), by_length.end(), 0);
    std::stable_sort(by_length.begin(), by_length.end(),
                     [&](int a, int b) { return lanes[a].length > lanes[b].length; });
    std::vector<std::vector<int>> assigned(n);
    std::vector<double> load(n, 0.0);
    for (int li : by_length) {
        const int k = static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
        assigned[k].push_back(li);
        load[k] += lanes[li].length;
    }

    std::vector<std::vector<int>> orders(n);
    for (int k = 0; k < n; ++k) {
        orders[k] = nearest_neighbor_order(graph, lanes, assigned[k]);
        two_opt(graph, lanes, orders[k]);
    }

    // move lanes off the makespan route while it helps
    auto order_len = [&](const std::vector<int>& ord) {
        return best_directions(graph, lanes, ord, nullptr);
    };
    std::vector<double> len(n);
    for (int k = 0; k < n; ++k) len[k] = order_len(orders[k]);

    for (int iter = 0; iter < 200 && n > 1; ++iter) {
        const int worst =
            static_cast<int>(std::max_element(len.begin(), len.end()) - len.begin());
        double best_new_max = len[worst];
        int best_pos = -1, best_dst = -1, best_ins = -1;

        for (std::size_t pos = 0; pos < orders[worst].size(); ++pos) {
            std::vector<int> src = orders[worst];
            const int lane = src[pos];
            src.erase(src.begin() + pos);
            const double src_len = order_len(src);
            for (int d = 0; d < n; ++d) {
                if (d == worst) continue;
                for (std::size_t ins = 0; ins <= orders[d].size(); ++ins) {
                    std::vector<int> dst = orders[d];
                    dst.insert(dst.begin() + ins, lane);
                    const double dst_len = order_len(dst);
                    double new_max = std::max(src_len, dst_len);
                    for (int q = 0; q < n; ++q) {
                        if (q != worst && q != d) new_max = std::max(new_max, len[q]);
                    }
                    if (new_max < best_new_max - kTimeTol) {
                        best_new_max = new_max;
                        best_pos = static_cast<int>(pos);
                        best_dst = d;
                        best_ins = static_cast<int>(ins);
                    }
                }
            }
        }
        if (best_pos < 0) break;
        const int lane = orders[worst][best_pos];
        orders[worst].erase(orders[worst].begin() + best_pos);
        orders[best_dst].insert(orders[best_dst].begin() + best_ins, lane);
        two_opt(graph, lanes, orders[worst]);
        two_opt(graph, lanes, orders[best_dst]);
        len[worst] = order_len(orders[worst]);
        len[best_dst] = order_len(orders[best_dst]);
    }

    return plan_from_orders(instance, lanes, orders);
}

std::vector<std::string> validate(const RoutePlan& plan, const VrpInstance& instance) {
    std::vector<std::string> violations;
    const LaneGraph& graph = *instance.graph;
    const int m = graph.node_count();

    if (static_cast<int>(plan.routes.size()) != instance.n_drones) {
        violations.push_back("route count does not match drone count");
    }
    if (plan.flight_times.size() != plan.routes.size()) {
        violations.push_back("flight time count does not match route count");
        return violations;
    }

    std::vector<int> visits(static_cast<std::size_t>(m) + 1, 0);
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        const auto& route = plan.routes[k];
        if (route.empty() || route.front() != 1) {
            violations.push_back("route " + std::to_string(k) + " must start at the depot");
            continue;
        }
        for (std::size_t i = 0; i < route.size(); ++i) {
            const int id = route[i];
            if (id < 1 || id > m) {
                violations.push_back("route " + std::to_string(k) + ": unknown node id " +
                                     std::to_string(id));
                continue;
            }
            if (id == 1 && i > 0) {
                violations.push_back("route " + std::to_string(k) + ": depot revisited");
                continue;
            }
            if (id != 1) ++visits[static_cast<std::size_t>(id)];
        }
    }
    for (int id = 2; id <= m; ++id) {
        if (visits[static_cast<std::size_t>(id)] == 0) {
            violations.push_back("node " + std::to_string(id) + " unvisited");
        } else if (visits[static_cast<std::size_t>(id)] > 1) {
            violations.push_back("duplicate visit of node " + std::to_string(id));
        }
    }

    for (const auto& [a, b] : graph.lane_pairs()) {
        bool ok = false;
        for (const auto& route : plan.routes) {
            for (std::size_t i = 0; i + 1 < route.size(); ++i) {
                if ((route[i] == a && route[i + 1] == b) || (route[i] == b && route[i + 1] == a)) {
                    ok = true;
                }
            }
        }
        if (!ok) {
            violations.push_back("lane pair broken: (" + std::to_string(a) + "," +
                                 std::to_string(b) + ") not consecutive in one route");
        }
    }

    double max_t = 0.0;
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        double t = 0.0;
        try {
            t = route_time(plan.routes[k], graph, instance.speed);
        } catch (const std::exception&) {
            continue;  // unknown ids already reported
        }
        const double stored = plan.flight_times[k];
        const double scale = std::max({1.0, std::abs(t), std::abs(stored)});
        if (std::abs(t - stored) > 1e-9 * scale) {
            violations.push_back("flight time mismatch on route " + std::to_string(k));
        }
        if (stored > instance.battery_s + kTimeTol) {
            violations.push_back("battery exceeded on route " + std::to_string(k));
        }
        max_t = std::max(max_t, stored);
    }
    if (std::abs(plan.makespan - max_t) > 1e-9 * std::max(1.0, max_t)) {
        violations.push_back("makespan does not equal the maximum flight time");
    }
    return violations;
}

void write_plan(std::ostream& os, const RoutePlan& plan, const VrpInstance& instance) {
    char buf[96];
    os << "n_drones,speed_mps,battery_s\n";
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g", instance.n_drones, instance.speed,
                  instance.battery_s);
    os << buf << '\n';
    for (const auto& route : plan.routes) {
        for (std::size_t i = 0; i < route.size(); ++i) {
            if (i) os << ',';
            os << route[i];
        }
        os << '\n';
    }
}

RoutePlan read_plan(std::istream& is, const LaneGraph& graph) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("read_plan: missing header");
    if (!std::getline(is, line)) throw std::invalid_argument("read_plan: missing header values");
    double speed = 0.0;
    {
        std::istringstream hs(line);
        std::string tok;
        std::getline(hs, tok, ',');  // n_drones, implied by route count
        std::getline(hs, tok, ',');
        speed = std::stod(tok);
    }
    RoutePlan plan;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<int> route;
        while (std::getline(ls, tok, ',')) route.push_back(std::stoi(tok));
        plan.routes.push_back(std::move(route));
    }
    plan.flight_times.resize(plan.routes.size());
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        plan.flight_times[k] = route_time(plan.routes[k], graph, speed);
        plan.makespan = std::max(plan.makespan, plan.flight_times[k]);
    }
    return plan;
}

}  // namespace plume
