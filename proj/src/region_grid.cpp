#include "plume/region_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plume {

Region::Region(Vec2 origin, int width_m, int height_m)
    : origin_(origin), width_(width_m), height_(height_m) {
    if (width_m <= 0 || height_m <= 0) {
        throw std::invalid_argument("Region: width and height must be positive whole meters");
    }
}

Vec2 Region::box_center(std::size_t i) const {
    const Vec2 c = box_min_corner(i);
    return {c.x + 0.5, c.y + 0.5};
}

Vec2 Region::box_min_corner(std::size_t i) const {
    if (i >= box_count()) throw std::out_of_range("Region: box index out of range");
    const std::size_t row = i / cols();
    const std::size_t col = i % cols();
    return {origin_.x + static_cast<double>(col), origin_.y + static_cast<double>(row)};
}

std::size_t box_of(const Region& region, const Vec2& p) {
    if (!region.contains(p)) {
        throw std::out_of_range("box_of: point outside region");
    }
    int col = static_cast<int>(std::floor(p.x - region.origin().x));
    int row = static_cast<int>(std::floor(p.y - region.origin().y));
    // far-edge points fall into the last row/column
    col = std::min(col, region.cols() - 1);
    row = std::min(row, region.rows() - 1);
    return static_cast<std::size_t>(row) * region.cols() + col;
}

Box box_at(const Region& region, std::size_t index) {
    return Box{index, region.box_min_corner(index)};
}

LaneGraph::LaneGraph(std::vector<Vec2> nodes, std::vector<std::pair<int, int>> lane_pairs,
                     double lane_distance)
    : nodes_(std::move(nodes)), lane_pairs_(std::move(lane_pairs)), lane_distance_(lane_distance) {
    const std::size_t m = nodes_.size();
    dist_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = plume::distance(nodes_[i], nodes_[j]);
            dist_[i * m + j] = d;
            dist_[j * m + i] = d;
        }
    }
}

const Vec2& LaneGraph::node(int id) const {
    if (id < 1 || id > node_count()) {
        throw std::out_of_range("LaneGraph: unknown node id " + std::to_string(id));
    }
    return nodes_[static_cast<std::size_t>(id - 1)];
}

double LaneGraph::distance(int id_i, int id_j) const {
    if (id_i < 1 || id_i > node_count() || id_j < 1 || id_j > node_count()) {
        throw std::out_of_range("LaneGraph: unknown node id in distance query");
    }
    const std::size_t m = nodes_.size();
    return dist_[static_cast<std::size_t>(id_i - 1) * m + (id_j - 1)];
}

double LaneGraph::lane_length(int k) const {
    const auto& [a, b] = lane_pairs_.at(static_cast<std::size_t>(k));
    return distance(a, b);
}

LaneGraph build_lane_graph(const Region& region, double lane_distance, const Vec2& depot) {
    if (!(lane_distance > 0.0)) {
        throw std::invalid_argument("build_lane_graph: lane_distance must be positive");
    }
    if (lane_distance > region.width()) {
        throw std::invalid_argument("build_lane_graph: lane_distance exceeds region width");
    }
    if (!std::isfinite(depot.x) || !std::isfinite(depot.y)) {
        throw std::invalid_argument("build_lane_graph: depot must be finite");
    }

    const int n_lanes = static_cast<int>(std::floor(region.width() / lane_distance));
    const double y0 = region.origin().y;
    const double y1 = region.origin().y + region.height();

    std::vector<Vec2> nodes;
    nodes.reserve(1 + 2 * static_cast<std::size_t>(n_lanes));
    nodes.push_back(depot);  // id 1

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n_lanes));
    for (int k = 0; k < n_lanes; ++k) {
        const double x = region.origin().x + lane_distance * 0.5 + k * lane_distance;
        nodes.push_back({x, y0});  // id 2 + 2k
        nodes.push_back({x, y1});  // id 3 + 2k
        pairs.emplace_back(2 + 2 * k, 3 + 2 * k);
    }
    return LaneGraph(std::move(nodes), std::move(pairs), lane_distance);
}

}  // namespace plume
