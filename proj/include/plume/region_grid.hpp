#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plume/geometry.hpp"

namespace plume {

/// Rectangular search space, decomposed into 1x1 m scoring boxes.
/// Dimensions are whole meters; the origin may be anywhere.
class Region {
  public:
    Region(Vec2 origin, int width_m, int height_m);

    const Vec2& origin() const { return origin_; }
    int width() const { return width_; }
    int height() const { return height_; }
    int cols() const { return width_; }
    int rows() const { return height_; }
    std::size_t box_count() const { return static_cast<std::size_t>(width_) * height_; }

    Rect rect() const {
        return {origin_, {origin_.x + width_, origin_.y + height_}};
    }

    bool contains(const Vec2& p) const { return rect().contains(p); }

    /// Center of box i under row-major indexing (row = floor(y), col = floor(x)).
    Vec2 box_center(std::size_t i) const;

    /// Min-corner of box i.
    Vec2 box_min_corner(std::size_t i) const;

    bool operator==(const Region& o) const {
        return origin_ == o.origin_ && width_ == o.width_ && height_ == o.height_;
    }

  private:
    Vec2 origin_;
    int width_;
    int height_;
};

/// One 1x1 m scoring box.
struct Box {
    std::size_t index;
    Vec2 min_corner;
    static constexpr double size = 1.0;
};

/// Index of the box containing p. Boundary points follow the floor
/// convention; points on the far edges resolve to the last box.
/// Throws std::out_of_range if p lies outside the region.
std::size_t box_of(const Region& region, const Vec2& p);

Box box_at(const Region& region, std::size_t index);

/// Depot plus paired lane-endpoint nodes over a region. Node ids are
/// 1-based: id 1 is the depot, lane pairs are (2,3), (4,5), ...
/// Lanes run parallel to the region's height axis, spaced lane_distance
/// apart starting lane_distance/2 from the edge.
class LaneGraph {
  public:
    LaneGraph(std::vector<Vec2> nodes, std::vector<std::pair<int, int>> lane_pairs,
              double lane_distance);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int lane_count() const { return static_cast<int>(lane_pairs_.size()); }
    const Vec2& node(int id) const;
    const std::vector<std::pair<int, int>>& lane_pairs() const { return lane_pairs_; }
    double lane_distance() const { return lane_distance_; }

    /// Euclidean distance between nodes, from the precomputed matrix.
    double distance(int id_i, int id_j) const;

    /// Length of lane k (distance between its paired endpoints).
    double lane_length(int k) const;

  private:
    std::vector<Vec2> nodes_;                       // nodes_[id-1]
    std::vector<std::pair<int, int>> lane_pairs_;
    std::vector<double> dist_;                      // row-major M x M
    double lane_distance_;
};

/// Decompose a region into coverage lanes at the given spatial resolution.
/// Throws std::invalid_argument for non-positive lane_distance or
/// lane_distance greater than the region width.
LaneGraph build_lane_graph(const Region& region, double lane_distance, const Vec2& depot);

}  // namespace plume
