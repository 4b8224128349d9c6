#pragma once

#include <cstdint>
#include <vector>

#include "plume/region_grid.hpp"

namespace plume {

/// Per-box binary safe/unsafe labels over a region's 1x1 m decomposition.
struct LabelGrid {
    Region region;
    std::vector<std::uint8_t> labels;  // 1 = unsafe, row-major box order

    explicit LabelGrid(const Region& r) : region(r), labels(r.box_count(), 0) {}

    std::size_t positive_count() const {
        std::size_t n = 0;
        for (auto v : labels) n += v;
        return n;
    }
};

}  // namespace plume
