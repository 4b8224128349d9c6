#include "plume/kernel_estimator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace plume {

KernelSpec::KernelSpec(double sigma_m, double radius_m) : sigma(sigma_m), radius(radius_m) {
    if (!(sigma > 0.0)) throw std::invalid_argument("KernelSpec: sigma must be > 0");
    if (!(radius > 0.0)) throw std::invalid_argument("KernelSpec: radius must be > 0");
}

std::size_t EstimateGrid::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

namespace {

// Accumulates the weighted average for one query point. The normalization
// constant of the Gaussian cancels between numerator and denominator, so
// plain exp(-d^2 / (2 sigma^2)) weights suffice.
struct KernelAccum {
    double inv_two_sigma_sq;
    double num = 0.0;
    double den = 0.0;
    int count = 0;

    explicit KernelAccum(double sigma) : inv_two_sigma_sq(1.0 / (2.0 * sigma * sigma)) {}

    void add(double d_sq, double value) {
        const double w = std::exp(-d_sq * inv_two_sigma_sq);
        num += w * value;
        den += w;
        ++count;
    }

    std::pair<double, int> result() const {
        if (count == 0) return {0.0, 0};
        return {num / den, count};
    }
};

// Uniform buckets of cell size = cutoff radius; any point within radius of
// a query lies in the query's 3x3 cell neighborhood.
class SampleIndex {
  public:
    SampleIndex(const std::vector<Sample>& samples, double cell) : cell_(cell) {
        if (samples.empty()) return;
        lo_ = samples.front().position;
        Vec2 hi = lo_;
        for (const auto& s : samples) {
            lo_.x = std::min(lo_.x, s.position.x);
            lo_.y = std::min(lo_.y, s.position.y);
            hi.x = std::max(hi.x, s.position.x);
            hi.y = std::max(hi.y, s.position.y);
        }
        nx_ = static_cast<int>(std::floor((hi.x - lo_.x) / cell_)) + 1;
        ny_ = static_cast<int>(std::floor((hi.y - lo_.y) / cell_)) + 1;
        cells_.resize(static_cast<std::size_t>(nx_) * ny_);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            cells_[cell_of(samples[i].position)].push_back(i);
        }
    }

    template <typename Fn>
    void for_each_near(const Vec2& p, Fn&& fn) const {
        if (cells_.empty()) return;
        const int cx = coord_x(p.x);
        const int cy = coord_y(p.y);
        for (int gy = cy - 1; gy <= cy + 1; ++gy) {
            if (gy < 0 || gy >= ny_) continue;
            for (int gx = cx - 1; gx <= cx + 1; ++gx) {
                if (gx < 0 || gx >= nx_) continue;
                for (std::size_t idx : cells_[static_cast<std::size_t>(gy) * nx_ + gx]) fn(idx);
            }
        }
    }

  private:
    int coord_x(double x) const { return static_cast<int>(std::floor((x - lo_.x) / cell_)); }
    int coord_y(double y) const { return static_cast<int>(std::floor((y - lo_.y) / cell_)); }
    std::size_t cell_of(const Vec2& p) const {
        return static_cast<std::size_t>(coord_y(p.y)) * nx_ + coord_x(p.x);
    }

    double cell_;
    Vec2 lo_;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace

std::pair<double, int> estimate_at(const std::vector<Sample>& samples, const Vec2& x,
                                   const KernelSpec& kernel) {
    KernelAccum acc(kernel.sigma);
    const double r_sq = kernel.radius * kernel.radius;
    for (const auto& s : samples) {
        const Vec2 d = s.position - x;
        const double d_sq = d.dot(d);
        if (d_sq <= r_sq) acc.add(d_sq, s.value);
    }
    return acc.result();
}

EstimateGrid estimate_grid(const std::vector<Sample>& samples, const Region& region,
                           const KernelSpec& kernel) {
    EstimateGrid grid(region);
    if (samples.empty()) return grid;

    const SampleIndex index(samples, kernel.radius);
    const double r_sq = kernel.radius * kernel.radius;
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        const Vec2 c = region.box_center(i);
        KernelAccum acc(kernel.sigma);
        index.for_each_near(c, [&](std::size_t idx) {
            const Vec2 d = samples[idx].position - c;
            const double d_sq = d.dot(d);
            if (d_sq <= r_sq) acc.add(d_sq, samples[idx].value);
        });
        const auto [value, count] = acc.result();
        grid.values[i] = value;
        grid.counts[i] = count;
    }
    return grid;
}

std::optional<Region> plume_bounding_box(const EstimateGrid& grid, const DangerThreshold& threshold,
                                         double margin) {
    if (margin < 0.0) throw std::invalid_argument("plume_bounding_box: margin must be >= 0");

    const Region& region = grid.region;
    bool any = false;
    Rect extent{};
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        if (grid.values[i] < threshold.c_d) continue;
        const Vec2 mc = region.box_min_corner(i);
        const Rect box{mc, {mc.x + 1.0, mc.y + 1.0}};
        if (!any) {
            extent = box;
            any = true;
        } else {
            extent.lo.x = std::min(extent.lo.x, box.lo.x);
            extent.lo.y = std::min(extent.lo.y, box.lo.y);
            extent.hi.x = std::max(extent.hi.x, box.hi.x);
            extent.hi.y = std::max(extent.hi.y, box.hi.y);
        }
    }
    if (!any) return std::nullopt;

    extent = extent.expanded(margin);
    // snap outward to the box lattice, then clip
    const Vec2 o = region.origin();
    int lo_x = static_cast<int>(std::floor(extent.lo.x - o.x));
    int lo_y = static_cast<int>(std::floor(extent.lo.y - o.y));
    int hi_x = static_cast<int>(std::ceil(extent.hi.x - o.x));
    int hi_y = static_cast<int>(std::ceil(extent.hi.y - o.y));
    lo_x = std::max(lo_x, 0);
    lo_y = std::max(lo_y, 0);
    hi_x = std::min(hi_x, region.cols());
    hi_y = std::min(hi_y, region.rows());
    return Region({o.x + lo_x, o.y + lo_y}, hi_x - lo_x, hi_y - lo_y);
}

void dump_estimate_grid(std::ostream& os, const EstimateGrid& grid) {
    const Region& region = grid.region;
    os << "rows,cols,box_size_m\n";
    os << region.rows() << ',' << region.cols() << ",1\n";
    char buf[32];
    for (int r = 0; r < region.rows(); ++r) {
        for (int c = 0; c < region.cols(); ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * region.cols() + c;
            std::snprintf(buf, sizeof(buf), "%.9g", grid.values[i]);
            if (c) os << ',';
            os << buf;
        }
        os << '\n';
    }
    for (int r = 0; r < region.rows(); ++r) {
        for (int c = 0; c < region.cols(); ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * region.cols() + c;
            if (c) os << ',';
            os << (grid.covered(i) ? '1' : '0');
        }
        os << '\n';
    }
}

}  // namespace plume
