#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "plume/kernel_estimator.hpp"
#include "plume/rng.hpp"

using namespace plume;

namespace {

Sample at(double x, double y, double value) { return Sample{1, {x, y}, 0.0, value}; }

// all-pairs reference estimator, shared with the acceptance suite in spirit:
// no spatial index, optional Gaussian prefactor to confirm it cancels
std::pair<double, int> brute_force_estimate(const std::vector<Sample>& samples, const Vec2& x,
                                            const KernelSpec& kernel, bool with_prefactor) {
    const double pref = with_prefactor ? 1.0 / std::sqrt(2.0 * 3.14159265358979323846 *
                                                         kernel.sigma * kernel.sigma)
                                       : 1.0;
    double num = 0.0, den = 0.0;
    int count = 0;
    for (const auto& s : samples) {
        const double dx = s.position.x - x.x;
        const double dy = s.position.y - x.y;
        const double d_sq = dx * dx + dy * dy;
        if (d_sq > kernel.radius * kernel.radius) continue;
        const double w = pref * std::exp(-d_sq / (2.0 * kernel.sigma * kernel.sigma));
        num += w * s.value;
        den += w;
        ++count;
    }
    if (count == 0) return {0.0, 0};
    return {num / den, count};
}

}  // namespace

TEST_SUITE("kernel_estimator") {

TEST_CASE("kernel spec validation and default radius") {
    CHECK_THROWS_AS(KernelSpec(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec(1.0, 0.0), std::invalid_argument);
    const KernelSpec k = KernelSpec::with_default_radius(2.0);
    CHECK(k.radius == doctest::Approx(6.0));
}

TEST_CASE("single sample at the query point returns its value") {
    const KernelSpec k(2.0, 6.0);
    const auto [v, n] = estimate_at({at(3.0, 4.0, 7.5)}, {3.0, 4.0}, k);
    CHECK(v == doctest::Approx(7.5));
    CHECK(n == 1);
}

TEST_CASE("two equidistant samples average evenly") {
    const KernelSpec k(2.0, 6.0);
    const auto [v, n] =
        estimate_at({at(0.0, 1.0, 10.0), at(0.0, -1.0, 20.0)}, {0.0, 0.0}, k);
    CHECK(v == doctest::Approx(15.0));
    CHECK(n == 2);
}

TEST_CASE("three-sample weighted average matches the frozen hand evaluation") {
    // distances 1, 2, 4 with sigma 2: weights exp(-1/8), exp(-4/8), exp(-16/8)
    // -> (10 w1 + 20 w2 + 30 w3) / (w1 + w2 + w3) = 15.400278814537703
    const KernelSpec k(2.0, 6.0);
    const std::vector<Sample> samples{at(1.0, 0.0, 10.0), at(0.0, 2.0, 20.0), at(-4.0, 0.0, 30.0)};
    const auto [v, n] = estimate_at(samples, {0.0, 0.0}, k);
    CHECK(n == 3);
    CHECK(v == doctest::Approx(15.400278814537703).epsilon(1e-14));
}

TEST_CASE("out-of-range samples do not contribute") {
    const KernelSpec k(1.0, 3.0);
    const auto [v, n] = estimate_at({at(10.0, 0.0, 5.0)}, {0.0, 0.0}, k);
    CHECK(v == 0.0);
    CHECK(n == 0);
}

TEST_CASE("no samples yields the no-data grid") {
    const Region region({0.0, 0.0}, 10, 5);
    const EstimateGrid grid = estimate_grid({}, region, KernelSpec(2.0, 6.0));
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        CHECK(grid.values[i] == 0.0);
        CHECK_FALSE(grid.covered(i));
    }
}

TEST_CASE("tiny sigma at box centers replays the sampled values") {
    PlumeSource s;
    s.position = {1.0, 2.0};
    const ConcentrationField field(s);
    const Region region({0.0, 0.0}, 20, 10);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        const Vec2 c = region.box_center(i);
        samples.push_back({1, c, 0.0, field.concentration_at(c)});
    }
    const EstimateGrid grid = estimate_grid(samples, region, KernelSpec(0.1, 0.3));
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        const double truth = field.concentration_at(region.box_center(i));
        CHECK(grid.values[i] == doctest::Approx(truth).epsilon(1e-6));
    }
}

TEST_CASE("indexed grid equals the all-pairs scan on a toy region") {
    const Region region({0.0, 0.0}, 20, 10);
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Sample> samples;
        const int n = 30 + static_cast<int>(rng.uniform_int(0, 50));
        for (int i = 0; i < n; ++i) {
            samples.push_back(
                {1, {rng.uniform(0.0, 20.0), rng.uniform(0.0, 10.0)}, 0.0, rng.uniform(0.0, 5.0)});
        }
        const double sigma = rng.uniform(0.5, 3.0);
        const KernelSpec kernel(sigma, 3.0 * sigma);
        const EstimateGrid grid = estimate_grid(samples, region, kernel);
        for (std::size_t i = 0; i < region.box_count(); ++i) {
            const auto [v, c] = brute_force_estimate(samples, region.box_center(i), kernel, false);
            CHECK(grid.counts[i] == c);
            CHECK(grid.values[i] == doctest::Approx(v).epsilon(1e-12));
        }
    }
}

TEST_CASE("the Gaussian prefactor cancels out") {
    Rng rng(21);
    const KernelSpec kernel(1.7, 5.1);
    std::vector<Sample> samples;
    for (int i = 0; i < 40; ++i) {
        samples.push_back({1, {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)}, 0.0,
                           rng.uniform(0.0, 9.0)});
    }
    for (int q = 0; q < 20; ++q) {
        const Vec2 x{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        const auto plain = brute_force_estimate(samples, x, kernel, false);
        const auto scaled = brute_force_estimate(samples, x, kernel, true);
        const auto impl = estimate_at(samples, x, kernel);
        CHECK(impl.second == plain.second);
        if (plain.second > 0) {
            CHECK(impl.first == doctest::Approx(plain.first).epsilon(1e-12));
            CHECK(impl.first == doctest::Approx(scaled.first).epsilon(1e-12));
        }
    }
}

TEST_CASE("estimates stay within the contributing sample range") {
    Rng rng(31);
    const KernelSpec kernel(2.0, 6.0);
    std::vector<Sample> samples;
    for (int i = 0; i < 60; ++i) {
        samples.push_back({1, {rng.uniform(0.0, 30.0), rng.uniform(0.0, 15.0)}, 0.0,
                           rng.uniform(0.0, 100.0)});
    }
    for (int q = 0; q < 200; ++q) {
        const Vec2 x{rng.uniform(0.0, 30.0), rng.uniform(0.0, 15.0)};
        const auto [v, n] = estimate_at(samples, x, kernel);
        if (n == 0) continue;
        double lo = 1e300, hi = -1e300;
        for (const auto& s : samples) {
            const double d = distance(s.position, x);
            if (d <= kernel.radius) {
                lo = std::min(lo, s.value);
                hi = std::max(hi, s.value);
            }
        }
        CHECK(v >= lo - 1e-9);
        CHECK(v <= hi + 1e-9);
    }
}

TEST_CASE("adding a sample never shrinks the coverage mask") {
    const Region region({0.0, 0.0}, 15, 8);
    Rng rng(41);
    std::vector<Sample> samples;
    EstimateGrid prev = estimate_grid(samples, region, KernelSpec(1.0, 3.0));
    for (int i = 0; i < 25; ++i) {
        samples.push_back(
            {1, {rng.uniform(0.0, 15.0), rng.uniform(0.0, 8.0)}, 0.0, rng.uniform(0.0, 2.0)});
        const EstimateGrid next = estimate_grid(samples, region, KernelSpec(1.0, 3.0));
        for (std::size_t b = 0; b < region.box_count(); ++b) {
            if (prev.covered(b)) CHECK(next.covered(b));
        }
        prev = next;
    }
}

TEST_CASE("larger sigma grows the above-threshold set for uniform sample values") {
    const Region region({0.0, 0.0}, 30, 20);
    Rng rng(51);
    std::vector<Sample> samples;
    for (int i = 0; i < 15; ++i) {
        samples.push_back(
            {1, {rng.uniform(5.0, 25.0), rng.uniform(5.0, 15.0)}, 0.0, 3.0});  // shared value
    }
    const DangerThreshold c_d(1.0);
    const EstimateGrid small = estimate_grid(samples, region, KernelSpec::with_default_radius(1.0));
    const EstimateGrid large = estimate_grid(samples, region, KernelSpec::with_default_radius(2.5));
    for (std::size_t b = 0; b < region.box_count(); ++b) {
        if (small.values[b] >= c_d.c_d) CHECK(large.values[b] >= c_d.c_d);
    }
}

TEST_CASE("estimate dump carries values and a parallel coverage mask") {
    const Region region({0.0, 0.0}, 3, 2);
    EstimateGrid grid(region);
    grid.values[4] = 1.5;
    grid.counts[4] = 2;
    std::ostringstream os;
    dump_estimate_grid(os, grid);
    CHECK(os.str() ==
          "rows,cols,box_size_m\n2,3,1\n"
          "0,0,0\n0,1.5,0\n"
          "0,0,0\n0,1,0\n");
}

TEST_CASE("bounding box of a single hot box is that box") {
    const Region region({0.0, 0.0}, 10, 6);
    EstimateGrid grid(region);
    const std::size_t hot = box_of(region, {4.5, 2.5});
    grid.values[hot] = 2.0;
    const auto bbox = plume_bounding_box(grid, DangerThreshold(1.0), 0.0);
    REQUIRE(bbox.has_value());
    CHECK(bbox->origin() == Vec2{4.0, 2.0});
    CHECK(bbox->width() == 1);
    CHECK(bbox->height() == 1);
}

TEST_CASE("bounding box is empty when nothing reaches the threshold") {
    const Region region({0.0, 0.0}, 10, 6);
    EstimateGrid grid(region);
    CHECK_FALSE(plume_bounding_box(grid, DangerThreshold(1.0), 3.0).has_value());
}

TEST_CASE("L-shaped hot set: extremes plus margin, clipped to the region") {
    const Region region({0.0, 0.0}, 20, 12);
    EstimateGrid grid(region);
    // L shape: column x=2 rows 1..8, row y=1 cols 2..9
    for (int r = 1; r <= 8; ++r) grid.values[static_cast<std::size_t>(r) * 20 + 2] = 5.0;
    for (int c = 2; c <= 9; ++c) grid.values[static_cast<std::size_t>(1) * 20 + c] = 5.0;

    // oracle: min/max over hot boxes
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        if (grid.values[i] < 1.0) continue;
        const Vec2 mc = region.box_min_corner(i);
        lo_x = std::min(lo_x, mc.x);
        lo_y = std::min(lo_y, mc.y);
        hi_x = std::max(hi_x, mc.x + 1.0);
        hi_y = std::max(hi_y, mc.y + 1.0);
    }

    const double margin = 3.0;
    const auto bbox = plume_bounding_box(grid, DangerThreshold(1.0), margin);
    REQUIRE(bbox.has_value());
    CHECK(bbox->origin().x == std::max(lo_x - margin, 0.0));
    CHECK(bbox->origin().y == std::max(lo_y - margin, 0.0));
    CHECK(bbox->origin().x + bbox->width() == std::min(hi_x + margin, 20.0));
    CHECK(bbox->origin().y + bbox->height() == std::min(hi_y + margin, 12.0));
}

}
