#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "plume/region_grid.hpp"

using namespace plume;

TEST_SUITE("region_grid") {

TEST_CASE("lane graph over the default region") {
    const Region region({0.0, 0.0}, 200, 100);
    const LaneGraph graph = build_lane_graph(region, 2.0, {100.0, 0.0});

    CHECK(graph.lane_count() == 100);
    CHECK(graph.node_count() == 201);
    CHECK(graph.lane_pairs().front() == std::pair<int, int>{2, 3});
    CHECK(graph.lane_pairs().back() == std::pair<int, int>{200, 201});

    // full-height lane: endpoints are the region height apart
    CHECK(graph.distance(2, 3) == doctest::Approx(100.0));

    // nodes inside the region, adjacent lanes exactly lane_distance apart
    for (int id = 2; id <= graph.node_count(); ++id) {
        CHECK(region.contains(graph.node(id)));
    }
    for (int k = 0; k + 1 < graph.lane_count(); ++k) {
        const double x0 = graph.node(2 + 2 * k).x;
        const double x1 = graph.node(4 + 2 * k).x;
        CHECK(x1 - x0 == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("smallest multi-lane case") {
    const Region region({0.0, 0.0}, 4, 100);
    const LaneGraph graph = build_lane_graph(region, 2.0, {2.0, 0.0});
    CHECK(graph.node_count() == 5);
    REQUIRE(graph.lane_count() == 2);
    CHECK(graph.lane_pairs()[0] == std::pair<int, int>{2, 3});
    CHECK(graph.lane_pairs()[1] == std::pair<int, int>{4, 5});
}

TEST_CASE("lane graph rejects bad lane distances") {
    const Region region({0.0, 0.0}, 10, 10);
    CHECK_THROWS_AS(build_lane_graph(region, 0.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_lane_graph(region, -1.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_lane_graph(region, 11.0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("distance matrix is a metric") {
    const Region region({0.0, 0.0}, 10, 5);
    const LaneGraph graph = build_lane_graph(region, 3.0, {5.0, 0.0});
    for (int i = 1; i <= graph.node_count(); ++i) {
        CHECK(graph.distance(i, i) == 0.0);
        for (int j = 1; j <= graph.node_count(); ++j) {
            CHECK(graph.distance(i, j) == graph.distance(j, i));
            for (int k = 1; k <= graph.node_count(); ++k) {
                CHECK(graph.distance(i, k) <=
                      graph.distance(i, j) + graph.distance(j, k) + 1e-12);
            }
        }
    }
}

TEST_CASE("box indexing follows the floor convention") {
    const Region region({0.0, 0.0}, 200, 100);
    CHECK(region.box_count() == 20000);  // width x height

    CHECK(box_of(region, {0.0, 0.0}) == 0);
    CHECK(box_of(region, {1.0, 0.5}) == 1);  // column 1, row 0

    // far edges resolve into the last row/column
    CHECK(box_of(region, {200.0, 0.5}) == 199);
    CHECK(box_of(region, {0.5, 100.0}) == static_cast<std::size_t>(99) * 200);

    CHECK_THROWS_AS(box_of(region, {-0.1, 0.0}), std::out_of_range);
    CHECK_THROWS_AS(box_of(region, {201.0, 0.0}), std::out_of_range);
}

TEST_CASE("box round trip and area tiling") {
    const Region region({-3.0, 7.0}, 17, 9);
    double area = 0.0;
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        CHECK(box_of(region, region.box_center(i)) == i);
        area += Box::size * Box::size;
    }
    CHECK(area == doctest::Approx(17.0 * 9.0));
}

TEST_CASE("region rejects empty dimensions") {
    CHECK_THROWS_AS(Region({0.0, 0.0}, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(Region({0.0, 0.0}, 5, -1), std::invalid_argument);
}

}
