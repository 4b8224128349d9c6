#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plume/experiment.hpp"
#include "plume/mission.hpp"

namespace py = pybind11;
using namespace plume;

namespace {

// file-style text in, result CSV text out; the simplest scripting surface
std::string run_experiment_csv(const std::string& config_text) {
    const ExperimentSpec spec = parse_config(config_text);
    std::ostringstream os;
    write_result_csv(os, run_experiment(spec));
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-drone toxic plume survey simulator";

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Vec2{x, y}; }), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<Region>(m, "Region")
        .def(py::init<Vec2, int, int>(), py::arg("origin"), py::arg("width"), py::arg("height"))
        .def_property_readonly("origin", &Region::origin)
        .def_property_readonly("width", &Region::width)
        .def_property_readonly("height", &Region::height)
        .def_property_readonly("box_count", &Region::box_count)
        .def("box_center", &Region::box_center)
        .def("contains", &Region::contains);

    m.def("box_of", &box_of, py::arg("region"), py::arg("point"));

    py::class_<PlumeSource>(m, "PlumeSource")
        .def(py::init<>())
        .def_readwrite("position", &PlumeSource::position)
        .def_readwrite("emission_rate", &PlumeSource::emission_rate)
        .def_readwrite("effective_height", &PlumeSource::effective_height)
        .def_readwrite("wind_speed", &PlumeSource::wind_speed)
        .def_readwrite("wind_direction", &PlumeSource::wind_direction)
        .def_readwrite("a_y", &PlumeSource::a_y)
        .def_readwrite("b_y", &PlumeSource::b_y)
        .def_readwrite("a_z", &PlumeSource::a_z)
        .def_readwrite("b_z", &PlumeSource::b_z);

    py::class_<ConcentrationField>(m, "ConcentrationField")
        .def(py::init<const PlumeSource&, double>(), py::arg("source"),
             py::arg("sensor_altitude") = 0.0)
        .def("concentration_at", &ConcentrationField::concentration_at)
        .def("max_over_region", &ConcentrationField::max_over_region);

    py::class_<DangerThreshold>(m, "DangerThreshold")
        .def(py::init<double>(), py::arg("c_d"))
        .def_readonly("c_d", &DangerThreshold::c_d);

    py::class_<LaneGraph>(m, "LaneGraph")
        .def_property_readonly("node_count", &LaneGraph::node_count)
        .def_property_readonly("lane_count", &LaneGraph::lane_count)
        .def_property_readonly("lane_pairs", &LaneGraph::lane_pairs)
        .def("node", &LaneGraph::node)
        .def("distance", &LaneGraph::distance);

    m.def("build_lane_graph", &build_lane_graph, py::arg("region"), py::arg("lane_distance"),
          py::arg("depot"));

    py::class_<Sample>(m, "Sample")
        .def(py::init<>())
        .def_readwrite("drone_id", &Sample::drone_id)
        .def_readwrite("position", &Sample::position)
        .def_readwrite("time", &Sample::time)
        .def_readwrite("value", &Sample::value);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init<double, double>(), py::arg("sigma"), py::arg("radius"))
        .def_readonly("sigma", &KernelSpec::sigma)
        .def_readonly("radius", &KernelSpec::radius);

    py::class_<EstimateGrid>(m, "EstimateGrid")
        .def_readonly("values", &EstimateGrid::values)
        .def_readonly("counts", &EstimateGrid::counts)
        .def("argmax", &EstimateGrid::argmax);

    m.def("estimate_at", &estimate_at, py::arg("samples"), py::arg("x"), py::arg("kernel"));
    m.def("estimate_grid", &estimate_grid, py::arg("samples"), py::arg("region"),
          py::arg("kernel"));

    py::class_<LabelGrid>(m, "LabelGrid")
        .def_readonly("labels", &LabelGrid::labels)
        .def("positive_count", &LabelGrid::positive_count);

    m.def("ground_truth_labels", &ground_truth_labels, py::arg("field"), py::arg("region"),
          py::arg("threshold"), py::arg("subsample_n") = 5);
    m.def("classify", &classify, py::arg("grid"), py::arg("threshold"));

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("fn_pct", &ErrorReport::fn_pct)
        .def_readonly("fp_pct", &ErrorReport::fp_pct)
        .def_readonly("total_pct", &ErrorReport::total_pct)
        .def_readonly("omega_p", &ErrorReport::omega_p)
        .def_readonly("omega_n", &ErrorReport::omega_n)
        .def_readonly("plume_acquired", &ErrorReport::plume_acquired);

    m.def("score", &score, py::arg("truth"), py::arg("estimate"));

    py::class_<VrpInstance>(m, "VrpInstance")
        .def(py::init([](const LaneGraph& g, int n, double v, double battery) {
                 return VrpInstance{&g, n, v, battery};
             }),
             py::arg("graph"), py::arg("n_drones"), py::arg("speed"), py::arg("battery_s"),
             py::keep_alive<1, 2>())
        .def_readonly("n_drones", &VrpInstance::n_drones)
        .def_readonly("speed", &VrpInstance::speed)
        .def_readonly("battery_s", &VrpInstance::battery_s);

    py::class_<RoutePlan>(m, "RoutePlan")
        .def_readonly("routes", &RoutePlan::routes)
        .def_readonly("flight_times", &RoutePlan::flight_times)
        .def_readonly("makespan", &RoutePlan::makespan);

    m.def("route_time", &route_time, py::arg("route"), py::arg("graph"), py::arg("speed"));
    m.def("solve_exact", &solve_exact, py::arg("instance"), py::arg("max_nodes") = 13);
    m.def("solve_heuristic", &solve_heuristic, py::arg("instance"));
    m.def("validate_plan", &validate, py::arg("plan"), py::arg("instance"));

    py::enum_<Strategy>(m, "Strategy")
        .value("single_phase", Strategy::single_phase)
        .value("two_phase_random", Strategy::two_phase_random)
        .value("two_phase_coverage", Strategy::two_phase_coverage);

    py::class_<MissionConfig>(m, "MissionConfig")
        .def(py::init<>())
        .def_readwrite("region", &MissionConfig::region)
        .def_readwrite("depot", &MissionConfig::depot)
        .def_readwrite("n_drones", &MissionConfig::n_drones)
        .def_readwrite("speed", &MissionConfig::speed)
        .def_readwrite("battery_s", &MissionConfig::battery_s)
        .def_readwrite("p1_lane_m", &MissionConfig::p1_lane_m)
        .def_readwrite("p2_lane_m", &MissionConfig::p2_lane_m)
        .def_readwrite("p2_duration_s", &MissionConfig::p2_duration_s)
        .def_readwrite("sigma_m", &MissionConfig::sigma_m)
        .def_readwrite("radius_factor", &MissionConfig::radius_factor)
        .def_readwrite("c_d", &MissionConfig::c_d)
        .def_readwrite("margin_m", &MissionConfig::margin_m)
        .def_readwrite("strategy", &MissionConfig::strategy)
        .def_readwrite("rng_seed", &MissionConfig::rng_seed)
        .def_readwrite("noise_std", &MissionConfig::noise_std);

    py::class_<Phase2Stats>(m, "Phase2Stats")
        .def_readonly("threshold_bounces", &Phase2Stats::threshold_bounces)
        .def_readonly("wall_bounces", &Phase2Stats::wall_bounces)
        .def_readonly("fresh_redraws", &Phase2Stats::fresh_redraws)
        .def_readonly("revisited_boxes", &Phase2Stats::revisited_boxes);

    py::class_<MissionResult>(m, "MissionResult")
        .def_readonly("samples", &MissionResult::samples)
        .def_readonly("report", &MissionResult::report)
        .def_readonly("phase1_elapsed", &MissionResult::phase1_elapsed)
        .def_readonly("phase2_elapsed", &MissionResult::phase2_elapsed)
        .def_readonly("mission_time", &MissionResult::mission_time)
        .def_readonly("phase1_bounding_box", &MissionResult::phase1_bounding_box)
        .def_readonly("phase2_stats", &MissionResult::phase2_stats);

    m.def("heading_interval",
          [](int k, int n) {
              const HeadingInterval interval = heading_interval(k, n);
              return std::make_pair(interval.lo_deg, interval.hi_deg);
          },
          py::arg("k"), py::arg("n_drones"));
    m.def("run_mission", &run_mission, py::arg("config"), py::arg("field"));

    m.def("parse_config",
          [](const std::string& text) {
              (void)parse_config(text);  // raises ConfigError on problems
              return true;
          },
          py::arg("text"), "Validate a config text; raises ValueError on problems");
    m.def("run_experiment_csv", &run_experiment_csv, py::arg("config_text"),
          "Run the configured sweep and return the result table as CSV text");

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
