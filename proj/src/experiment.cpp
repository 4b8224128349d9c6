#include "plume/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "plume/rng.hpp"

namespace plume {

namespace {

constexpr std::uint64_t kSourceStream = 0x51;
constexpr std::uint64_t kMissionStream = 0x33;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "region_w",  "region_h",  "depot_x",   "depot_y",       "n_drones", "speed",
        "battery_s", "p1_lane_m", "p2_lane_m", "p2_duration_s", "sigma_m",  "radius_factor",
        "c_d",       "margin_m",  "strategy",  "seed",          "replicates", "sweep_key",
        "sweep_values", "out"};
    return keys;
}

const std::set<std::string>& sweepable_keys() {
    static const std::set<std::string> keys{"p1_lane_m", "p2_lane_m", "n_drones",
                                            "strategy",  "sigma_m",   "p2_duration_s"};
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' expects a number, got '" + value + "'");
    }
}

long parse_int(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' expects an integer, got '" + value + "'");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Stats {
    double mean = 0.0;
    double std_dev = 0.0;
};

// population standard deviation; a single replicate aggregates to std 0
Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

}  // namespace

ExperimentSpec::ExperimentSpec() : source_rect{{20.0, 25.0}, {100.0, 75.0}} {}

MissionConfig ExperimentSpec::apply_sweep(const std::string& value) const {
    MissionConfig config = base;
    if (sweep_key.empty()) return config;
    try {
        if (sweep_key == "p1_lane_m") {
            config.p1_lane_m = std::stod(value);
        } else if (sweep_key == "p2_lane_m") {
            config.p2_lane_m = std::stod(value);
        } else if (sweep_key == "n_drones") {
            config.n_drones = std::stoi(value);
        } else if (sweep_key == "strategy") {
            config.strategy = strategy_from_string(value);
        } else if (sweep_key == "sigma_m") {
            config.sigma_m = std::stod(value);
        } else if (sweep_key == "p2_duration_s") {
            config.p2_duration_s = std::stod(value);
        } else {
            throw ConfigError("sweep_key '" + sweep_key + "' is not sweepable");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("sweep value '" + value + "' invalid for key '" + sweep_key +
                          "': " + e.what());
    }
    config.validate();
    return config;
}

void ExperimentSpec::validate() const {
    base.validate();
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (!sweep_key.empty()) {
        if (sweepable_keys().count(sweep_key) == 0) {
            throw ConfigError("sweep_key '" + sweep_key + "' is not sweepable");
        }
        if (sweep_values.empty()) throw ConfigError("sweep_values must not be empty");
        for (const auto& v : sweep_values) (void)apply_sweep(v);
    }
    const Rect region = base.region.rect();
    if (!region.contains(source_rect.lo) || !region.contains(source_rect.hi)) {
        throw ConfigError("source rectangle must lie inside the region");
    }
}

ExperimentSpec parse_config(const std::string& text) {
    ExperimentSpec spec;
    std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" +
                              stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (known_keys().count(key) == 0) {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
        if (entries.count(key)) {
            throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key +
                              "' (first on line " + std::to_string(entries[key].second) + ")");
        }
        entries[key] = {value, line};
    }

    int region_w = 200, region_h = 100;
    auto get = [&](const char* key) -> const std::pair<std::string, int>* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    if (const auto* e = get("region_w")) region_w = static_cast<int>(parse_int("region_w", e->first, e->second));
    if (const auto* e = get("region_h")) region_h = static_cast<int>(parse_int("region_h", e->first, e->second));
    if (region_w <= 0 || region_h <= 0) {
        throw ConfigError("region_w and region_h must be positive whole meters");
    }
    spec.base.region = Region({0.0, 0.0}, region_w, region_h);

    // depot defaults to the midpoint of the lower edge
    spec.base.depot = {region_w / 2.0, 0.0};
    if (const auto* e = get("depot_x")) spec.base.depot.x = parse_double("depot_x", e->first, e->second);
    if (const auto* e = get("depot_y")) spec.base.depot.y = parse_double("depot_y", e->first, e->second);

    if (const auto* e = get("n_drones")) spec.base.n_drones = static_cast<int>(parse_int("n_drones", e->first, e->second));
    if (const auto* e = get("speed")) spec.base.speed = parse_double("speed", e->first, e->second);
    if (const auto* e = get("battery_s")) spec.base.battery_s = parse_double("battery_s", e->first, e->second);
    if (const auto* e = get("p1_lane_m")) spec.base.p1_lane_m = parse_double("p1_lane_m", e->first, e->second);
    if (const auto* e = get("p2_lane_m")) spec.base.p2_lane_m = parse_double("p2_lane_m", e->first, e->second);
    if (const auto* e = get("p2_duration_s")) spec.base.p2_duration_s = parse_double("p2_duration_s", e->first, e->second);
    if (const auto* e = get("sigma_m")) spec.base.sigma_m = parse_double("sigma_m", e->first, e->second);
    if (const auto* e = get("radius_factor")) spec.base.radius_factor = parse_double("radius_factor", e->first, e->second);
    if (const auto* e = get("c_d")) spec.base.c_d = parse_double("c_d", e->first, e->second);
    if (const auto* e = get("margin_m")) spec.base.margin_m = parse_double("margin_m", e->first, e->second);
    if (const auto* e = get("strategy")) {
        try {
            spec.base.strategy = strategy_from_string(e->first);
        } catch (const std::exception& ex) {
            throw ConfigError("line " + std::to_string(e->second) + ": " + ex.what());
        }
    }
    if (const auto* e = get("seed")) {
        spec.base.rng_seed = static_cast<std::uint64_t>(parse_int("seed", e->first, e->second));
    }
    if (const auto* e = get("replicates")) spec.replicates = static_cast<int>(parse_int("replicates", e->first, e->second));
    if (const auto* e = get("sweep_key")) spec.sweep_key = e->first;
    if (const auto* e = get("sweep_values")) {
        std::istringstream vs(e->first);
        std::string tok;
        while (std::getline(vs, tok, ',')) {
            const std::string v = trim(tok);
            if (!v.empty()) spec.sweep_values.push_back(v);
        }
    }
    if (const auto* e = get("out")) spec.out_path = e->first;

    // source draws come from the central band of the region, clear of the
    // downwind edge so default plumes stay inside
    spec.source_rect = {{0.1 * region_w, 0.25 * region_h}, {0.5 * region_w, 0.75 * region_h}};

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return spec;
}

std::string serialize_config(const ExperimentSpec& spec) {
    std::ostringstream os;
    const MissionConfig& b = spec.base;
    os << "region_w=" << b.region.width() << '\n';
    os << "region_h=" << b.region.height() << '\n';
    os << "depot_x=" << fmt(b.depot.x) << '\n';
    os << "depot_y=" << fmt(b.depot.y) << '\n';
    os << "n_drones=" << b.n_drones << '\n';
    os << "speed=" << fmt(b.speed) << '\n';
    os << "battery_s=" << fmt(b.battery_s) << '\n';
    os << "p1_lane_m=" << fmt(b.p1_lane_m) << '\n';
    os << "p2_lane_m=" << fmt(b.p2_lane_m) << '\n';
    if (b.p2_duration_s) os << "p2_duration_s=" << fmt(*b.p2_duration_s) << '\n';
    if (b.sigma_m) os << "sigma_m=" << fmt(*b.sigma_m) << '\n';
    os << "radius_factor=" << fmt(b.radius_factor) << '\n';
    os << "c_d=" << fmt(b.c_d) << '\n';
    if (b.margin_m) os << "margin_m=" << fmt(*b.margin_m) << '\n';
    os << "strategy=" << to_string(b.strategy) << '\n';
    os << "seed=" << b.rng_seed << '\n';
    os << "replicates=" << spec.replicates << '\n';
    if (!spec.sweep_key.empty()) {
        os << "sweep_key=" << spec.sweep_key << '\n';
        os << "sweep_values=";
        for (std::size_t i = 0; i < spec.sweep_values.size(); ++i) {
            if (i) os << ',';
            os << spec.sweep_values[i];
        }
        os << '\n';
    }
    if (!spec.out_path.empty()) os << "out=" << spec.out_path << '\n';
    return os.str();
}

PlumeSource draw_source(const ExperimentSpec& spec, std::uint64_t master_seed, int sweep_index,
                        int replicate) {
    Rng rng(mix_seed(master_seed, kSourceStream + static_cast<std::uint64_t>(sweep_index),
                     static_cast<std::uint64_t>(replicate)));
    PlumeSource source;
    source.position = {rng.uniform(spec.source_rect.lo.x, spec.source_rect.hi.x),
                       rng.uniform(spec.source_rect.lo.y, spec.source_rect.hi.y)};
    return source;
}

std::uint64_t mission_seed(std::uint64_t master_seed, int sweep_index, int replicate) {
    return mix_seed(master_seed, kMissionStream + static_cast<std::uint64_t>(sweep_index),
                    static_cast<std::uint64_t>(replicate));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const std::uint64_t master = spec.base.rng_seed;

    std::vector<std::pair<std::string, std::string>> sweeps;  // (key, value)
    if (spec.sweep_key.empty()) {
        sweeps.emplace_back("none", "");
    } else {
        for (const auto& v : spec.sweep_values) sweeps.emplace_back(spec.sweep_key, v);
    }

    ExperimentResult result;
    for (std::size_t si = 0; si < sweeps.size(); ++si) {
        const auto& [key, value] = sweeps[si];
        const MissionConfig swept = spec.apply_sweep(value);

        std::vector<double> times, fns, fps, totals, acquireds;
        for (int rep = 0; rep < spec.replicates; ++rep) {
            MissionConfig config = swept;
            config.rng_seed = mission_seed(master, static_cast<int>(si), rep);

            const PlumeSource source = draw_source(spec, master, static_cast<int>(si), rep);
            const ConcentrationField field(source, source.effective_height);

            ResultRow row;
            row.sweep_key = key;
            row.sweep_value = value;
            row.replicate = std::to_string(rep);
            row.seed = std::to_string(config.rng_seed);
            try {
                const MissionResult mission = run_mission(config, field);
                row.status = "ok";
                row.mission_time_s = mission.mission_time;
                row.fn_pct = mission.report.fn_pct;
                row.fp_pct = mission.report.fp_pct;
                row.total_pct = mission.report.total_pct;
                row.acquired = mission.report.plume_acquired ? 1.0 : 0.0;
                times.push_back(row.mission_time_s);
                fns.push_back(row.fn_pct);
                fps.push_back(row.fp_pct);
                totals.push_back(row.total_pct);
                acquireds.push_back(row.acquired);
            } catch (const InfeasibleError&) {
                row.status = "infeasible";
            }
            result.rows.push_back(std::move(row));
        }

        ResultRow agg;
        agg.sweep_key = key;
        agg.sweep_value = value;
        agg.replicate = "";
        agg.seed = "";
        agg.status = "aggregate";
        const Stats st = stats_of(times);
        const Stats sf = stats_of(fns);
        const Stats sp = stats_of(fps);
        const Stats stt = stats_of(totals);
        const Stats sa = stats_of(acquireds);
        agg.mission_time_s = st.mean;
        agg.fn_pct = sf.mean;
        agg.fp_pct = sp.mean;
        agg.total_pct = stt.mean;
        agg.acquired = sa.mean;
        agg.mission_time_s_std = st.std_dev;
        agg.fn_pct_std = sf.std_dev;
        agg.fp_pct_std = sp.std_dev;
        agg.total_pct_std = stt.std_dev;
        agg.acquired_std = sa.std_dev;
        result.rows.push_back(std::move(agg));
    }
    return result;
}

std::string result_csv_header() {
    return "sweep_key,sweep_value,replicate,seed,status,mission_time_s,fn_pct,fp_pct,total_pct,"
           "acquired,mission_time_s_std,fn_pct_std,fp_pct_std,total_pct_std,acquired_std";
}

void write_result_csv(std::ostream& os, const ExperimentResult& result) {
    os << result_csv_header() << '\n';
    for (const auto& r : result.rows) {
        os << r.sweep_key << ',' << r.sweep_value << ',' << r.replicate << ',' << r.seed << ','
           << r.status;
        if (r.status == "infeasible") {
            os << ",,,,,,,,,,\n";  // ten empty metric columns
            continue;
        }
        os << ',' << fmt(r.mission_time_s) << ',' << fmt(r.fn_pct) << ',' << fmt(r.fp_pct) << ','
           << fmt(r.total_pct) << ',' << fmt(r.acquired);
        if (r.status == "aggregate") {
            os << ',' << fmt(r.mission_time_s_std) << ',' << fmt(r.fn_pct_std) << ','
               << fmt(r.fp_pct_std) << ',' << fmt(r.total_pct_std) << ',' << fmt(r.acquired_std);
        } else {
            os << ",,,,,";
        }
        os << '\n';
    }
}

}  // namespace plume
