#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "plume/mission.hpp"

namespace plume {

/// Configuration file problem, with the offending line when known.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A sweep over one mission variable, replicated over random source draws.
struct ExperimentSpec {
    MissionConfig base;
    std::string sweep_key;                  // empty = no sweep
    std::vector<std::string> sweep_values;  // parsed per key when applied
    int replicates = 1;
    Rect source_rect;  // source positions drawn uniformly from here
    std::string out_path;

    ExperimentSpec();

    /// Mission config with one sweep value applied; throws ConfigError on a
    /// value that does not parse for the key.
    MissionConfig apply_sweep(const std::string& value) const;

    void validate() const;
};

/// One line of the result table. Aggregate rows carry the per-sweep-value
/// mean in the metric columns and the population standard deviation in the
/// *_std columns.
struct ResultRow {
    std::string sweep_key;
    std::string sweep_value;
    std::string replicate;  // replicate index, or "" for the aggregate row
    std::string seed;
    std::string status;  // ok | infeasible | aggregate
    double mission_time_s = 0.0;
    double fn_pct = 0.0;
    double fp_pct = 0.0;
    double total_pct = 0.0;
    double acquired = 0.0;  // 0/1 per run; fraction in aggregates
    double mission_time_s_std = 0.0;
    double fn_pct_std = 0.0;
    double fp_pct_std = 0.0;
    double total_pct_std = 0.0;
    double acquired_std = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;  // data rows then aggregates, deterministic order
};

/// Flat key=value format with '#' comments. Unknown keys, duplicates and
/// invalid values raise ConfigError with the line number.
ExperimentSpec parse_config(const std::string& text);

/// Inverse of parse_config: emits every explicit key so that
/// parse(serialize(spec)) reproduces the spec exactly.
std::string serialize_config(const ExperimentSpec& spec);

/// Draw the replicate's plume source. Deterministic in (master seed,
/// sweep index, replicate).
PlumeSource draw_source(const ExperimentSpec& spec, std::uint64_t master_seed, int sweep_index,
                        int replicate);

/// Per-mission RNG seed, derived the same way for `run` and `sweep`.
std::uint64_t mission_seed(std::uint64_t master_seed, int sweep_index, int replicate);

/// Runs sweep values x replicates, recording one row per mission and one
/// aggregate row per sweep value. Infeasible configurations become rows
/// flagged infeasible rather than aborting the sweep.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_result_csv(std::ostream& os, const ExperimentResult& result);

/// Header line of the result table, fixed across runs.
std::string result_csv_header();

}  // namespace plume
