#pragma once

#include <iosfwd>
#include <string>

#include "plume/kernel_estimator.hpp"
#include "plume/label_grid.hpp"

namespace plume {

/// Misclassification percentages against the ground-truth partition.
/// FN is normalized by the unsafe set, FP by the safe set; total is
/// their sum, so it ranges over [0, 200].
struct ErrorReport {
    double fn_pct = 0.0;
    double fp_pct = 0.0;
    double total_pct = 0.0;
    std::size_t omega_p = 0;  // ground-truth unsafe boxes
    std::size_t omega_n = 0;  // ground-truth safe boxes
    bool plume_acquired = false;

    /// One CSV row (with a header naming the fields).
    std::string to_csv() const;
};

/// Threshold every box estimate (inclusive: estimate == C_d labels unsafe).
LabelGrid classify(const EstimateGrid& grid, const DangerThreshold& threshold);

/// Score an estimated label grid against ground truth. Requires matching
/// regions and at least one true unsafe box.
ErrorReport score(const LabelGrid& truth, const LabelGrid& estimate);

}  // namespace plume
