#include "plume/metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace plume {

std::string ErrorReport::to_csv() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "FN,FP,total,acquired,omega_p,omega_n\n%.17g,%.17g,%.17g,%d,%zu,%zu",
                  fn_pct, fp_pct, total_pct, plume_acquired ? 1 : 0, omega_p, omega_n);
    return buf;
}

LabelGrid classify(const EstimateGrid& grid, const DangerThreshold& threshold) {
    LabelGrid labels(grid.region);
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        labels.labels[i] = grid.values[i] >= threshold.c_d ? 1 : 0;
    }
    return labels;
}

ErrorReport score(const LabelGrid& truth, const LabelGrid& estimate) {
    if (!(truth.region == estimate.region) || truth.labels.size() != estimate.labels.size()) {
        throw std::invalid_argument("score: truth and estimate grids do not match");
    }

    ErrorReport report;
    std::size_t fn_cnt = 0, fp_cnt = 0;
    for (std::size_t i = 0; i < truth.labels.size(); ++i) {
        if (truth.labels[i]) {
            ++report.omega_p;
            if (!estimate.labels[i]) {
                ++fn_cnt;
            } else {
                report.plume_acquired = true;
            }
        } else {
            ++report.omega_n;
            if (estimate.labels[i]) ++fp_cnt;
        }
    }
    if (report.omega_p == 0) {
        throw std::invalid_argument("score: ground truth contains no unsafe box");
    }

    report.fn_pct = 100.0 * static_cast<double>(fn_cnt) / static_cast<double>(report.omega_p);
    report.fp_pct = report.omega_n == 0
                        ? 0.0
                        : 100.0 * static_cast<double>(fp_cnt) / static_cast<double>(report.omega_n);
    report.total_pct = report.fn_pct + report.fp_pct;
    return report;
}

}  // namespace plume
