#include "plume/plume_field.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace plume {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
// Downwind distances below this are treated as upwind; keeps the 1/(sy*sz)
// prefactor finite arbitrarily close to the source plane.
constexpr double kMinDownwind = 1e-9;
}  // namespace

void PlumeSource::validate() const {
    if (!(emission_rate > 0.0)) throw std::invalid_argument("PlumeSource: Q must be > 0");
    if (!(wind_speed > 0.0)) throw std::invalid_argument("PlumeSource: wind speed must be > 0");
    if (effective_height < 0.0) throw std::invalid_argument("PlumeSource: H must be >= 0");
    if (!(a_y > 0.0 && b_y > 0.0 && a_z > 0.0 && b_z > 0.0)) {
        throw std::invalid_argument("PlumeSource: stability coefficients must be positive");
    }
}

DangerThreshold::DangerThreshold(double value) : c_d(value) {
    if (!(c_d > 0.0)) throw std::invalid_argument("DangerThreshold: C_d must be > 0");
}

ConcentrationField::ConcentrationField(const PlumeSource& source, double sensor_altitude)
    : source_(source), altitude_(sensor_altitude) {
    source_.validate();
    downwind_ = heading_dir(source_.wind_direction);
    crosswind_ = {-downwind_.y, downwind_.x};
}

double ConcentrationField::concentration_at(const Vec2& p) const {
    const Vec2 rel = p - source_.position;
    const double xd = rel.dot(downwind_);
    if (xd <= kMinDownwind) return 0.0;
    const double yc = rel.dot(crosswind_);

    const double sy = source_.a_y * std::pow(xd, source_.b_y);
    const double sz = source_.a_z * std::pow(xd, source_.b_z);

    const double h = source_.effective_height;
    const double z = altitude_;
    const double vert = std::exp(-(z - h) * (z - h) / (2.0 * sz * sz)) +
                        std::exp(-(z + h) * (z + h) / (2.0 * sz * sz));
    const double cross = std::exp(-yc * yc / (2.0 * sy * sy));
    return source_.emission_rate / (kTwoPi * source_.wind_speed * sy * sz) * cross * vert;
}

double ConcentrationField::max_over_region(const Region& region) const {
    double best = 0.0;
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        best = std::max(best, concentration_at(region.box_center(i)));
    }
    return best;
}

LabelGrid ground_truth_labels(const ConcentrationField& field, const Region& region,
                              const DangerThreshold& threshold, int subsample_n) {
    if (subsample_n < 1) {
        throw std::invalid_argument("ground_truth_labels: subsample_n must be >= 1");
    }
    LabelGrid grid(region);
    const int n = subsample_n;
    for (std::size_t i = 0; i < region.box_count(); ++i) {
        const Vec2 corner = region.box_min_corner(i);
        double box_max = 0.0;
        for (int r = 0; r < n && box_max < threshold.c_d; ++r) {
            for (int c = 0; c < n; ++c) {
                const Vec2 p{corner.x + (c + 0.5) / n, corner.y + (r + 0.5) / n};
                box_max = std::max(box_max, field.concentration_at(p));
                if (box_max >= threshold.c_d) break;
            }
        }
        grid.labels[i] = box_max >= threshold.c_d ? 1 : 0;
    }
    return grid;
}

void dump_concentration_grid(std::ostream& os, const ConcentrationField& field,
                             const Region& region) {
    os << "rows,cols,box_size_m\n";
    os << region.rows() << ',' << region.cols() << ",1\n";
    char buf[32];
    for (int r = 0; r < region.rows(); ++r) {
        for (int c = 0; c < region.cols(); ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * region.cols() + c;
            std::snprintf(buf, sizeof(buf), "%.9g", field.concentration_at(region.box_center(i)));
            if (c) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace plume
