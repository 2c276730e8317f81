#pragma once

#include <cstdint>
#include <vector>

#include "kforge/density.hpp"
#include "kforge/kinematics.hpp"

namespace kforge {

/// Visit order over a point cloud; `order` is a permutation of 0..n-1.
struct Tour {
    std::vector<int> order;
    bool open_ended = true;
};

struct TspBudget {
    int max_2opt_passes = 64;
    double time_limit_s = 60.0;
    /// 2-opt candidate moves are restricted to the k nearest neighbours of
    /// each city, keeping passes O(n*k) on large instances.
    int neighbor_k = 16;
    bool open_ended = true;
};

/// Per-pass tour lengths, for monotonicity checks and reporting.
struct TspStats {
    double nn_length = 0.0;
    std::vector<double> pass_lengths;
    bool budget_exhausted = false;
};

/// Nearest-neighbour construction (start city drawn from the seed, ties by
/// lowest index) followed by 2-opt until no improving move or the budget is
/// spent. Deterministic given (points, budget, seed). Duplicate points are
/// rejected; jitter them upstream.
Tour solve_tsp(const PointCloud& pc, const TspBudget& budget, std::uint64_t seed,
               TspStats* stats = nullptr);

/// Open path length (plus the closing edge when the tour is closed).
double tour_length(const Eigen::MatrixXd& points, const Tour& tour);

/// Ordered vertices of a piecewise-linear path; consecutive vertices distinct.
struct Polyline {
    Eigen::MatrixXd vertices;  // m x d

    int dim() const { return static_cast<int>(vertices.cols()); }
    long size() const { return vertices.rows(); }
    std::vector<double> segment_lengths() const;
    double length() const;
    void validate() const;
};

/// Vertices in tour order as an open path (an MRI readout need not return).
Polyline tour_to_polyline(const PointCloud& pc, const Tour& tour);

/// Prepends a vertex (typically the k-space center) unless it coincides with
/// the current first vertex.
Polyline prepend_vertex(const Polyline& poly, const Eigen::RowVectorXd& v);

struct SpeedSpec {
    enum class Mode { fixed_speed, fixed_duration };
    Mode mode = Mode::fixed_speed;
    double value = 0.0;  // m^-1 s^-1, or s
};

/// Arc-length parameterization at constant speed, sampled every dt. The
/// sample count is rounded so the last sample lands exactly on the final
/// vertex; the effective speed absorbs the sub-dt rounding.
Curve constant_speed_param(const Polyline& poly, const SpeedSpec& spec, double dt);

}  // namespace kforge
