#pragma once

#include <utility>

#include "kforge/kinematics.hpp"
#include "kforge/tour.hpp"

namespace kforge {

enum class SpeedProfile { triangular, trapezoidal };

struct SegmentTiming {
    double duration_s = 0.0;
    SpeedProfile profile = SpeedProfile::triangular;
};

/// Minimum rest-to-rest time over a straight segment of length L under the
/// scalar double integrator: T = L/alpha + alpha/beta when the speed plateau
/// is reached (L >= alpha^2/beta), else the triangular 2*sqrt(L/beta).
SegmentTiming segment_time(double length, const KinematicLimits& lim);

struct ReparamReport {
    double t_oc_s = 0.0;
    int n_segments = 0;
    int n_triangular = 0;
    int n_trapezoidal = 0;
    double dt_used = 0.0;
    bool dt_refined = false;
};

/// Time-optimal traversal of a polyline: rest-to-rest bang-bang on every
/// segment (direction changes at angular points force zero speed), sampled
/// uniformly at dt. T_OC is the analytic sum of segment times and does not
/// depend on dt. dt coarser than a quarter of the shortest segment time is
/// refined; the report carries the dt actually used.
std::pair<Curve, ReparamReport> time_optimal_polyline(const Polyline& poly,
                                                      const KinematicLimits& lim, double dt);

/// T_OC and the profile histogram without sampling a curve.
ReparamReport time_optimal_report(const Polyline& poly, const KinematicLimits& lim);

/// Time-optimal traversal of a smooth support given as a sampled curve:
/// velocity capped by min(alpha, sqrt(beta/kappa)) then forward/backward
/// passes keep the tangential acceleration within the budget left over by
/// the centripetal load. Endpoint speeds are free unless rest_endpoints.
/// Resampled to uniform dt.
Curve time_optimal_smooth(const Curve& support, const KinematicLimits& lim, double ds,
                          bool rest_endpoints = false);

}  // namespace kforge
