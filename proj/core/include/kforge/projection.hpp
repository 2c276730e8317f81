#pragma once

#include <utility>

#include "kforge/kinematics.hpp"
#include "kforge/tour.hpp"

namespace kforge {

struct ProjectionOptions {
    /// 0 picks the default 20*n.
    int max_iter = 0;
    /// Governs both the dual fixed-point residual and the accepted
    /// feasibility excess (ratios <= 1 + tol_rel on success).
    double tol_rel = 1e-6;
    bool pin_endpoints = false;
};

struct ProjectionDiagnostics {
    int iterations = 0;
    double final_gap = 0.0;  // dual fixed-point residual, relative
    double objective = 0.0;  // 0.5 * sum ||s_i - c_i||^2 * dt
    double max_speed_ratio = 0.0;
    double max_accel_ratio = 0.0;
    bool converged = false;
    int restarts = 0;
};

/// Projection of a discretized curve onto the admissible set: the unique
/// minimizer of 0.5*||s - c||^2 subject to every forward-difference speed in
/// the alpha ball and every centered-difference acceleration in the beta
/// ball (l2 balls, or boxes under rotation-variant limits). Duration and
/// sample count equal the input's.
///
/// Solved on the dual: one multiplier block per constraint row, accelerated
/// proximal gradient steps of size 1/L with L = ||[A1;A2]||^2 from power
/// iteration, ball-induced shrinkage as the prox, primal recovery
/// s = c - A^T q each iterate, adaptive restart on dual objective increase.
/// Non-convergence returns the best iterate with converged=false; it never
/// silently succeeds.
std::pair<Curve, ProjectionDiagnostics> project_curve(const Curve& c, const KinematicLimits& lim,
                                                      const ProjectionOptions& opts = {});

struct TimeChoice {
    enum class Kind { fixed_duration, speed_fraction };
    Kind kind = Kind::speed_fraction;
    double value = 1.0;  // seconds, or fraction of alpha
};

/// constant_speed_param then project_curve; the composition used by the CLI.
std::pair<Curve, ProjectionDiagnostics> project_polyline_pipeline(
    const Polyline& poly, const KinematicLimits& lim, const TimeChoice& t_choice, double dt,
    const ProjectionOptions& opts = {});

}  // namespace kforge
