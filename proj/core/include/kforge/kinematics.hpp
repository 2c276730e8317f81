#pragma once

#include <Eigen/Dense>

#include "kforge/errors.hpp"

namespace kforge {

/// Proton gyromagnetic ratio over 2*pi, Hz/T. Times scale through it.
inline constexpr double kGammaBarProton = 42.576e6;

/// Constraint norm: l2 over the d-vector, or per-coordinate bounds for
/// hardware whose coils are energized independently.
enum class NormMode { rotation_invariant, rotation_variant };

/// Scanner gradient-system limits as published: amplitude in T/m, slew rate
/// in T/m/ms.
struct HardwareLimits {
    double g_max = 1.0;          // T m^-1
    double s_max_per_ms = 5.3;   // T m^-1 ms^-1
    double gamma = kGammaBarProton;  // Hz T^-1
    NormMode norm_mode = NormMode::rotation_invariant;

    void validate() const;
};

/// Kinematic bounds in k-space units: max speed alpha (m^-1 s^-1) and max
/// acceleration beta (m^-1 s^-2).
struct KinematicLimits {
    double alpha = 0.0;
    double beta = 0.0;
    NormMode norm_mode = NormMode::rotation_invariant;
};

/// Uniformly time-sampled k-space trajectory: positions is n x d (m^-1),
/// one row per sample taken every dt seconds.
struct Curve {
    Eigen::MatrixXd positions;
    double dt = 0.0;

    long samples() const { return positions.rows(); }
    int dim() const { return static_cast<int>(positions.cols()); }
    double duration() const { return (samples() - 1) * dt; }

    void validate() const;
};

/// Gradient waveform g = d(k)/dt / gamma, one row per inter-sample interval.
struct GradientWaveform {
    Eigen::MatrixXd samples;  // (n-1) x d, T m^-1
    double dt = 0.0;
};

struct AdmissibilityReport {
    double max_speed_ratio = 0.0;
    double max_accel_ratio = 0.0;
    bool admissible = false;
};

/// alpha = gamma * g_max, beta = gamma * s_max (the slew bound is given per
/// millisecond and converted to SI here).
KinematicLimits derive_limits(const HardwareLimits& hw);

/// Forward first differences, (n-1) x d, units m^-1 s^-1.
Eigen::MatrixXd finite_diff_speed(const Curve& c);

/// Centered second differences, (n-2) x d, units m^-1 s^-2. Constraints are
/// only evaluated where the stencil is defined (no one-sided endpoints).
Eigen::MatrixXd finite_diff_accel(const Curve& c);

/// Norm of one stencil row under the given mode (l2 or max-abs).
double stencil_norm(const Eigen::RowVectorXd& v, NormMode mode);

/// Max speed/accel ratios against the limits; admissible iff both <= 1+tol.
AdmissibilityReport check_admissible(const Curve& c, const KinematicLimits& lim,
                                     double tol = 1e-9);

/// g(t) = gamma^-1 * ds/dt on the discrete stencil.
GradientWaveform to_gradients(const Curve& c, const HardwareLimits& hw);

/// Cumulative-sum inverse of to_gradients, starting from `start` (1 x d).
/// Round-trips to_gradients to ~1e-12 relative.
Curve integrate_gradients(const GradientWaveform& g, const HardwareLimits& hw,
                          const Eigen::RowVectorXd& start);

}  // namespace kforge
