#include "kforge/kinematics.hpp"

#include <cmath>

namespace kforge {

void HardwareLimits::validate() const {
    if (!(g_max > 0.0) || !std::isfinite(g_max) ||
        !(s_max_per_ms > 0.0) || !std::isfinite(s_max_per_ms) ||
        !(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("hardware limits must be finite and positive");
}

void Curve::validate() const {
    if (samples() < 3) throw std::invalid_argument("curve needs at least 3 samples");
    if (dim() < 1 || dim() > 3) throw std::invalid_argument("curve dimension must be 1..3");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("curve dt must be positive");
    if (!positions.allFinite()) throw std::invalid_argument("curve has non-finite coordinates");
}

KinematicLimits derive_limits(const HardwareLimits& hw) {
    hw.validate();
    KinematicLimits lim;
    lim.alpha = hw.gamma * hw.g_max;
    lim.beta = hw.gamma * hw.s_max_per_ms * 1e3;  // per-ms slew to per-s
    lim.norm_mode = hw.norm_mode;
    if (!std::isfinite(lim.alpha) || !std::isfinite(lim.beta))
        throw std::invalid_argument("derived kinematic limits overflow");
    return lim;
}

Eigen::MatrixXd finite_diff_speed(const Curve& c) {
    c.validate();
    const long n = c.samples();
    return (c.positions.bottomRows(n - 1) - c.positions.topRows(n - 1)) / c.dt;
}

Eigen::MatrixXd finite_diff_accel(const Curve& c) {
    c.validate();
    const long n = c.samples();
    return (c.positions.bottomRows(n - 2) - 2.0 * c.positions.block(1, 0, n - 2, c.dim()) +
            c.positions.topRows(n - 2)) /
           (c.dt * c.dt);
}

double stencil_norm(const Eigen::RowVectorXd& v, NormMode mode) {
    return mode == NormMode::rotation_invariant ? v.norm() : v.cwiseAbs().maxCoeff();
}

namespace {
double max_row_norm(const Eigen::MatrixXd& m, NormMode mode) {
    if (mode == NormMode::rotation_invariant) return m.rowwise().norm().maxCoeff();
    return m.cwiseAbs().maxCoeff();
}
}  // namespace

AdmissibilityReport check_admissible(const Curve& c, const KinematicLimits& lim, double tol) {
    AdmissibilityReport rep;
    rep.max_speed_ratio = max_row_norm(finite_diff_speed(c), lim.norm_mode) / lim.alpha;
    rep.max_accel_ratio = max_row_norm(finite_diff_accel(c), lim.norm_mode) / lim.beta;
    rep.admissible = rep.max_speed_ratio <= 1.0 + tol && rep.max_accel_ratio <= 1.0 + tol;
    return rep;
}

GradientWaveform to_gradients(const Curve& c, const HardwareLimits& hw) {
    hw.validate();
    GradientWaveform g;
    g.samples = finite_diff_speed(c) / hw.gamma;
    g.dt = c.dt;
    return g;
}

Curve integrate_gradients(const GradientWaveform& g, const HardwareLimits& hw,
                          const Eigen::RowVectorXd& start) {
    hw.validate();
    Curve c;
    c.dt = g.dt;
    c.positions.resize(g.samples.rows() + 1, start.cols());
    c.positions.row(0) = start;
    for (long i = 0; i < g.samples.rows(); ++i)
        c.positions.row(i + 1) = c.positions.row(i) + hw.gamma * g.dt * g.samples.row(i);
    return c;
}

}  // namespace kforge
