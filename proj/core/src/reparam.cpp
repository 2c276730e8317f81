#include "kforge/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kforge {

SegmentTiming segment_time(double length, const KinematicLimits& lim) {
    if (length < 0.0 || !std::isfinite(length))
        throw std::invalid_argument("segment length must be finite and >= 0");
    if (!(lim.alpha > 0.0) || !(lim.beta > 0.0))
        throw std::invalid_argument("kinematic limits must be positive");
    SegmentTiming out;
    const double plateau_len = lim.alpha * lim.alpha / lim.beta;
    if (length >= plateau_len) {
        out.duration_s = length / lim.alpha + lim.alpha / lim.beta;
        out.profile = SpeedProfile::trapezoidal;
    } else {
        out.duration_s = 2.0 * std::sqrt(length / lim.beta);
        out.profile = SpeedProfile::triangular;
    }
    return out;
}

namespace {

// Distance covered at local time tau of a rest-to-rest bang-bang profile.
double profile_distance(double tau, double length, double duration, SpeedProfile profile,
                        const KinematicLimits& lim) {
    tau = std::clamp(tau, 0.0, duration);
    const double b = lim.beta;
    if (profile == SpeedProfile::triangular) {
        const double half = duration / 2.0;
        if (tau <= half) return 0.5 * b * tau * tau;
        const double rem = duration - tau;
        return length - 0.5 * b * rem * rem;
    }
    const double t_ramp = lim.alpha / b;
    if (tau <= t_ramp) return 0.5 * b * tau * tau;
    if (tau <= duration - t_ramp) return 0.5 * b * t_ramp * t_ramp + lim.alpha * (tau - t_ramp);
    const double rem = duration - tau;
    return length - 0.5 * b * rem * rem;
}

}  // namespace

std::pair<Curve, ReparamReport> time_optimal_polyline(const Polyline& poly,
                                                      const KinematicLimits& lim, double dt) {
    poly.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

    const auto seg_len = poly.segment_lengths();
    const int n_seg = static_cast<int>(seg_len.size());

    ReparamReport rep;
    rep.n_segments = n_seg;
    std::vector<SegmentTiming> timing(n_seg);
    std::vector<double> t_end(n_seg);
    double t_min = std::numeric_limits<double>::infinity();
    double t = 0.0;
    for (int i = 0; i < n_seg; ++i) {
        timing[i] = segment_time(seg_len[i], lim);
        (timing[i].profile == SpeedProfile::triangular ? rep.n_triangular : rep.n_trapezoidal)++;
        t += timing[i].duration_s;
        t_end[i] = t;
        t_min = std::min(t_min, timing[i].duration_s);
    }
    rep.t_oc_s = t;

    // A segment not resolved by the sampling would leak through the discrete
    // acceleration stencil; refine until every segment spans >= 4 samples.
    double dt_used = dt;
    while (dt_used > t_min / 4.0 && rep.t_oc_s / dt_used < 4e6) {
        dt_used /= 2.0;
        rep.dt_refined = true;
    }
    rep.dt_used = dt_used;

    const long n = static_cast<long>(std::ceil(rep.t_oc_s / dt_used)) + 1;
    Curve c;
    c.dt = dt_used;
    c.positions.resize(n, poly.dim());

    int seg = 0;
    for (long i = 0; i < n; ++i) {
        const double ti = std::min(i * dt_used, rep.t_oc_s);
        while (seg + 1 < n_seg && t_end[seg] < ti) ++seg;
        const double t_start = t_end[seg] - timing[seg].duration_s;
        const double d = profile_distance(ti - t_start, seg_len[seg], timing[seg].duration_s,
                                          timing[seg].profile, lim);
        const Eigen::RowVectorXd dir =
            (poly.vertices.row(seg + 1) - poly.vertices.row(seg)) / seg_len[seg];
        c.positions.row(i) = poly.vertices.row(seg) + d * dir;
    }
    c.positions.row(n - 1) = poly.vertices.row(poly.size() - 1);
    return {std::move(c), rep};
}

ReparamReport time_optimal_report(const Polyline& poly, const KinematicLimits& lim) {
    poly.validate();
    ReparamReport rep;
    const auto seg_len = poly.segment_lengths();
    rep.n_segments = static_cast<int>(seg_len.size());
    for (double L : seg_len) {
        SegmentTiming st = segment_time(L, lim);
        (st.profile == SpeedProfile::triangular ? rep.n_triangular : rep.n_trapezoidal)++;
        rep.t_oc_s += st.duration_s;
    }
    return rep;
}

namespace {

// Curvature of the circle through three points (Menger); exact on arcs.
double menger_curvature(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b,
                        const Eigen::RowVectorXd& c) {
    const Eigen::RowVectorXd ab = b - a, ac = c - a, bc = c - b;
    const double la = ab.norm(), lb = bc.norm(), lc = ac.norm();
    if (la == 0.0 || lb == 0.0 || lc == 0.0) return std::numeric_limits<double>::infinity();
    double cross2;
    if (a.cols() == 2) {
        cross2 = std::abs(ab[0] * ac[1] - ab[1] * ac[0]);
    } else {
        Eigen::Vector3d u = ab.transpose(), v = ac.transpose();
        cross2 = u.cross(v).norm();
    }
    return 2.0 * cross2 / (la * lb * lc);
}

}  // namespace

Curve time_optimal_smooth(const Curve& support, const KinematicLimits& lim, double ds,
                          bool rest_endpoints) {
    support.validate();
    if (!(ds > 0.0)) throw std::invalid_argument("ds must be positive");

    // Resample the support at uniform arc length ds.
    const long n_in = support.samples();
    std::vector<double> cum(n_in, 0.0);
    for (long i = 1; i < n_in; ++i) {
        double step = (support.positions.row(i) - support.positions.row(i - 1)).norm();
        if (step == 0.0)
            throw std::invalid_argument("support has repeated points (curvature undefined)");
        cum[i] = cum[i - 1] + step;
    }
    const double total = cum.back();
    const long m = std::max<long>(3, static_cast<long>(std::ceil(total / ds)) + 1);
    const double ds_eff = total / double(m - 1);

    Eigen::MatrixXd q(m, support.dim());
    {
        long j = 0;
        for (long i = 0; i < m; ++i) {
            const double target = ds_eff * i;
            while (j + 1 < n_in - 1 && cum[j + 1] < target) ++j;
            const double w = (target - cum[j]) / (cum[j + 1] - cum[j]);
            q.row(i) = support.positions.row(j) +
                       std::clamp(w, 0.0, 1.0) * (support.positions.row(j + 1) - support.positions.row(j));
        }
    }

    // Speed cap from the centripetal bound, then two passes for the
    // tangential budget |d(v^2)/ds| <= 2 sqrt(beta^2 - (kappa v^2)^2).
    std::vector<double> kappa(m, 0.0);
    for (long i = 1; i + 1 < m; ++i) kappa[i] = menger_curvature(q.row(i - 1), q.row(i), q.row(i + 1));
    kappa[0] = kappa[1];
    kappa[m - 1] = kappa[m - 2];

    std::vector<double> v(m);
    for (long i = 0; i < m; ++i) {
        double cap = lim.alpha;
        if (kappa[i] > 0.0 && std::isfinite(kappa[i]))
            cap = std::min(cap, std::sqrt(lim.beta / kappa[i]));
        else if (!std::isfinite(kappa[i]))
            throw std::invalid_argument("support curvature is unbounded");
        v[i] = cap;
    }
    if (rest_endpoints) {
        v[0] = 0.0;
        v[m - 1] = 0.0;
    }
    auto tangential = [&](double vel, double k) {
        const double centripetal = k * vel * vel;
        const double rem = lim.beta * lim.beta - centripetal * centripetal;
        return rem > 0.0 ? std::sqrt(rem) : 0.0;
    };
    for (long i = 0; i + 1 < m; ++i) {
        const double a_t = tangential(v[i], std::max(kappa[i], kappa[i + 1]));
        v[i + 1] = std::min(v[i + 1], std::sqrt(v[i] * v[i] + 2.0 * a_t * ds_eff));
    }
    for (long i = m - 1; i > 0; --i) {
        const double a_t = tangential(v[i], std::max(kappa[i], kappa[i - 1]));
        v[i - 1] = std::min(v[i - 1], std::sqrt(v[i] * v[i] + 2.0 * a_t * ds_eff));
    }

    std::vector<double> time(m, 0.0);
    for (long i = 1; i < m; ++i) time[i] = time[i - 1] + 2.0 * ds_eff / (v[i - 1] + v[i]);
    const double duration = time.back();
    const double v_peak = *std::max_element(v.begin(), v.end());

    const double dt = ds_eff / v_peak;
    const long n_out = static_cast<long>(std::ceil(duration / dt)) + 1;
    Curve out;
    out.dt = dt;
    out.positions.resize(n_out, support.dim());
    long j = 0;
    for (long i = 0; i < n_out; ++i) {
        const double ti = std::min(i * dt, duration);
        while (j + 1 < m - 1 && time[j + 1] < ti) ++j;
        const double tau = ti - time[j];
        const double dtj = time[j + 1] - time[j];
        const double acc = (v[j + 1] - v[j]) / dtj;
        double s_local = v[j] * tau + 0.5 * acc * tau * tau;
        s_local = std::clamp(s_local, 0.0, ds_eff);
        out.positions.row(i) = q.row(j) + (s_local / ds_eff) * (q.row(j + 1) - q.row(j));
    }
    out.positions.row(n_out - 1) = q.row(m - 1);
    return out;
}

}  // namespace kforge
