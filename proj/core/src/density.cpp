#include "kforge/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace kforge {

double DensityGrid::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

void normalize(DensityGrid& g) {
    double s = g.sum();
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::domain_error("density is degenerate (zero or non-finite mass)");
    for (double& v : g.values) v /= s;
}

// Visits every cell index vector in row-major order.
template <typename Fn>
void for_each_cell(const GridGeometry& geo, Fn&& fn) {
    std::vector<int> idx(geo.dim(), 0);
    const long n = geo.cells();
    for (long f = 0; f < n; ++f) {
        fn(f, idx);
        for (int a = geo.dim() - 1; a >= 0; --a) {
            if (++idx[a] < geo.dims[a]) break;
            idx[a] = 0;
        }
    }
}

double cell_radius(const GridGeometry& geo, const std::vector<int>& idx) {
    double r2 = 0.0;
    for (int a = 0; a < geo.dim(); ++a) {
        double k = geo.coord(a, idx[a]);
        r2 += k * k;
    }
    return std::sqrt(r2);
}

}  // namespace

DensityGrid radial_density(const GridDims& dims, const std::vector<double>& fov_k,
                           double exponent, double center_radius_frac) {
    if (exponent < 0.0) throw std::invalid_argument("density exponent must be >= 0");
    if (center_radius_frac < 0.0 || center_radius_frac >= 1.0)
        throw std::invalid_argument("center_radius_frac must be in [0, 1)");
    GridGeometry geo(dims, fov_k);
    double min_cell = fov_k[0] / dims[0];
    for (std::size_t a = 1; a < dims.size(); ++a)
        min_cell = std::min(min_cell, fov_k[a] / dims[a]);
    const double r0 = std::max(center_radius_frac * geo.k_max(), 0.5 * min_cell);

    DensityGrid g;
    g.dims = dims;
    g.fov_k = fov_k;
    g.values.resize(geo.cells());
    for_each_cell(geo, [&](long f, const std::vector<int>& idx) {
        g.values[f] = std::pow(std::max(cell_radius(geo, idx), r0), -exponent);
    });
    normalize(g);
    return g;
}

DensityGrid power_density(const DensityGrid& pi, double p) {
    DensityGrid g = pi;
    for (double& v : g.values) v = v > 0.0 ? std::pow(v, p) : 0.0;
    normalize(g);
    return g;
}

PointCloud draw_points(const DensityGrid& pi, long n_points, const DrawOptions& opts,
                       std::uint64_t seed) {
    if (n_points < 1) throw std::invalid_argument("n_points must be >= 1");
    GridGeometry geo = pi.geometry();
    const int d = geo.dim();

    double p = 1.0;
    if (opts.exponent == DrawExponent::dimension_scaled) p = double(d - 1) / double(d);
    DensityGrid target = power_density(pi, p);

    std::vector<double> cdf(target.values.size());
    std::partial_sum(target.values.begin(), target.values.end(), cdf.begin());
    cdf.back() = 1.0;  // guard against rounding in the last cell

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    PointCloud pc;
    pc.seed = seed;
    pc.points.resize(n_points, d);
    std::vector<int> idx(d);
    for (long i = 0; i < n_points; ++i) {
        double u = unif(rng);
        long f = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        f = std::min<long>(f, static_cast<long>(cdf.size()) - 1);
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(f % geo.dims[a]);
            f /= geo.dims[a];
        }
        for (int a = 0; a < d; ++a) {
            double k = geo.coord(a, idx[a]);
            if (opts.jitter) k += (unif(rng) - 0.5) * geo.cell_size(a);
            pc.points(i, a) = k;
        }
    }
    return pc;
}

SamplingMask center_mask(const GridDims& dims, const std::vector<double>& fov_k,
                         double center_radius_frac) {
    if (!(center_radius_frac > 0.0) || center_radius_frac >= 1.0)
        throw std::invalid_argument("center_radius_frac must be in (0, 1)");
    GridGeometry geo(dims, fov_k);
    const double r = center_radius_frac * geo.k_max();
    SamplingMask mask(dims);
    for_each_cell(geo, [&](long f, const std::vector<int>& idx) {
        mask.flags[f] = cell_radius(geo, idx) <= r ? 1 : 0;
    });
    return mask;
}

SamplingMask mask_union(const SamplingMask& a, const SamplingMask& b) {
    if (a.dims != b.dims) throw std::invalid_argument("mask_union: dims mismatch");
    SamplingMask out = a;
    for (std::size_t i = 0; i < out.flags.size(); ++i) out.flags[i] |= b.flags[i];
    return out;
}

}  // namespace kforge
