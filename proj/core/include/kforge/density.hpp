#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "kforge/grid.hpp"

namespace kforge {

/// Nonnegative probability mass on a centered Cartesian k-space grid
/// (the target sampling density pi). Values always sum to 1.
struct DensityGrid {
    GridDims dims;
    std::vector<double> values;  // row-major
    std::vector<double> fov_k;   // m^-1 per axis

    int dim() const { return static_cast<int>(dims.size()); }
    long cells() const { return cell_count(dims); }
    double sum() const;
    GridGeometry geometry() const { return GridGeometry(dims, fov_k); }
};

/// I.i.d. draw from a density, points in k-space coordinates (m^-1).
struct PointCloud {
    Eigen::MatrixXd points;  // n x d
    std::uint64_t seed = 0;
};

/// Radially decaying density: cell value ~ 1/max(|k|, r0)^q with
/// r0 = center_radius_frac * k_max. The clamp keeps the k=0 singularity
/// finite; a lower clamp of half the smallest cell size always applies so
/// the DC cell never diverges. Normalized to sum 1.
DensityGrid radial_density(const GridDims& dims, const std::vector<double>& fov_k,
                           double exponent, double center_radius_frac = 0.0);

/// pi^p renormalized. p = 1 is the identity.
DensityGrid power_density(const DensityGrid& pi, double p);

enum class DrawExponent {
    dimension_scaled,  // pi^((d-1)/d), the exponent used before tour joining
    unit               // pi itself
};

struct DrawOptions {
    DrawExponent exponent = DrawExponent::dimension_scaled;
    /// Uniform jitter inside each chosen cell. On by default so tour input
    /// never contains duplicate vertices; turn off to land on cell centers.
    bool jitter = true;
};

/// I.i.d. inverse-CDF sampling over the flattened grid (cumulative mass +
/// binary search), mt19937_64 stream seeded explicitly. Bit-reproducible
/// for equal seeds.
PointCloud draw_points(const DensityGrid& pi, long n_points, const DrawOptions& opts,
                       std::uint64_t seed);

/// Deterministic center: flags exactly the cells with |k| <= frac * k_max.
SamplingMask center_mask(const GridDims& dims, const std::vector<double>& fov_k,
                         double center_radius_frac);

}  // namespace kforge
