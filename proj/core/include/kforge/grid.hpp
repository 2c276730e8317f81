#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "kforge/errors.hpp"

namespace kforge {

/// Per-axis cell counts of a Cartesian k-space grid, d in {2,3}.
/// Storage everywhere is row-major: axis 0 slowest, last axis fastest.
using GridDims = std::vector<int>;

inline long cell_count(const GridDims& dims) {
    long n = 1;
    for (int d : dims) n *= d;
    return n;
}

/// Geometry of a centered k-space grid. The DC cell sits at index
/// floor(n/2) on each axis (even sizes keep one asymmetric Nyquist row),
/// matching centered discrete Fourier indexing.
struct GridGeometry {
    GridDims dims;
    std::vector<double> fov_k;  // physical extent per axis, m^-1

    GridGeometry() = default;
    GridGeometry(GridDims d, std::vector<double> fov) : dims(std::move(d)), fov_k(std::move(fov)) {
        if (dims.size() < 2 || dims.size() > 3 || dims.size() != fov_k.size())
            throw config_error("grid: dims and fov_k must both have 2 or 3 axes");
        for (std::size_t a = 0; a < dims.size(); ++a)
            if (dims[a] < 1 || !(fov_k[a] > 0.0))
                throw config_error("grid: dims must be >=1 and fov_k positive");
    }

    int dim() const { return static_cast<int>(dims.size()); }
    long cells() const { return cell_count(dims); }
    double cell_size(int axis) const { return fov_k[axis] / dims[axis]; }

    /// Physical coordinate of a cell center.
    double coord(int axis, int index) const {
        return (index - dims[axis] / 2) * cell_size(axis);
    }

    /// Largest |k| representable along any single axis; the radius scale used
    /// for center disks and density clamping.
    double k_max() const {
        double m = 0.0;
        for (std::size_t a = 0; a < dims.size(); ++a) m = std::max(m, fov_k[a] / 2.0);
        return m;
    }

    /// Continuous cell coordinate: cell i occupies u in [i, i+1).
    double to_cell_coord(int axis, double k) const {
        return k / cell_size(axis) + dims[axis] / 2 + 0.5;
    }

    long flat_index(const std::vector<int>& idx) const {
        long f = 0;
        for (std::size_t a = 0; a < dims.size(); ++a) f = f * dims[a] + idx[a];
        return f;
    }
};

/// Boolean grid of measured k-space cells (the set Omega).
struct SamplingMask {
    GridDims dims;
    std::vector<std::uint8_t> flags;  // row-major

    SamplingMask() = default;
    explicit SamplingMask(GridDims d) : dims(std::move(d)), flags(cell_count(dims), 0) {}

    long cells() const { return cell_count(dims); }
    long measured() const {
        return std::accumulate(flags.begin(), flags.end(), 0L,
                               [](long acc, std::uint8_t f) { return acc + (f != 0); });
    }
};

/// Union of two masks over the same grid.
SamplingMask mask_union(const SamplingMask& a, const SamplingMask& b);

}  // namespace kforge
