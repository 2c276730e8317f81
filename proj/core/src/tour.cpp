#include "kforge/tour.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace kforge {

namespace {

// Uniform bucket grid over the point bounding box; supports k-nearest and
// nearest-unvisited queries with expanding shell search.
class BucketGrid {
public:
    BucketGrid(const Eigen::MatrixXd& pts) : pts_(pts), d_(static_cast<int>(pts.cols())) {
        const long n = pts.rows();
        lo_ = pts.colwise().minCoeff();
        Eigen::RowVectorXd hi = pts.colwise().maxCoeff();
        const double target_per_bucket = 2.0;
        long buckets = std::max<long>(1, static_cast<long>(n / target_per_bucket));
        int per_axis = std::max(1, static_cast<int>(std::floor(std::pow(double(buckets), 1.0 / d_))));
        dims_.assign(d_, per_axis);
        cell_.resize(d_);
        for (int a = 0; a < d_; ++a) {
            double span = std::max(hi[a] - lo_[a], 1e-300);
            cell_[a] = span / dims_[a] * (1.0 + 1e-12);
        }
        long total = 1;
        for (int a = 0; a < d_; ++a) total *= dims_[a];
        buckets_.assign(total, {});
        for (long i = 0; i < n; ++i) buckets_[bucket_of(i)].push_back(static_cast<int>(i));
        min_cell_ = *std::min_element(cell_.begin(), cell_.end());
    }

    // k nearest neighbours of point i (excluding i), sorted by (dist, index).
    std::vector<int> k_nearest(int i, int k) const {
        std::vector<std::pair<double, int>> best;
        shell_search(pts_.row(i), [&](int j) {
            if (j == i) return;
            best.emplace_back((pts_.row(j) - pts_.row(i)).norm(), j);
        }, [&](double shell_min_dist) {
            if (static_cast<int>(best.size()) < k) return false;
            std::nth_element(best.begin(), best.begin() + (k - 1), best.end());
            return best[k - 1].first < shell_min_dist;
        });
        std::sort(best.begin(), best.end());
        if (static_cast<int>(best.size()) > k) best.resize(k);
        std::vector<int> out(best.size());
        for (std::size_t j = 0; j < best.size(); ++j) out[j] = best[j].second;
        return out;
    }

    int nearest_unvisited(const Eigen::RowVectorXd& from, const std::vector<char>& visited) const {
        std::pair<double, int> best{std::numeric_limits<double>::infinity(), -1};
        shell_search(from, [&](int j) {
            if (visited[j]) return;
            double dd = (pts_.row(j) - from).norm();
            if (std::pair<double, int>{dd, j} < best) best = {dd, j};
        }, [&](double shell_min_dist) { return best.second >= 0 && best.first < shell_min_dist; });
        return best.second;
    }

private:
    long bucket_of(long i) const {
        long f = 0;
        for (int a = 0; a < d_; ++a) {
            int c = static_cast<int>((pts_(i, a) - lo_[a]) / cell_[a]);
            c = std::clamp(c, 0, dims_[a] - 1);
            f = f * dims_[a] + c;
        }
        return f;
    }

    // Visits buckets in expanding Chebyshev shells around `from` until
    // `done(min possible distance of next shell)` says stop.
    template <typename Visit, typename Done>
    void shell_search(const Eigen::RowVectorXd& from, Visit&& visit, Done&& done) const {
        std::vector<int> center(d_);
        int max_dim = 0;
        for (int a = 0; a < d_; ++a) {
            center[a] = std::clamp(static_cast<int>((from[a] - lo_[a]) / cell_[a]), 0, dims_[a] - 1);
            max_dim = std::max(max_dim, dims_[a]);
        }
        for (int ring = 0; ring < max_dim; ++ring) {
            bool any = false;
            visit_ring(center, ring, [&](long bucket) {
                any = true;
                for (int j : buckets_[bucket]) visit(j);
            });
            double next_min = ring * min_cell_;  // conservative lower bound
            if (done(next_min)) return;
            if (!any && ring > 2 * max_dim) return;
        }
    }

    template <typename Fn>
    void visit_ring(const std::vector<int>& center, int ring, Fn&& fn) const {
        std::vector<int> idx(d_);
        visit_ring_rec(center, ring, 0, false, idx, fn);
    }

    template <typename Fn>
    void visit_ring_rec(const std::vector<int>& center, int ring, int axis, bool on_edge,
                        std::vector<int>& idx, Fn&& fn) const {
        if (axis == d_) {
            if (!on_edge && ring > 0) return;
            long f = 0;
            for (int a = 0; a < d_; ++a) f = f * dims_[a] + idx[a];
            fn(f);
            return;
        }
        for (int c = center[axis] - ring; c <= center[axis] + ring; ++c) {
            if (c < 0 || c >= dims_[axis]) continue;
            idx[axis] = c;
            bool edge = on_edge || std::abs(c - center[axis]) == ring;
            visit_ring_rec(center, ring, axis + 1, edge, idx, fn);
        }
    }

    const Eigen::MatrixXd& pts_;
    int d_;
    Eigen::RowVectorXd lo_;
    std::vector<int> dims_;
    std::vector<double> cell_;
    std::vector<std::vector<int>> buckets_;
    double min_cell_ = 0.0;
};

void reject_duplicates(const Eigen::MatrixXd& pts) {
    const long n = pts.rows();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        for (int c = 0; c < pts.cols(); ++c) {
            if (pts(a, c) != pts(b, c)) return pts(a, c) < pts(b, c);
        }
        return false;
    });
    for (long i = 0; i + 1 < n; ++i)
        if (pts.row(order[i]) == pts.row(order[i + 1]))
            throw std::invalid_argument("solve_tsp: duplicate points (draw with jitter enabled)");
}

double path_length(const Eigen::MatrixXd& pts, const std::vector<int>& order, bool closed) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        len += (pts.row(order[i + 1]) - pts.row(order[i])).norm();
    if (closed && order.size() > 2)
        len += (pts.row(order.front()) - pts.row(order.back())).norm();
    return len;
}

}  // namespace

double tour_length(const Eigen::MatrixXd& points, const Tour& tour) {
    return path_length(points, tour.order, !tour.open_ended);
}

Tour solve_tsp(const PointCloud& pc, const TspBudget& budget, std::uint64_t seed, TspStats* stats) {
    const Eigen::MatrixXd& pts = pc.points;
    const long n = pts.rows();
    if (n < 2) throw std::invalid_argument("solve_tsp: need at least 2 points");
    reject_duplicates(pts);

    const auto t_start = std::chrono::steady_clock::now();
    auto time_left = [&] {
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return el < budget.time_limit_s;
    };

    Tour tour;
    tour.open_ended = budget.open_ended;
    tour.order.reserve(n);

    BucketGrid grid(pts);

    // Nearest-neighbour construction; the seed picks the start city.
    std::mt19937_64 rng(seed);
    int start = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    std::vector<char> visited(n, 0);
    tour.order.push_back(start);
    visited[start] = 1;
    for (long step = 1; step < n; ++step) {
        int next = grid.nearest_unvisited(pts.row(tour.order.back()), visited);
        tour.order.push_back(next);
        visited[next] = 1;
    }

    const double nn_len = path_length(pts, tour.order, !tour.open_ended);
    if (stats) {
        stats->nn_length = nn_len;
        stats->pass_lengths.clear();
        stats->budget_exhausted = false;
    }

    // Candidate lists for 2-opt.
    const int k = std::min<long>(std::max(1, budget.neighbor_k), n - 1);
    std::vector<std::vector<int>> nbr(n);
    for (long i = 0; i < n; ++i) nbr[i] = grid.k_nearest(static_cast<int>(i), k);

    std::vector<int>& t = tour.order;
    std::vector<int> pos(n);
    for (long i = 0; i < n; ++i) pos[t[i]] = static_cast<int>(i);
    const bool closed = !tour.open_ended;

    Eigen::RowVectorXd span = pts.colwise().maxCoeff() - pts.colwise().minCoeff();
    const double eps = 1e-13 * std::max(span.norm(), 1e-300);

    auto dist = [&](int a, int b) { return (pts.row(a) - pts.row(b)).norm(); };

    // Reversing t[p+1..q] removes edges (t[p],t[p+1]) and (t[q],t[q+1]) and
    // adds (t[p],t[q]) and (t[p+1],t[q+1]). For open tours p = -1 or
    // q = n-1 drop the corresponding edge terms.
    auto move_delta = [&](long p, long q) {
        double delta = 0.0;
        if (p >= 0)
            delta += dist(t[p], t[q]) - dist(t[p], t[p + 1]);
        else if (closed)
            return 0.0;  // closed tours are rotation-invariant; p in 0..n-2 suffices
        if (q + 1 < n)
            delta += dist(t[p + 1], t[q + 1]) - dist(t[q], t[q + 1]);
        else if (closed)
            delta += dist(t[p + 1], t[0]) - dist(t[q], t[0]);
        return delta;
    };

    auto apply_move = [&](long p, long q) {
        std::reverse(t.begin() + (p + 1), t.begin() + (q + 1));
        for (long i = p + 1; i <= q; ++i) pos[t[i]] = static_cast<int>(i);
    };

    double cur_len = nn_len;
    for (int pass = 0; pass < budget.max_2opt_passes; ++pass) {
        if (!time_left()) {
            if (stats) stats->budget_exhausted = true;
            break;
        }
        bool improved = false;
        const long p_lo = closed ? 0 : -1;
        for (long p = p_lo; p <= n - 3; ++p) {
            // Candidate q from short new edges: (t[p], t[q]) or (t[p+1], t[q+1]).
            auto try_q = [&](long q) {
                if (q < p + 1 || q >= n) return;
                if (p < 0 && q == n - 1) return;  // full reversal, no edge change
                double delta = move_delta(p, q);
                if (delta < -eps) {
                    apply_move(p, q);
                    cur_len += delta;
                    improved = true;
                }
            };
            if (p >= 0)
                for (int c : nbr[t[p]]) try_q(pos[c]);
            for (int c : nbr[t[p + 1]]) try_q(static_cast<long>(pos[c]) - 1);
        }
        double len_check = path_length(pts, t, closed);
        if (stats) stats->pass_lengths.push_back(len_check);
        cur_len = len_check;
        if (!improved) break;
    }

    return tour;
}

void Polyline::validate() const {
    if (size() < 2) throw std::invalid_argument("polyline needs >= 2 vertices");
    for (long i = 0; i + 1 < size(); ++i)
        if (vertices.row(i) == vertices.row(i + 1))
            throw std::invalid_argument("polyline has coincident consecutive vertices");
}

std::vector<double> Polyline::segment_lengths() const {
    std::vector<double> seg(static_cast<std::size_t>(std::max<long>(size() - 1, 0)));
    for (long i = 0; i + 1 < size(); ++i)
        seg[i] = (vertices.row(i + 1) - vertices.row(i)).norm();
    return seg;
}

double Polyline::length() const {
    auto seg = segment_lengths();
    return std::accumulate(seg.begin(), seg.end(), 0.0);
}

Polyline tour_to_polyline(const PointCloud& pc, const Tour& tour) {
    const long n = pc.points.rows();
    if (static_cast<long>(tour.order.size()) != n)
        throw std::invalid_argument("tour order size does not match point count");
    std::vector<char> seen(n, 0);
    for (int i : tour.order) {
        if (i < 0 || i >= n || seen[i]) throw std::invalid_argument("tour order is not a permutation");
        seen[i] = 1;
    }
    Polyline poly;
    poly.vertices.resize(n, pc.points.cols());
    for (long i = 0; i < n; ++i) poly.vertices.row(i) = pc.points.row(tour.order[i]);
    poly.validate();
    return poly;
}

Polyline prepend_vertex(const Polyline& poly, const Eigen::RowVectorXd& v) {
    if (poly.size() > 0 && poly.vertices.row(0) == v) return poly;
    Polyline out;
    out.vertices.resize(poly.size() + 1, poly.dim());
    out.vertices.row(0) = v;
    out.vertices.bottomRows(poly.size()) = poly.vertices;
    out.validate();
    return out;
}

Curve constant_speed_param(const Polyline& poly, const SpeedSpec& spec, double dt) {
    poly.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(spec.value > 0.0)) throw std::invalid_argument("speed/duration must be positive");

    const double total = poly.length();
    const double target_T =
        spec.mode == SpeedSpec::Mode::fixed_duration ? spec.value : total / spec.value;
    if (dt > target_T)
        throw std::invalid_argument("dt exceeds the traversal duration (too coarse)");

    const long steps = std::max<long>(2, std::llround(target_T / dt));
    const long n = steps + 1;

    auto seg = poly.segment_lengths();
    std::vector<double> cum(seg.size() + 1, 0.0);
    std::partial_sum(seg.begin(), seg.end(), cum.begin() + 1);

    Curve c;
    c.dt = dt;
    c.positions.resize(n, poly.dim());
    std::size_t s = 0;
    for (long i = 0; i < n; ++i) {
        double target = total * double(i) / double(steps);
        while (s + 1 < seg.size() && cum[s + 1] < target) ++s;
        double local = (target - cum[s]) / seg[s];
        local = std::clamp(local, 0.0, 1.0);
        c.positions.row(i) =
            poly.vertices.row(s) + local * (poly.vertices.row(s + 1) - poly.vertices.row(s));
    }
    c.positions.row(n - 1) = poly.vertices.row(poly.size() - 1);
    return c;
}

}  // namespace kforge
