#ifndef LRIPCT_PROJECTOR_HPP
#define LRIPCT_PROJECTOR_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"

namespace lripct {

struct RayEndpoints {
    double sx, sy; // source
    double dx, dy; // detector element center
};

// Source at angle beta on the scan circle, flat detector on the far side,
// bin coordinate measured along the detector from its midpoint.
inline RayEndpoints ray_endpoints(const ScanGeometry& g, double beta, int bin)
{
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double t = (bin - 0.5 * (g.n_bins - 1)) * g.bin_width;
    RayEndpoints r;
    r.sx = g.source_radius * cb;
    r.sy = g.source_radius * sb;
    r.dx = -g.detector_radius * cb - t * sb;
    r.dy = -g.detector_radius * sb + t * cb;
    return r;
}

// Siddon traversal: walks the ray through the pixel grid and reports the
// exact intersection length inside every crossed pixel.
// visit(row, col, length) is called once per crossed pixel.
template <typename Visitor>
void trace_ray(const ScanGeometry& g, const RayEndpoints& ray, Visitor&& visit)
{
    const int n = g.n;
    const double h = g.pixel_size;
    const double ext = 0.5 * n * h; // grid spans [-ext, ext]^2

    const double rx = ray.dx - ray.sx;
    const double ry = ray.dy - ray.sy;
    const double ray_len = std::sqrt(rx * rx + ry * ry);
    if (ray_len == 0.0)
        return;

    // Clip the parametric ray to the grid box.
    double a_min = 0.0, a_max = 1.0;
    const double inf = std::numeric_limits<double>::infinity();
    if (rx != 0.0) {
        double a0 = (-ext - ray.sx) / rx;
        double a1 = (ext - ray.sx) / rx;
        a_min = std::max(a_min, std::min(a0, a1));
        a_max = std::min(a_max, std::max(a0, a1));
    } else if (ray.sx <= -ext || ray.sx >= ext) {
        return;
    }
    if (ry != 0.0) {
        double a0 = (-ext - ray.sy) / ry;
        double a1 = (ext - ray.sy) / ry;
        a_min = std::max(a_min, std::min(a0, a1));
        a_max = std::min(a_max, std::max(a0, a1));
    } else if (ray.sy <= -ext || ray.sy >= ext) {
        return;
    }
    if (a_min >= a_max)
        return;

    // March across pixel-boundary crossings; each segment's pixel is the
    // cell holding its midpoint, which is strictly interior to one pixel.
    const double step_ax = rx != 0.0 ? h / std::abs(rx) : inf;
    const double step_ay = ry != 0.0 ? h / std::abs(ry) : inf;

    // First boundary crossing strictly past the entry point, per axis.
    auto first_crossing = [&](double s, double r) {
        if (r == 0.0)
            return inf;
        double entry = s + a_min * r;
        double idx = (entry + ext) / h;
        double k = r > 0.0 ? std::floor(idx + 1e-12) + 1.0 : std::ceil(idx - 1e-12) - 1.0;
        return ((-ext + k * h) - s) / r;
    };
    double ax_next = first_crossing(ray.sx, rx);
    double ay_next = first_crossing(ray.sy, ry);

    auto cell_of = [&](double coord) {
        int c = static_cast<int>(std::floor((coord + ext) / h));
        return std::clamp(c, 0, n - 1);
    };

    const double eps = 1e-14 * (a_max - a_min);
    double a_prev = a_min;
    while (a_prev < a_max - eps) {
        double a_next = std::min({ax_next, ay_next, a_max});
        double len = (a_next - a_prev) * ray_len;
        if (len > 0.0) {
            double amid = 0.5 * (a_prev + a_next);
            visit(cell_of(ray.sy + amid * ry), cell_of(ray.sx + amid * rx), len);
        }
        if (ax_next <= a_next + eps)
            ax_next += step_ax;
        if (ay_next <= a_next + eps)
            ay_next += step_ay;
        a_prev = a_next;
    }
}

inline Sinogram forward_project(const Image& img, const ScanGeometry& geom)
{
    geom.validate();
    if (img.rows() != geom.n || img.cols() != geom.n)
        throw std::invalid_argument("forward_project: image does not match geometry grid");
    Sinogram out(geom.n_views, geom.n_bins);
    const auto angles = view_angles(geom);
    for (int v = 0; v < geom.n_views; ++v) {
        for (int b = 0; b < geom.n_bins; ++b) {
            double acc = 0.0;
            trace_ray(geom, ray_endpoints(geom, angles[v], b),
                      [&](int r, int c, double len) { acc += len * img(r, c); });
            out(v, b) = acc;
        }
    }
    return out;
}

// Exact transpose of forward_project: scatters each intersection length
// back into the image.
inline Image back_project(const Sinogram& sino, const ScanGeometry& geom)
{
    geom.validate();
    if (sino.views() != geom.n_views || sino.bins() != geom.n_bins)
        throw std::invalid_argument("back_project: sinogram does not match geometry");
    Image out(geom.n, geom.n);
    const auto angles = view_angles(geom);
    for (int v = 0; v < geom.n_views; ++v) {
        for (int b = 0; b < geom.n_bins; ++b) {
            const double p = sino(v, b);
            if (p == 0.0)
                continue;
            trace_ray(geom, ray_endpoints(geom, angles[v], b),
                      [&](int r, int c, double len) { out(r, c) += len * p; });
        }
    }
    return out;
}

struct Triplet {
    int row;
    int col;
    double value;
};

// Explicit sparse system matrix; rows indexed view-major like Sinogram,
// columns row-major like Image.
struct SystemMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<Triplet> entries;

    std::vector<double> apply(const std::vector<double>& x) const
    {
        std::vector<double> y(n_rows, 0.0);
        for (const auto& t : entries)
            y[t.row] += t.value * x[t.col];
        return y;
    }

    std::vector<double> apply_transpose(const std::vector<double>& y) const
    {
        std::vector<double> x(n_cols, 0.0);
        for (const auto& t : entries)
            x[t.col] += t.value * y[t.row];
        return x;
    }
};

inline constexpr long long kDefaultMatrixBudget = 40'000'000;

inline SystemMatrix build_system_matrix(const ScanGeometry& geom,
                                        long long budget = kDefaultMatrixBudget)
{
    geom.validate();
    const long long m = static_cast<long long>(geom.n_views) * geom.n_bins;
    const long long n = static_cast<long long>(geom.n) * geom.n;
    if (m * n > budget)
        throw resource_limit_error("build_system_matrix: M*N exceeds entry budget");
    SystemMatrix sm;
    sm.n_rows = static_cast<int>(m);
    sm.n_cols = static_cast<int>(n);
    const auto angles = view_angles(geom);
    for (int v = 0; v < geom.n_views; ++v) {
        for (int b = 0; b < geom.n_bins; ++b) {
            const int row = v * geom.n_bins + b;
            trace_ray(geom, ray_endpoints(geom, angles[v], b), [&](int r, int c, double len) {
                sm.entries.push_back({row, r * geom.n + c, len});
            });
        }
    }
    return sm;
}

} // namespace lripct

#endif
