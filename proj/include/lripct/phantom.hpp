#ifndef LRIPCT_PHANTOM_HPP
#define LRIPCT_PHANTOM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "core.hpp"

namespace lripct {

struct Ellipse {
    double intensity;
    double a, b;      // semi-axes
    double x0, y0;    // center
    double phi_deg;   // rotation

    bool contains(double x, double y) const
    {
        const double phi = phi_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi), s = std::sin(phi);
        const double dx = x - x0, dy = y - y0;
        const double xr = c * dx + s * dy;
        const double yr = -s * dx + c * dy;
        return (xr * xr) / (a * a) + (yr * yr) / (b * b) <= 1.0;
    }
};

// Modified (Toft) intensity table on the unit square [-1,1]^2.
inline const std::array<Ellipse, 10>& shepp_logan_ellipses()
{
    static const std::array<Ellipse, 10> e = {{
        {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
        {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
        {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
        {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
        {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
        {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
        {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
        {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
        {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},
        {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
    }};
    return e;
}

// Standard 10-ellipse phantom sampled at pixel centers, clipped to [0,1].
inline Image shepp_logan(int n)
{
    if (n < 16)
        throw std::invalid_argument("shepp_logan: n must be >= 16");
    Image img(n, n);
    const double h = 2.0 / n;
    for (int i = 0; i < n; ++i) {
        const double y = -1.0 + (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double x = -1.0 + (j + 0.5) * h;
            double v = 0.0;
            for (const auto& e : shepp_logan_ellipses())
                if (e.contains(x, y))
                    v += e.intensity;
            img(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return img;
}

struct Disk {
    double cx, cy, radius, value;
};

// Pixel value = sum of disk values containing the pixel center; grid on
// [-1,1]^2 like shepp_logan.
inline Image disk_phantom(int n, const std::vector<Disk>& disks)
{
    if (n < 2)
        throw std::invalid_argument("disk_phantom: n must be >= 2");
    Image img(n, n);
    const double h = 2.0 / n;
    for (int i = 0; i < n; ++i) {
        const double y = -1.0 + (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double x = -1.0 + (j + 0.5) * h;
            double v = 0.0;
            for (const auto& d : disks) {
                double dx = x - d.cx, dy = y - d.cy;
                if (dx * dx + dy * dy <= d.radius * d.radius)
                    v += d.value;
            }
            img(i, j) = v;
        }
    }
    return img;
}

} // namespace lripct

#endif
