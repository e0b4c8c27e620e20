#ifndef LRIPCT_GEOMETRY_HPP
#define LRIPCT_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "core.hpp"

namespace lripct {

// Fan-beam acquisition with a flat equidistant-bin detector.
// The image is an n x n raster centered at the origin; the source rotates
// on a circle of radius source_radius, the detector midline sits at
// detector_radius on the opposite side.
struct ScanGeometry {
    int n = 0;                    // image side in pixels
    double pixel_size = 0.0;      // side of one pixel
    int n_views = 0;              // number of projection angles
    int n_bins = 0;               // detector elements
    double angular_range_deg = 0; // total scanning arc
    double angle_step_deg = 0;    // spacing between views
    double source_radius = 0;     // center-to-source distance
    double detector_radius = 0;   // center-to-detector distance
    double bin_width = 0;         // detector element width

    int image_pixels() const { return n * n; }
    int sino_entries() const { return n_views * n_bins; }

    void validate() const
    {
        if (n <= 0 || pixel_size <= 0 || n_views <= 0 || n_bins <= 0)
            throw std::invalid_argument("ScanGeometry: sizes must be positive");
        if (angular_range_deg <= 0 || angular_range_deg > 360)
            throw std::invalid_argument("ScanGeometry: angular range must be in (0, 360]");
        if (angle_step_deg <= 0 || source_radius <= 0 || detector_radius <= 0 || bin_width <= 0)
            throw std::invalid_argument("ScanGeometry: step, radii and bin width must be positive");
        if (n_views != static_cast<int>(std::floor(angular_range_deg / angle_step_deg)))
            throw std::invalid_argument("ScanGeometry: n_views inconsistent with range/step");
        if (source_radius <= n * pixel_size / std::numbers::sqrt2)
            throw std::invalid_argument("ScanGeometry: source inside the image disk");
    }

    // Geometry for the same views/bins on a coarser n/tau pixel grid.
    // Physical extent is unchanged: only the number of pixels changes.
    ScanGeometry coarse(int tau) const
    {
        if (tau < 1 || n % tau != 0)
            throw std::invalid_argument("ScanGeometry::coarse: side not divisible by tau");
        ScanGeometry g = *this;
        g.n = n / tau;
        g.pixel_size = pixel_size * tau;
        return g;
    }
};

inline std::vector<double> view_angles(const ScanGeometry& geom)
{
    geom.validate();
    std::vector<double> angles(geom.n_views);
    const double step = geom.angle_step_deg * std::numbers::pi / 180.0;
    for (int k = 0; k < geom.n_views; ++k)
        angles[k] = k * step;
    return angles;
}

// Desk-scale default: image on [-1,1]^2, source/detector at radius 3,
// detector sized so the fan covers the image diagonal, 1-degree steps.
inline ScanGeometry default_geometry(int n, double coverage_deg)
{
    if (n < 2)
        throw std::invalid_argument("default_geometry: n must be >= 2");
    ScanGeometry g;
    g.n = n;
    g.pixel_size = 2.0 / n;
    g.n_bins = static_cast<int>(std::ceil(1.5 * n));
    g.angular_range_deg = coverage_deg;
    g.angle_step_deg = 1.0;
    g.n_views = static_cast<int>(std::floor(coverage_deg / g.angle_step_deg));
    g.source_radius = 3.0;
    g.detector_radius = 3.0;
    // Fan half-angle reaching the image diagonal circle (radius sqrt(2)),
    // widened 5% so boundary rays clear the corners.
    const double r_img = std::numbers::sqrt2;
    const double half_fan = std::asin(r_img / g.source_radius);
    const double half_width =
        1.05 * (g.source_radius + g.detector_radius) * std::tan(half_fan);
    g.bin_width = 2.0 * half_width / g.n_bins;
    g.validate();
    return g;
}

} // namespace lripct

#endif
