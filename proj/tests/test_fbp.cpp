#include <catch_amalgamated.hpp>

#include <lripct/fbp.hpp>
#include <lripct/metrics.hpp>
#include <lripct/phantom.hpp>
#include <lripct/projector.hpp>

#include <cmath>

using namespace lripct;

TEST_CASE("ramp taps follow the discrete filter formula")
{
    auto taps = ramp_taps(4, FbpFilter::ramp);
    REQUIRE(taps.size() == 9);
    CHECK(taps[4] == 0.25);
    CHECK(taps[5] == Catch::Approx(-1.0 / (std::numbers::pi * std::numbers::pi)).margin(1e-15));
    CHECK(taps[3] == taps[5]);
    CHECK(taps[6] == 0.0);
    CHECK(taps[7] == Catch::Approx(-1.0 / (9.0 * std::numbers::pi * std::numbers::pi)).margin(1e-15));

    // Hann smoothing preserves symmetry and shrinks the center tap
    auto hann = ramp_taps(4, FbpFilter::hann);
    CHECK(hann[4] < taps[4]);
    for (int k = 0; k < 4; ++k)
        CHECK(hann[k] == Catch::Approx(hann[8 - k]).margin(1e-16));
}

TEST_CASE("zero sinogram reconstructs to zero and fbp is linear")
{
    ScanGeometry g = default_geometry(32, 120.0);
    Sinogram zero(g.n_views, g.n_bins);
    Image z = fbp(zero, g);
    for (std::size_t i = 0; i < z.size(); ++i)
        CHECK(z[i] == 0.0);

    Image disk = disk_phantom(32, {{0.1, -0.2, 0.4, 1.0}});
    Sinogram s = forward_project(disk, g);
    Sinogram s2 = s;
    for (auto& v : s2.values())
        v *= 2.0;
    Image r1 = fbp(s, g), r2 = fbp(s2, g);
    for (std::size_t i = 0; i < r1.size(); ++i)
        CHECK(r2[i] == Catch::Approx(2.0 * r1[i]).margin(1e-12));
}

TEST_CASE("full-scan disk reconstruction reaches the pinned fidelity")
{
    const int n = 128;
    ScanGeometry g = default_geometry(n, 360.0);
    Image disk = disk_phantom(n, {{0.0, 0.0, 0.5, 1.0}});
    Image rec = fbp(forward_project(disk, g), g, FbpFilter::ramp);
    CHECK(psnr(rec, disk, 1.0) >= 28.0);
}

TEST_CASE("rotating the phantom equals shifting the sinogram")
{
    const int n = 64;
    ScanGeometry g = default_geometry(n, 360.0);
    const double step = g.angle_step_deg * std::numbers::pi / 180.0;
    const double cx = 0.1, cy = 0.05;
    Image d1 = disk_phantom(n, {{cx, cy, 0.25, 1.0}});
    Image d2 = disk_phantom(n, {{cx * std::cos(step) - cy * std::sin(step),
                                 cx * std::sin(step) + cy * std::cos(step), 0.25, 1.0}});
    Sinogram s2 = forward_project(d2, g);
    // undo the object rotation by advancing the view index (360° wraps)
    Sinogram shifted(g.n_views, g.n_bins);
    for (int v = 0; v < g.n_views; ++v)
        for (int b = 0; b < g.n_bins; ++b)
            shifted(v, b) = s2((v + 1) % g.n_views, b);
    // the smoothed filter keeps phantom rasterization aliasing from
    // dominating the interpolation error this bounds
    Image r1 = fbp(forward_project(d1, g), g, FbpFilter::hann);
    Image rs = fbp(shifted, g, FbpFilter::hann);
    CHECK(rmse(r1, rs) <= 1e-2);
}

TEST_CASE("fidelity degrades as coverage shrinks")
{
    const int n = 64;
    Image disk = disk_phantom(n, {{0.0, 0.0, 0.5, 1.0}});
    double p90, p150, p360;
    {
        ScanGeometry g = default_geometry(n, 90.0);
        p90 = psnr(fbp(forward_project(disk, g), g), disk, 1.0);
    }
    {
        ScanGeometry g = default_geometry(n, 150.0);
        p150 = psnr(fbp(forward_project(disk, g), g), disk, 1.0);
    }
    {
        ScanGeometry g = default_geometry(n, 360.0);
        p360 = psnr(fbp(forward_project(disk, g), g), disk, 1.0);
    }
    CHECK(p90 < p150);
    CHECK(p150 < p360);
}

TEST_CASE("fbp rejects mismatched shapes")
{
    ScanGeometry g = default_geometry(16, 90.0);
    CHECK_THROWS_AS(fbp(Sinogram(10, 10), g), std::invalid_argument);
}
