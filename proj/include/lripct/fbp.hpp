#ifndef LRIPCT_FBP_HPP
#define LRIPCT_FBP_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"

namespace lripct {

enum class FbpFilter { ramp, hann };

// Discrete ramp filter taps (times dt^2): center 1/4, odd taps -1/(pi^2 k^2),
// even taps zero. The Hann variant smooths the taps with [1/4, 1/2, 1/4],
// which is the signal-domain form of the Hann frequency window.
inline std::vector<double> ramp_taps(int half_len, FbpFilter kind)
{
    std::vector<double> base(2 * half_len + 1, 0.0);
    auto tap = [](int k) {
        if (k == 0)
            return 0.25;
        if (k % 2 == 0)
            return 0.0;
        return -1.0 / (std::numbers::pi * std::numbers::pi * k * k);
    };
    for (int k = -half_len; k <= half_len; ++k)
        base[k + half_len] = tap(k);
    if (kind == FbpFilter::ramp)
        return base;
    std::vector<double> hann(base.size(), 0.0);
    for (int k = -half_len; k <= half_len; ++k) {
        double s = 0.5 * tap(k) + 0.25 * tap(k - 1) + 0.25 * tap(k + 1);
        hann[k + half_len] = s;
    }
    return hann;
}

// Flat-detector fan-beam FBP: cosine pre-weighting on the virtual detector
// through the rotation center, ramp convolution per view, then
// distance-weighted back-projection summed over the covered arc.
inline Image fbp(const Sinogram& sino, const ScanGeometry& geom,
                 FbpFilter filter_kind = FbpFilter::ramp)
{
    geom.validate();
    if (sino.views() != geom.n_views || sino.bins() != geom.n_bins)
        throw std::invalid_argument("fbp: sinogram does not match geometry");

    const int nb = geom.n_bins;
    const int nv = geom.n_views;
    const double mag = geom.source_radius / (geom.source_radius + geom.detector_radius);
    const double dt = geom.bin_width * mag; // virtual-detector bin spacing
    const double rs = geom.source_radius;

    // Pad to the next power of two >= 2*n_bins so the linear convolution
    // has full support.
    int padded = 1;
    while (padded < 2 * nb)
        padded *= 2;
    const std::vector<double> taps = ramp_taps(padded, filter_kind);

    // Virtual-detector coordinates of the bin centers.
    std::vector<double> t0(nb);
    for (int b = 0; b < nb; ++b)
        t0[b] = (b - 0.5 * (nb - 1)) * dt;

    // Filter all views.
    std::vector<double> q(static_cast<std::size_t>(nv) * nb, 0.0);
    std::vector<double> w(nb);
    for (int b = 0; b < nb; ++b)
        w[b] = rs / std::sqrt(rs * rs + t0[b] * t0[b]);
    std::vector<double> row(nb);
    for (int v = 0; v < nv; ++v) {
        for (int b = 0; b < nb; ++b)
            row[b] = sino(v, b) * w[b];
        for (int b = 0; b < nb; ++b) {
            double acc = 0.0;
            for (int k = 0; k < nb; ++k)
                acc += row[k] * taps[b - k + padded];
            q[static_cast<std::size_t>(v) * nb + b] = 0.5 * acc / dt;
        }
    }

    // Back-project. No short-arc renormalization: the raw arc sum is kept
    // so limited-angle artifacts stay visible.
    Image out(geom.n, geom.n);
    const auto angles = view_angles(geom);
    const double dbeta = geom.angle_step_deg * std::numbers::pi / 180.0;
    const double ext = 0.5 * geom.n * geom.pixel_size;
    for (int v = 0; v < nv; ++v) {
        const double cb = std::cos(angles[v]), sb = std::sin(angles[v]);
        const double* qv = &q[static_cast<std::size_t>(v) * nb];
        for (int i = 0; i < geom.n; ++i) {
            const double y = -ext + (i + 0.5) * geom.pixel_size;
            for (int j = 0; j < geom.n; ++j) {
                const double x = -ext + (j + 0.5) * geom.pixel_size;
                const double u_dist = rs - (x * cb + y * sb);
                const double e = -x * sb + y * cb;
                const double t = rs * e / u_dist;
                double idx = t / dt + 0.5 * (nb - 1);
                if (idx < 0.0 || idx > nb - 1)
                    continue;
                int b0 = static_cast<int>(idx);
                if (b0 >= nb - 1)
                    b0 = nb - 2;
                double frac = idx - b0;
                double val = (1.0 - frac) * qv[b0] + frac * qv[b0 + 1];
                out(i, j) += dbeta * (rs * rs) / (u_dist * u_dist) * val;
            }
        }
    }
    return out;
}

} // namespace lripct

#endif
