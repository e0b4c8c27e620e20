#ifndef LRIPCT_DOWNSAMPLE_HPP
#define LRIPCT_DOWNSAMPLE_HPP

#include "core.hpp"

namespace lripct {

// Equidistant selection operator D: keeps every tau-th pixel per axis,
// anchored at index 0. As a matrix D has one 1 per row, so D D^T = I on
// the coarse grid and D^T D is diagonal with 0/1 entries.
struct DownSampler {
    int factor = 1; // tau, power of two
    int full_n = 0; // fine-grid side, divisible by tau

    DownSampler(int tau, int n) : factor(tau), full_n(n)
    {
        if (tau < 1 || (tau & (tau - 1)) != 0)
            throw std::invalid_argument("DownSampler: factor must be a positive power of two");
        if (n <= 0 || n % tau != 0)
            throw std::invalid_argument("DownSampler: side must be divisible by factor");
    }

    int coarse_n() const { return full_n / factor; }
};

inline Image downsample(const Image& img, const DownSampler& d)
{
    if (img.rows() != d.full_n || img.cols() != d.full_n)
        throw std::invalid_argument("downsample: image side does not match sampler");
    const int m = d.coarse_n();
    Image out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out(i, j) = img(i * d.factor, j * d.factor);
    return out;
}

// Exact transpose of downsample: coarse values scattered to the selected
// fine-grid positions, zeros elsewhere.
inline Image upsample_adjoint(const Image& img_low, const DownSampler& d)
{
    const int m = d.coarse_n();
    if (img_low.rows() != m || img_low.cols() != m)
        throw std::invalid_argument("upsample_adjoint: input side does not match coarse grid");
    Image out(d.full_n, d.full_n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out(i * d.factor, j * d.factor) = img_low(i, j);
    return out;
}

} // namespace lripct

#endif
