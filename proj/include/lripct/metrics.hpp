#ifndef LRIPCT_METRICS_HPP
#define LRIPCT_METRICS_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "core.hpp"

namespace lripct {

inline double mse(const Image& a, const Image& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("mse: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double e = a[i] - b[i];
        s += e * e;
    }
    return s / static_cast<double>(a.size());
}

inline double rmse(const Image& a, const Image& b) { return std::sqrt(mse(a, b)); }

inline double psnr(const Image& a, const Image& ref, double max_val = 1.0)
{
    if (max_val <= 0.0)
        throw std::invalid_argument("psnr: max_val must be positive");
    double r = rmse(a, ref);
    if (r == 0.0)
        return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(max_val / r);
}

namespace detail {

inline const std::vector<double>& ssim_window()
{
    static const std::vector<double> w = [] {
        const int half = 5;
        const double sigma = 1.5;
        std::vector<double> win(11 * 11);
        double sum = 0.0;
        for (int i = -half; i <= half; ++i)
            for (int j = -half; j <= half; ++j) {
                double g = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
                win[(i + half) * 11 + (j + half)] = g;
                sum += g;
            }
        for (auto& x : win)
            x /= sum;
        return win;
    }();
    return w;
}

} // namespace detail

// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
// dynamic range 1. Window centers where the full window fits.
inline double ssim(const Image& a, const Image& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("ssim: shape mismatch");
    if (a.rows() < 11 || a.cols() < 11)
        throw std::invalid_argument("ssim: image side must be >= 11");

    const double c1 = 0.01 * 0.01;
    const double c2 = 0.03 * 0.03;
    const auto& win = detail::ssim_window();
    const int half = 5;

    double total = 0.0;
    int count = 0;
    for (int ci = half; ci < a.rows() - half; ++ci) {
        for (int cj = half; cj < a.cols() - half; ++cj) {
            double ma = 0, mb = 0, maa = 0, mbb = 0, mab = 0;
            for (int i = -half; i <= half; ++i)
                for (int j = -half; j <= half; ++j) {
                    double w = win[(i + half) * 11 + (j + half)];
                    double va = a(ci + i, cj + j);
                    double vb = b(ci + i, cj + j);
                    ma += w * va;
                    mb += w * vb;
                    maa += w * va * va;
                    mbb += w * vb * vb;
                    mab += w * va * vb;
                }
            double var_a = maa - ma * ma;
            double var_b = mbb - mb * mb;
            double cov = mab - ma * mb;
            double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
            double den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
            total += num / den;
            ++count;
        }
    }
    return total / count;
}

// MSE + mu*(1 - SSIM): joint quality score, lower is better. Note the
// (1 - SSIM) orientation, so a perfect match scores zero.
inline double joint_score(const Image& a, const Image& ref, double mu)
{
    return mse(a, ref) + mu * (1.0 - ssim(a, ref));
}

} // namespace lripct

#endif
