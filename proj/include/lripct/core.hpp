#ifndef LRIPCT_CORE_HPP
#define LRIPCT_CORE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lripct {

// Thrown when an operation would exceed the explicit-matrix entry budget.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by file readers on bad magic/version/truncation; carries the byte offset.
class format_error : public std::runtime_error {
public:
    format_error(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (byte offset " + std::to_string(offset) + ")")
        , byte_offset(offset)
    {
    }
    std::size_t byte_offset;
};

// Thrown when an iterative solver produces non-finite values.
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& msg, int iteration)
        : std::runtime_error(msg + " at iteration " + std::to_string(iteration))
        , iteration(iteration)
    {
    }
    int iteration;
};

class Image {
public:
    Image() = default;
    Image(int n_rows, int n_cols, double fill = 0.0)
        : rows_(n_rows), cols_(n_cols), v_(static_cast<std::size_t>(n_rows) * n_cols, fill)
    {
        if (n_rows <= 0 || n_cols <= 0)
            throw std::invalid_argument("Image: dimensions must be positive");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return v_.size(); }

    double& operator()(int r, int c) { return v_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return v_[static_cast<std::size_t>(r) * cols_ + c]; }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    bool same_shape(const Image& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool all_finite() const
    {
        for (double x : v_)
            if (!std::isfinite(x))
                return false;
        return true;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> v_;
};

class Sinogram {
public:
    Sinogram() = default;
    Sinogram(int n_views, int n_bins, double fill = 0.0)
        : views_(n_views), bins_(n_bins), v_(static_cast<std::size_t>(n_views) * n_bins, fill)
    {
        if (n_views <= 0 || n_bins <= 0)
            throw std::invalid_argument("Sinogram: dimensions must be positive");
    }

    int views() const { return views_; }
    int bins() const { return bins_; }
    std::size_t size() const { return v_.size(); }

    double& operator()(int v, int b) { return v_[static_cast<std::size_t>(v) * bins_ + b]; }
    double operator()(int v, int b) const { return v_[static_cast<std::size_t>(v) * bins_ + b]; }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    bool same_shape(const Sinogram& o) const { return views_ == o.views_ && bins_ == o.bins_; }

    bool all_finite() const
    {
        for (double x : v_)
            if (!std::isfinite(x))
                return false;
        return true;
    }

private:
    int views_ = 0;
    int bins_ = 0;
    std::vector<double> v_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace lripct

#endif
