#ifndef LRIPCT_VARIATIONAL_HPP
#define LRIPCT_VARIATIONAL_HPP

#include <cmath>
#include <ostream>
#include <vector>

#include "core.hpp"
#include "downsample.hpp"
#include "geometry.hpp"
#include "metrics.hpp"
#include "projector.hpp"

namespace lripct {

struct SolverParams {
    double mu = 1.0;        // prior penalty weight
    double r = 1.0;         // splitting penalty weight
    double tau_step = 0.0;  // primal/dual step
    double sigma_step = 0.0; // dual step of the TV baseline
    double lambda_tv = 0.0; // TV weight
    int outer_iters = 200;
    int inner_tv_iters = 20;

    void validate() const
    {
        if (mu <= 0 || r < 0 || tau_step <= 0 || sigma_step <= 0 || lambda_tv < 0)
            throw std::invalid_argument("SolverParams: weights/steps out of range");
        if (outer_iters <= 0 || inner_tv_iters <= 0)
            throw std::invalid_argument("SolverParams: iteration counts must be positive");
    }
};

// Power-iteration estimate of ||A||_2, deterministic (all-ones start; the
// projector is entrywise nonnegative so the start has positive overlap
// with the leading singular vector).
inline double estimate_op_norm(const ScanGeometry& geom, int iters = 50)
{
    Image x(geom.n, geom.n, 1.0);
    double lambda = 0.0;
    for (int k = 0; k < iters; ++k) {
        Image y = back_project(forward_project(x, geom), geom);
        double nrm = norm2(y.values());
        if (nrm == 0.0)
            return 0.0;
        lambda = nrm;
        for (auto& v : y.values())
            v /= nrm;
        x = y;
    }
    return std::sqrt(lambda);
}

// Resolvent of the least-squares fidelity conjugate: the dual variable is
// pulled toward the data residual, elementwise.
inline Sinogram dual_prox_ls(const Sinogram& p_prev, const Sinogram& au, const Sinogram& f,
                             double tau_step)
{
    if (!p_prev.same_shape(au) || !p_prev.same_shape(f))
        throw std::invalid_argument("dual_prox_ls: shape mismatch");
    if (tau_step <= 0.0)
        throw std::invalid_argument("dual_prox_ls: step must be positive");
    Sinogram out(p_prev.views(), p_prev.bins());
    const double denom = 1.0 + tau_step;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (p_prev[i] + tau_step * (au[i] - f[i])) / denom;
    return out;
}

namespace detail {

// Forward differences, reflexive boundary (zero gradient on last row/col).
inline void tv_grad(const Image& u, Image& gx, Image& gy)
{
    const int nr = u.rows(), nc = u.cols();
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) {
            gx(i, j) = j + 1 < nc ? u(i, j + 1) - u(i, j) : 0.0;
            gy(i, j) = i + 1 < nr ? u(i + 1, j) - u(i, j) : 0.0;
        }
}

// Negative adjoint of tv_grad: <grad u, p> = -<u, div p>.
inline void tv_div(const Image& px, const Image& py, Image& out)
{
    const int nr = px.rows(), nc = px.cols();
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) {
            double d = 0.0;
            if (j + 1 < nc)
                d += px(i, j);
            if (j > 0)
                d -= px(i, j - 1);
            if (i + 1 < nr)
                d += py(i, j);
            if (i > 0)
                d -= py(i - 1, j);
            out(i, j) = d;
        }
}

inline double tv_value(const Image& u)
{
    const int nr = u.rows(), nc = u.cols();
    double s = 0.0;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) {
            double gx = j + 1 < nc ? u(i, j + 1) - u(i, j) : 0.0;
            double gy = i + 1 < nr ? u(i + 1, j) - u(i, j) : 0.0;
            s += std::sqrt(gx * gx + gy * gy);
        }
    return s;
}

} // namespace detail

// Proximal map of weight * TV (isotropic) by projected gradient on the
// dual field with step 1/8 (Chambolle-type).
inline Image tv_prox(const Image& v, double weight, int inner_iters)
{
    if (weight < 0.0)
        throw std::invalid_argument("tv_prox: weight must be nonnegative");
    if (weight == 0.0 || inner_iters <= 0)
        return v;

    const int nr = v.rows(), nc = v.cols();
    Image qx(nr, nc), qy(nr, nc);
    Image x(nr, nc), gx(nr, nc), gy(nr, nc);

    for (int it = 0; it < inner_iters; ++it) {
        detail::tv_div(qx, qy, x);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += v[i];
        detail::tv_grad(x, gx, gy);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double nx = qx[i] + 0.125 * gx[i];
            double ny = qy[i] + 0.125 * gy[i];
            double nrm = std::sqrt(nx * nx + ny * ny);
            if (nrm > weight) {
                nx *= weight / nrm;
                ny *= weight / nrm;
            }
            qx[i] = nx;
            qy[i] = ny;
        }
    }
    detail::tv_div(qx, qy, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += v[i];
    return x;
}

// Closed-form minimizer of the coupling subproblem: sampled pixels blend
// toward the prior, unsampled pixels pass through.
inline Image u_update(const Image& u_tilde, const Image& u_l, const DownSampler& d, double mu,
                      double r)
{
    if (u_tilde.rows() != d.full_n || u_tilde.cols() != d.full_n)
        throw std::invalid_argument("u_update: fine image does not match sampler");
    if (u_l.rows() != d.coarse_n() || u_l.cols() != d.coarse_n())
        throw std::invalid_argument("u_update: prior does not match coarse grid");
    if (mu <= 0.0 || r < 0.0)
        throw std::invalid_argument("u_update: mu must be positive, r nonnegative");
    Image out = u_tilde;
    const int m = d.coarse_n();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int fi = i * d.factor, fj = j * d.factor;
            out(fi, fj) = (mu * u_tilde(fi, fj) + r * u_l(i, j)) / (mu + r);
        }
    return out;
}

inline double tv_objective(const Image& u, const Sinogram& f, const ScanGeometry& geom,
                           double lambda_tv)
{
    Sinogram au = forward_project(u, geom);
    double fid = 0.0;
    for (std::size_t i = 0; i < au.size(); ++i) {
        double e = au[i] - f[i];
        fid += e * e;
    }
    return 0.5 * fid + lambda_tv * detail::tv_value(u);
}

// Chambolle-Pock for 0.5*||Au - f||^2 + lambda*TV(u), over-relaxation 1.
inline Image tv_reconstruct(const Sinogram& sino, const ScanGeometry& geom,
                            const SolverParams& params, std::ostream* log = nullptr,
                            const Image* ref = nullptr)
{
    geom.validate();
    params.validate();
    if (sino.views() != geom.n_views || sino.bins() != geom.n_bins)
        throw std::invalid_argument("tv_reconstruct: sinogram does not match geometry");
    const double op_norm = estimate_op_norm(geom);
    if (params.tau_step * params.sigma_step * op_norm * op_norm > 1.0 + 1e-9)
        throw std::invalid_argument("tv_reconstruct: step sizes violate tau*sigma*||A||^2 <= 1");

    Image u(geom.n, geom.n);
    Image u_bar = u;
    Sinogram p(geom.n_views, geom.n_bins);

    if (log)
        *log << "iter,objective,data_residual,psnr\n";

    for (int k = 0; k < params.outer_iters; ++k) {
        Sinogram au_bar = forward_project(u_bar, geom);
        const double denom = 1.0 + params.sigma_step;
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = (p[i] + params.sigma_step * (au_bar[i] - sino[i])) / denom;

        Image atp = back_project(p, geom);
        Image v(geom.n, geom.n);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = u[i] - params.tau_step * atp[i];
        Image u_new = tv_prox(v, params.tau_step * params.lambda_tv, params.inner_tv_iters);

        for (std::size_t i = 0; i < u.size(); ++i)
            u_bar[i] = 2.0 * u_new[i] - u[i];
        u = u_new;

        if (!u.all_finite())
            throw divergence_error("tv_reconstruct: non-finite iterate", k);

        if (log) {
            Sinogram au = forward_project(u, geom);
            double res = 0.0;
            for (std::size_t i = 0; i < au.size(); ++i) {
                double e = au[i] - sino[i];
                res += e * e;
            }
            res = std::sqrt(res);
            double obj = 0.5 * res * res + params.lambda_tv * detail::tv_value(u);
            *log << k << ',' << obj << ',' << res << ',';
            if (ref)
                *log << psnr(u, *ref, 1.0);
            *log << '\n';
        }
    }
    return u;
}

enum class PriorMethod { fbp, tv };

// Low-resolution image prior reconstruction, alternating three exact
// resolvents per sweep: the closed-form prior blend, the least-squares
// dual step, and the TV resolvent at the proximal-gradient point.
inline Image lrip_reconstruct(const Sinogram& sino, const ScanGeometry& geom, const Image& u_l,
                              int tau, const SolverParams& params, std::ostream* log = nullptr,
                              const Image* ref = nullptr)
{
    geom.validate();
    params.validate();
    if (sino.views() != geom.n_views || sino.bins() != geom.n_bins)
        throw std::invalid_argument("lrip_reconstruct: sinogram does not match geometry");
    DownSampler d(tau, geom.n);
    if (u_l.rows() != d.coarse_n() || u_l.cols() != d.coarse_n())
        throw std::invalid_argument("lrip_reconstruct: prior does not match n/tau grid");

    Image u = upsample_adjoint(u_l, d);
    Image u_tilde = u;
    Sinogram p(geom.n_views, geom.n_bins);

    if (log)
        *log << "iter,objective,data_residual,psnr\n";

    for (int k = 0; k < params.outer_iters; ++k) {
        u = u_update(u_tilde, u_l, d, params.mu, params.r);

        Sinogram au = forward_project(u_tilde, geom);
        p = dual_prox_ls(p, au, sino, params.tau_step);

        Image atp = back_project(p, geom);
        Image v(geom.n, geom.n);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = u[i] - params.tau_step * atp[i];
        u_tilde = tv_prox(v, params.tau_step * params.lambda_tv, params.inner_tv_iters);

        if (!u.all_finite() || !u_tilde.all_finite() || !p.all_finite())
            throw divergence_error("lrip_reconstruct: non-finite iterate", k);

        if (log) {
            Sinogram auk = forward_project(u, geom);
            double res = 0.0;
            for (std::size_t i = 0; i < auk.size(); ++i) {
                double e = auk[i] - sino[i];
                res += e * e;
            }
            res = std::sqrt(res);
            double obj = 0.5 * res * res + params.lambda_tv * detail::tv_value(u);
            *log << k << ',' << obj << ',' << res << ',';
            if (ref)
                *log << psnr(u, *ref, 1.0);
            *log << '\n';
        }
    }
    return u;
}

} // namespace lripct

#endif
