#ifndef LRIPCT_RECON_HPP
#define LRIPCT_RECON_HPP

#include "fbp.hpp"
#include "variational.hpp"

namespace lripct {

// Step sizes scaled to the operator norm of the given geometry; the TV
// weight is the desk-scale default and can be overridden.
inline SolverParams default_solver_params(const ScanGeometry& geom, double lambda_tv = 0.05,
                                          int outer_iters = 200)
{
    const double op_norm = estimate_op_norm(geom);
    SolverParams p;
    p.mu = 0.01;
    p.r = 1.0;
    p.tau_step = 0.7 / op_norm;
    p.sigma_step = 0.35 / op_norm;
    p.lambda_tv = lambda_tv;
    p.outer_iters = outer_iters;
    p.inner_tv_iters = 20;
    return p;
}

// Reconstructs the low-resolution prior on the n/tau grid with the same
// views and bins.
inline Image make_prior(const Sinogram& sino, const ScanGeometry& geom, int tau,
                        PriorMethod method)
{
    if (tau < 1 || geom.n % tau != 0)
        throw std::invalid_argument("make_prior: n must be divisible by tau");
    ScanGeometry cg = geom.coarse(tau);
    if (method == PriorMethod::fbp)
        return fbp(sino, cg, FbpFilter::hann);
    return tv_reconstruct(sino, cg, default_solver_params(cg));
}

} // namespace lripct

#endif
