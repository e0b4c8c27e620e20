#ifndef LRIPCT_CONDITIONING_HPP
#define LRIPCT_CONDITIONING_HPP

#include <string>
#include <vector>

#include "dense.hpp"
#include "downsample.hpp"
#include "geometry.hpp"
#include "projector.hpp"

namespace lripct {

enum class NormKind { one, two, inf };

inline const char* norm_name(NormKind k)
{
    switch (k) {
    case NormKind::one:
        return "1";
    case NormKind::two:
        return "2";
    default:
        return "inf";
    }
}

struct ConditionReport {
    NormKind norm_kind = NormKind::two;
    double matrix_norm = 0.0;
    double pinv_norm = 0.0;
    double cond = 0.0;
    int rank = 0;
    double sv_threshold = 0.0;
};

// Generalized condition number ||m|| * ||m^+|| with the pseudoinverse
// truncated at the relative singular-value cutoff.
inline ConditionReport condition_from_svd(const DenseMatrix& m, const SvdResult& s,
                                          NormKind kind, double tol = kDefaultSvTol)
{
    ConditionReport rep;
    rep.norm_kind = kind;
    rep.rank = numeric_rank(s, tol);
    rep.sv_threshold = tol * (s.sigma.empty() ? 0.0 : s.sigma[0]);
    if (rep.rank == 0)
        throw std::invalid_argument("condition_number: zero matrix is degenerate");
    if (kind == NormKind::two) {
        rep.matrix_norm = s.sigma[0];
        rep.pinv_norm = 1.0 / s.sigma[rep.rank - 1];
    } else {
        DenseMatrix pinv = pseudoinverse_from_svd(s, tol);
        if (kind == NormKind::one) {
            rep.matrix_norm = m.norm_one();
            rep.pinv_norm = pinv.norm_one();
        } else {
            rep.matrix_norm = m.norm_inf();
            rep.pinv_norm = pinv.norm_inf();
        }
    }
    rep.cond = rep.matrix_norm * rep.pinv_norm;
    return rep;
}

inline ConditionReport condition_number(const DenseMatrix& m, NormKind kind,
                                        double tol = kDefaultSvTol)
{
    if (m.is_zero())
        throw std::invalid_argument("condition_number: zero matrix is degenerate");
    return condition_from_svd(m, svd(m), kind, tol);
}

struct Theorem1Result {
    double cond_full = 0.0;
    double cond_low = 0.0;
    bool holds = false;
};

// Builds the full- and coarse-grid system matrices for the same scan and
// compares their generalized condition numbers.
inline Theorem1Result verify_theorem1(const ScanGeometry& geom, int tau, NormKind kind,
                                      long long budget = kDefaultMatrixBudget)
{
    DenseMatrix a = to_dense(build_system_matrix(geom, budget));
    Theorem1Result res;
    res.cond_full = condition_number(a, kind).cond;
    if (tau == 1) {
        res.cond_low = res.cond_full;
    } else {
        DenseMatrix al = to_dense(build_system_matrix(geom.coarse(tau), budget));
        res.cond_low = condition_number(al, kind).cond;
    }
    res.holds = res.cond_low <= res.cond_full * (1.0 + 1e-6);
    return res;
}

struct SweepRow {
    double coverage_deg = 0.0;
    int tau = 1;
    NormKind norm = NormKind::two;
    double cond_full = 0.0;
    double cond_low = 0.0;
    bool holds = false;
};

inline std::vector<SweepRow> condition_sweep(int n, const std::vector<double>& coverages,
                                             const std::vector<int>& taus, NormKind kind,
                                             long long budget = kDefaultMatrixBudget)
{
    std::vector<SweepRow> rows;
    for (double cov : coverages) {
        ScanGeometry geom = default_geometry(n, cov);
        DenseMatrix a = to_dense(build_system_matrix(geom, budget));
        double cond_full = condition_from_svd(a, svd(a), kind).cond;
        for (int tau : taus) {
            SweepRow row;
            row.coverage_deg = cov;
            row.tau = tau;
            row.norm = kind;
            row.cond_full = cond_full;
            if (tau == 1) {
                row.cond_low = cond_full;
            } else {
                DenseMatrix al = to_dense(build_system_matrix(geom.coarse(tau), budget));
                row.cond_low = condition_from_svd(al, svd(al), kind).cond;
            }
            row.holds = row.cond_low <= row.cond_full * (1.0 + 1e-6);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace lripct

#endif
