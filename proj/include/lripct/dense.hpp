#ifndef LRIPCT_DENSE_HPP
#define LRIPCT_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "core.hpp"
#include "projector.hpp"

namespace lripct {

struct DenseMatrix {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<double> a; // row-major

    DenseMatrix() = default;
    DenseMatrix(int r, int c, double fill = 0.0)
        : n_rows(r), n_cols(c), a(static_cast<std::size_t>(r) * c, fill)
    {
    }

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n_cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n_cols + j]; }

    static DenseMatrix identity(int k)
    {
        DenseMatrix m(k, k);
        for (int i = 0; i < k; ++i)
            m(i, i) = 1.0;
        return m;
    }

    DenseMatrix transpose() const
    {
        DenseMatrix t(n_cols, n_rows);
        for (int i = 0; i < n_rows; ++i)
            for (int j = 0; j < n_cols; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix multiply(const DenseMatrix& b) const
    {
        if (n_cols != b.n_rows)
            throw std::invalid_argument("DenseMatrix::multiply: shape mismatch");
        DenseMatrix c(n_rows, b.n_cols);
        for (int i = 0; i < n_rows; ++i)
            for (int k = 0; k < n_cols; ++k) {
                double aik = (*this)(i, k);
                if (aik == 0.0)
                    continue;
                for (int j = 0; j < b.n_cols; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    bool is_zero() const
    {
        for (double x : a)
            if (x != 0.0)
                return false;
        return true;
    }

    double norm_one() const
    {
        double best = 0.0;
        for (int j = 0; j < n_cols; ++j) {
            double s = 0.0;
            for (int i = 0; i < n_rows; ++i)
                s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    double norm_inf() const
    {
        double best = 0.0;
        for (int i = 0; i < n_rows; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_cols; ++j)
                s += std::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    double max_abs_diff(const DenseMatrix& b) const
    {
        double best = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            best = std::max(best, std::abs(a[i] - b.a[i]));
        return best;
    }
};

inline DenseMatrix to_dense(const SystemMatrix& sm)
{
    DenseMatrix m(sm.n_rows, sm.n_cols);
    for (const auto& t : sm.entries)
        m(t.row, t.col) += t.value;
    return m;
}

struct SvdResult {
    DenseMatrix u;            // m x n, columns for zero singular values are zero
    DenseMatrix v;            // n x n
    std::vector<double> sigma; // descending, length n
};

namespace detail {

// Column-major working storage so the QR and Jacobi kernels touch
// contiguous memory.
struct ColMat {
    int m = 0, n = 0;
    std::vector<double> a;

    ColMat() = default;
    ColMat(int m_, int n_) : m(m_), n(n_), a(static_cast<std::size_t>(m_) * n_, 0.0) {}

    explicit ColMat(const DenseMatrix& d) : ColMat(d.n_rows, d.n_cols)
    {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                col(j)[i] = d(i, j);
    }

    double* col(int j) { return a.data() + static_cast<std::size_t>(j) * m; }
    const double* col(int j) const { return a.data() + static_cast<std::size_t>(j) * m; }
};

// Householder QR returning only the n x n upper factor R; the singular
// values of R equal those of the input.
inline ColMat qr_r_factor(ColMat w)
{
    const int m = w.m, n = w.n;
    std::vector<double> hv(m);
    for (int k = 0; k < n; ++k) {
        double* wk = w.col(k);
        double nrm = 0.0;
        for (int i = k; i < m; ++i)
            nrm += wk[i] * wk[i];
        nrm = std::sqrt(nrm);
        if (nrm == 0.0)
            continue;
        double alpha = wk[k] >= 0.0 ? -nrm : nrm;
        double vnorm2 = 0.0;
        for (int i = k; i < m; ++i) {
            hv[i] = wk[i];
            if (i == k)
                hv[i] -= alpha;
            vnorm2 += hv[i] * hv[i];
        }
        if (vnorm2 == 0.0)
            continue;
        for (int j = k; j < n; ++j) {
            double* wj = w.col(j);
            double s = 0.0;
            for (int i = k; i < m; ++i)
                s += hv[i] * wj[i];
            s = 2.0 * s / vnorm2;
            for (int i = k; i < m; ++i)
                wj[i] -= s * hv[i];
        }
    }
    ColMat r(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j && i < m; ++i)
            r.col(j)[i] = w.col(j)[i];
    return r;
}

// One-sided Jacobi: rotates column pairs of w until mutually orthogonal,
// accumulating the rotations into v. On exit the columns of w are
// sigma_j * u_j.
inline void jacobi_orthogonalize(ColMat& w, ColMat& v)
{
    const int m = w.m, n = w.n;
    const double tol = 1e-14;
    const int max_sweeps = 40;

    std::vector<double> colnorm2(n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double* wj = w.col(j);
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            s += wj[i] * wj[i];
        colnorm2[j] = s;
    }

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double* wp = w.col(p);
                double* wq = w.col(q);
                double apq = 0.0;
                for (int i = 0; i < m; ++i)
                    apq += wp[i] * wq[i];
                double app = colnorm2[p], aqq = colnorm2[q];
                if (apq == 0.0 || std::abs(apq) <= tol * std::sqrt(app * aqq))
                    continue;
                rotated = true;
                double zeta = (aqq - app) / (2.0 * apq);
                double t = (zeta >= 0.0 ? 1.0 : -1.0)
                    / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < m; ++i) {
                    double a = wp[i], b = wq[i];
                    wp[i] = c * a - s * b;
                    wq[i] = s * a + c * b;
                }
                double* vp = v.col(p);
                double* vq = v.col(q);
                for (int i = 0; i < n; ++i) {
                    double a = vp[i], b = vq[i];
                    vp[i] = c * a - s * b;
                    vq[i] = s * a + c * b;
                }
                colnorm2[p] = app - t * apq;
                colnorm2[q] = aqq + t * apq;
            }
        }
        if (!rotated)
            break;
    }
}

} // namespace detail

// Singular value decomposition by one-sided Jacobi; tall inputs are first
// reduced by a QR step and wide inputs handled through the transpose.
inline SvdResult svd(const DenseMatrix& mat)
{
    if (mat.n_rows == 0 || mat.n_cols == 0)
        throw std::invalid_argument("svd: empty matrix");
    const int m = mat.n_rows, n = mat.n_cols;

    if (m < n) {
        SvdResult t = svd(mat.transpose());
        return SvdResult{t.v, t.u, t.sigma};
    }

    detail::ColMat v(n, n);
    for (int j = 0; j < n; ++j)
        v.col(j)[j] = 1.0;

    // Shrink strictly tall inputs to the n x n R factor first; the Jacobi
    // sweep then works on the small square.
    const bool via_qr = m > n;
    detail::ColMat w = via_qr ? detail::qr_r_factor(detail::ColMat(mat)) : detail::ColMat(mat);
    detail::jacobi_orthogonalize(w, v);

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) {
        const double* wj = w.col(j);
        double s = 0.0;
        for (int i = 0; i < w.m; ++i)
            s += wj[i] * wj[i];
        sigma[j] = std::sqrt(s);
    }

    // Order singular values descending, permuting v (and w) to match.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return sigma[a] > sigma[b]; });

    SvdResult out;
    out.sigma.resize(n);
    out.v = DenseMatrix(n, n);
    out.u = DenseMatrix(m, n);
    std::vector<double> vcol(n);
    for (int j = 0; j < n; ++j) {
        int src = perm[j];
        out.sigma[j] = sigma[src];
        for (int i = 0; i < n; ++i) {
            vcol[i] = v.col(src)[i];
            out.v(i, j) = vcol[i];
        }
        if (sigma[src] > 0.0) {
            if (via_qr) {
                // u_j = A v_j / sigma_j
                const double inv = 1.0 / sigma[src];
                for (int i = 0; i < m; ++i) {
                    const double* arow = &mat.a[static_cast<std::size_t>(i) * n];
                    double s = 0.0;
                    for (int k = 0; k < n; ++k)
                        s += arow[k] * vcol[k];
                    out.u(i, j) = s * inv;
                }
            } else {
                const double* wj = w.col(src);
                const double inv = 1.0 / sigma[src];
                for (int i = 0; i < m; ++i)
                    out.u(i, j) = wj[i] * inv;
            }
        }
    }
    return out;
}

inline int numeric_rank(const SvdResult& s, double rel_tol)
{
    if (s.sigma.empty() || s.sigma[0] == 0.0)
        return 0;
    double cutoff = rel_tol * s.sigma[0];
    int r = 0;
    for (double x : s.sigma)
        if (x > cutoff)
            ++r;
    return r;
}

inline constexpr double kDefaultSvTol = 1e-10;

inline DenseMatrix pseudoinverse_from_svd(const SvdResult& s, double rel_tol)
{
    const int m = s.u.n_rows, n = s.v.n_rows;
    const int rank = numeric_rank(s, rel_tol);
    DenseMatrix pinv(n, m);
    std::vector<double> ucol(m);
    for (int k = 0; k < rank; ++k) {
        double inv = 1.0 / s.sigma[k];
        for (int j = 0; j < m; ++j)
            ucol[j] = s.u(j, k);
        for (int i = 0; i < n; ++i) {
            double vik = s.v(i, k) * inv;
            if (vik == 0.0)
                continue;
            double* prow = &pinv.a[static_cast<std::size_t>(i) * m];
            for (int j = 0; j < m; ++j)
                prow[j] += vik * ucol[j];
        }
    }
    return pinv;
}

inline DenseMatrix pseudoinverse(const DenseMatrix& m, double tol = kDefaultSvTol)
{
    if (m.is_zero())
        throw std::invalid_argument("pseudoinverse: zero matrix is degenerate");
    if (tol < 0.0)
        throw std::invalid_argument("pseudoinverse: tolerance must be nonnegative");
    return pseudoinverse_from_svd(svd(m), tol);
}

} // namespace lripct

#endif
