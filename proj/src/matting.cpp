#include "defog/matting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace defog {

namespace {

// Per-window statistics: color mean and the inverse of the regularized
// covariance, stored symmetric (6 unique entries).
struct WindowStats {
    double mu[3];
    double m00, m01, m02, m11, m12, m22;
};

constexpr int kWin = 9;  // |w_k| for 3x3 windows
constexpr double kInvWin = 1.0 / 9.0;

void invert_sym3(double a, double b, double c, double d, double e, double f,
                 WindowStats& s) {
    // [[a,b,c],[b,d,e],[c,e,f]] -> adjugate/det, symmetric by construction
    const double A = d * f - e * e;
    const double B = c * e - b * f;
    const double C = b * e - c * d;
    const double det = a * A + b * B + c * C;
    const double inv = 1.0 / det;
    s.m00 = A * inv;
    s.m01 = B * inv;
    s.m02 = C * inv;
    s.m11 = (a * f - c * c) * inv;
    s.m12 = (b * c - a * e) * inv;
    s.m22 = (a * d - b * b) * inv;
}

std::vector<WindowStats> window_stats(const Image& guide, double eps) {
    const int w = guide.width, h = guide.height;
    const int ww = w - 2, wh = h - 2;
    std::vector<WindowStats> stats(static_cast<std::size_t>(ww) * wh);

#pragma omp parallel for
    for (int cy = 1; cy <= h - 2; ++cy) {
        for (int cx = 1; cx <= w - 2; ++cx) {
            double sum[3] = {0, 0, 0};
            double sq[6] = {0, 0, 0, 0, 0, 0};  // rr, rg, rb, gg, gb, bb
            for (int dy = -1; dy <= 1; ++dy) {
                const std::size_t row = static_cast<std::size_t>(cy + dy) * w;
                for (int dx = -1; dx <= 1; ++dx) {
                    const std::size_t i = row + (cx + dx);
                    const double pr = guide.r[i], pg = guide.g[i], pb = guide.b[i];
                    sum[0] += pr;
                    sum[1] += pg;
                    sum[2] += pb;
                    sq[0] += pr * pr;
                    sq[1] += pr * pg;
                    sq[2] += pr * pb;
                    sq[3] += pg * pg;
                    sq[4] += pg * pb;
                    sq[5] += pb * pb;
                }
            }
            WindowStats s;
            for (int c = 0; c < 3; ++c) s.mu[c] = sum[c] * kInvWin;
            const double reg = eps * kInvWin;
            invert_sym3(sq[0] * kInvWin - s.mu[0] * s.mu[0] + reg,
                        sq[1] * kInvWin - s.mu[0] * s.mu[1],
                        sq[2] * kInvWin - s.mu[0] * s.mu[2],
                        sq[3] * kInvWin - s.mu[1] * s.mu[1] + reg,
                        sq[4] * kInvWin - s.mu[1] * s.mu[2],
                        sq[5] * kInvWin - s.mu[2] * s.mu[2] + reg, s);
            stats[static_cast<std::size_t>(cy - 1) * ww + (cx - 1)] = s;
        }
    }
    return stats;
}

// (I_i - mu)^T M (I_j - mu), written so that swapping i and j gives the
// bit-identical result (keeps the assembled matrix exactly symmetric).
inline double quad_form(const WindowStats& s, const double ui[3],
                        const double vj[3]) {
    const double u0 = ui[0] - s.mu[0], u1 = ui[1] - s.mu[1], u2 = ui[2] - s.mu[2];
    const double v0 = vj[0] - s.mu[0], v1 = vj[1] - s.mu[1], v2 = vj[2] - s.mu[2];
    return s.m00 * (u0 * v0) + s.m11 * (u1 * v1) + s.m22 * (u2 * v2) +
           s.m01 * (u0 * v1 + u1 * v0) + s.m02 * (u0 * v2 + u2 * v0) +
           s.m12 * (u1 * v2 + u2 * v1);
}

void check_guide(const Image& guide, double eps) {
    if (guide.width < 3 || guide.height < 3)
        throw std::invalid_argument("build_matting_laplacian: guide smaller than one 3x3 window");
    if (!(eps > 0.0))
        throw std::invalid_argument("build_matting_laplacian: eps must be > 0");
}

// Below this size the whole system sits in cache and the per-iteration
// OpenMP region overhead outweighs the matvec work (measured on the kernel
// benchmark); run the plain loops.
constexpr int kPcgParallelCutoff = 65536;
constexpr int kPcgBlock = 4096;

// PCG on (L + lambda I), Jacobi preconditioner, start vector t_rough.
// The parallel path runs three fused block regions per iteration; block
// partial sums are combined serially in index order, so results are bitwise
// stable across runs and thread counts.
std::pair<ScalarMap, SolveReport> pcg_impl(const SparseSymMatrix& L,
                                           const ScalarMap& t_rough,
                                           double lambda, double tol,
                                           int max_iter, bool parallel) {
    if (L.n != static_cast<int>(t_rough.values.size()))
        throw std::invalid_argument("refine_transmittance: matrix/vector size mismatch");
    if (!(lambda > 0.0))
        throw std::invalid_argument("refine_transmittance: lambda must be > 0");

    const int n = L.n;
    if (n < kPcgParallelCutoff) parallel = false;
    const int nblocks = (n + kPcgBlock - 1) / kPcgBlock;

    std::vector<double> diag(n, lambda);
    for (int i = 0; i < n; ++i) {
        for (int p = L.row_ptr[i]; p < L.row_ptr[i + 1]; ++p) {
            if (L.cols[p] == i) {
                diag[i] += L.vals[p];
                break;
            }
        }
    }

    std::vector<double> x = t_rough.values;
    std::vector<double> b(n), r(n), z(n), p(n), q(n);
    std::vector<double> part_a(nblocks), part_b(nblocks);
    for (int i = 0; i < n; ++i) b[i] = lambda * t_rough.values[i];

    // q = (L + lambda I) in, returning in.q
    auto apply_and_dot = [&](const std::vector<double>& in,
                             std::vector<double>& out) -> double {
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (int k = 0; k < nblocks; ++k) {
                const int lo = k * kPcgBlock;
                const int hi = std::min(lo + kPcgBlock, n);
                double s = 0.0;
                for (int i = lo; i < hi; ++i) {
                    double v = lambda * in[i];
                    for (int pp = L.row_ptr[i]; pp < L.row_ptr[i + 1]; ++pp)
                        v += L.vals[pp] * in[L.cols[pp]];
                    out[i] = v;
                    s += in[i] * v;
                }
                part_a[k] = s;
            }
            double s = 0.0;
            for (int k = 0; k < nblocks; ++k) s += part_a[k];
            return s;
        }
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double v = lambda * in[i];
            for (int pp = L.row_ptr[i]; pp < L.row_ptr[i + 1]; ++pp)
                v += L.vals[pp] * in[L.cols[pp]];
            out[i] = v;
            s += in[i] * v;
        }
        return s;
    };

    // x += alpha p; r -= alpha q; z = r/diag; returns (r.r, r.z)
    auto step_and_dots = [&](double alpha) -> std::pair<double, double> {
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (int k = 0; k < nblocks; ++k) {
                const int lo = k * kPcgBlock;
                const int hi = std::min(lo + kPcgBlock, n);
                double rr = 0.0, rz = 0.0;
                for (int i = lo; i < hi; ++i) {
                    x[i] += alpha * p[i];
                    const double ri = r[i] - alpha * q[i];
                    r[i] = ri;
                    const double zi = ri / diag[i];
                    z[i] = zi;
                    rr += ri * ri;
                    rz += ri * zi;
                }
                part_a[k] = rr;
                part_b[k] = rz;
            }
            double rr = 0.0, rz = 0.0;
            for (int k = 0; k < nblocks; ++k) {
                rr += part_a[k];
                rz += part_b[k];
            }
            return {rr, rz};
        }
        double rr = 0.0, rz = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            const double ri = r[i] - alpha * q[i];
            r[i] = ri;
            const double zi = ri / diag[i];
            z[i] = zi;
            rr += ri * ri;
            rz += ri * zi;
        }
        return {rr, rz};
    };

    SolveReport report;
    double bnorm2 = 0.0;
    for (int i = 0; i < n; ++i) bnorm2 += b[i] * b[i];
    const double bnorm = std::sqrt(bnorm2);
    ScalarMap out(t_rough.width, t_rough.height);
    if (bnorm == 0.0) {
        // zero right-hand side: the SPD system's solution is zero
        report.converged = true;
        out.values.assign(n, 0.0);
        return {out, report};
    }

    apply_and_dot(x, q);
    double rr = 0.0, rho = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ri = b[i] - q[i];
        r[i] = ri;
        const double zi = ri / diag[i];
        z[i] = zi;
        p[i] = zi;
        rr += ri * ri;
        rho += ri * zi;
    }
    double rel = std::sqrt(rr) / bnorm;
    report.relative_residual = rel;
    if (rel <= tol) {
        report.converged = true;
    } else {
        for (int it = 1; it <= max_iter; ++it) {
            const double pq = apply_and_dot(p, q);
            const double alpha = rho / pq;
            const auto [rr_new, rz_new] = step_and_dots(alpha);
            rel = std::sqrt(rr_new) / bnorm;
            report.iterations = it;
            report.relative_residual = rel;
            if (rel <= tol) {
                report.converged = true;
                break;
            }
            const double beta = rz_new / rho;
            rho = rz_new;
            if (parallel) {
#pragma omp parallel for schedule(static)
                for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
            } else {
                for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
            }
        }
    }

    out.values = std::move(x);
    for (double& v : out.values) v = clamp01(v);
    return {out, report};
}

}  // namespace

SparseSymMatrix build_matting_laplacian(const Image& guide, double eps) {
    check_guide(guide, eps);
    const int w = guide.width, h = guide.height;
    const int n = w * h;
    const int ww = w - 2;
    const auto stats = window_stats(guide, eps);

    SparseSymMatrix L;
    L.n = n;
    L.row_ptr.assign(n + 1, 0);

    // nonzero pattern: every in-bounds neighbor within Chebyshev distance 2
    // shares at least one window once the guide is >= 3x3
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        const int ny = std::min(y + 2, h - 1) - std::max(y - 2, 0) + 1;
        for (int x = 0; x < w; ++x) {
            const int nx = std::min(x + 2, w - 1) - std::max(x - 2, 0) + 1;
            L.row_ptr[static_cast<std::size_t>(y) * w + x + 1] = nx * ny;
        }
    }
    for (int i = 0; i < n; ++i) L.row_ptr[i + 1] += L.row_ptr[i];
    L.cols.resize(L.row_ptr[n]);
    L.vals.resize(L.row_ptr[n]);

#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int i = y * w + x;
            const double pi[3] = {guide.r[i], guide.g[i], guide.b[i]};
            int pos = L.row_ptr[i];
            for (int dy = -2; dy <= 2; ++dy) {
                const int yj = y + dy;
                if (yj < 0 || yj >= h) continue;
                // centers must contain both pixels and stay interior
                const int cy0 = std::max({1, y - 1, yj - 1});
                const int cy1 = std::min({h - 2, y + 1, yj + 1});
                for (int dx = -2; dx <= 2; ++dx) {
                    const int xj = x + dx;
                    if (xj < 0 || xj >= w) continue;
                    const int j = yj * w + xj;
                    const int cx0 = std::max({1, x - 1, xj - 1});
                    const int cx1 = std::min({w - 2, x + 1, xj + 1});
                    const double pj[3] = {guide.r[j], guide.g[j], guide.b[j]};
                    const double delta = (i == j) ? 1.0 : 0.0;
                    double acc = 0.0;
                    for (int cy = cy0; cy <= cy1; ++cy) {
                        const std::size_t krow = static_cast<std::size_t>(cy - 1) * ww;
                        for (int cx = cx0; cx <= cx1; ++cx) {
                            const WindowStats& s = stats[krow + (cx - 1)];
                            acc += delta - kInvWin * (1.0 + quad_form(s, pi, pj));
                        }
                    }
                    L.cols[pos] = j;
                    L.vals[pos] = acc;
                    ++pos;
                }
            }
        }
    }
    return L;
}

void csr_matvec(const SparseSymMatrix& A, const std::vector<double>& x,
                std::vector<double>& y) {
    y.resize(A.n);
#pragma omp parallel for
    for (int i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
            s += A.vals[p] * x[A.cols[p]];
        y[i] = s;
    }
}

std::pair<ScalarMap, SolveReport> refine_transmittance(const SparseSymMatrix& L,
                                                       const ScalarMap& t_rough,
                                                       double lambda, double tol,
                                                       int max_iter) {
    return pcg_impl(L, t_rough, lambda, tol, max_iter, /*parallel=*/true);
}

namespace serial {

SparseSymMatrix build_matting_laplacian(const Image& guide, double eps) {
    check_guide(guide, eps);
    const int w = guide.width, h = guide.height;
    const int n = w * h;

    std::vector<std::map<int, double>> rows(n);
    for (int cy = 1; cy <= h - 2; ++cy) {
        for (int cx = 1; cx <= w - 2; ++cx) {
            // window statistics
            double sum[3] = {0, 0, 0};
            double sq[6] = {0, 0, 0, 0, 0, 0};
            int members[kWin];
            int m = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int i = (cy + dy) * w + (cx + dx);
                    members[m++] = i;
                    sum[0] += guide.r[i];
                    sum[1] += guide.g[i];
                    sum[2] += guide.b[i];
                    sq[0] += guide.r[i] * guide.r[i];
                    sq[1] += guide.r[i] * guide.g[i];
                    sq[2] += guide.r[i] * guide.b[i];
                    sq[3] += guide.g[i] * guide.g[i];
                    sq[4] += guide.g[i] * guide.b[i];
                    sq[5] += guide.b[i] * guide.b[i];
                }
            }
            WindowStats s;
            for (int c = 0; c < 3; ++c) s.mu[c] = sum[c] * kInvWin;
            const double reg = eps * kInvWin;
            invert_sym3(sq[0] * kInvWin - s.mu[0] * s.mu[0] + reg,
                        sq[1] * kInvWin - s.mu[0] * s.mu[1],
                        sq[2] * kInvWin - s.mu[0] * s.mu[2],
                        sq[3] * kInvWin - s.mu[1] * s.mu[1] + reg,
                        sq[4] * kInvWin - s.mu[1] * s.mu[2],
                        sq[5] * kInvWin - s.mu[2] * s.mu[2] + reg, s);

            for (int a = 0; a < kWin; ++a) {
                const int i = members[a];
                const double pi[3] = {guide.r[i], guide.g[i], guide.b[i]};
                for (int bb = 0; bb < kWin; ++bb) {
                    const int j = members[bb];
                    const double pj[3] = {guide.r[j], guide.g[j], guide.b[j]};
                    const double delta = (i == j) ? 1.0 : 0.0;
                    rows[i][j] += delta - kInvWin * (1.0 + quad_form(s, pi, pj));
                }
            }
        }
    }

    SparseSymMatrix L;
    L.n = n;
    L.row_ptr.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) L.row_ptr[i + 1] = L.row_ptr[i] + static_cast<int>(rows[i].size());
    L.cols.reserve(L.row_ptr[n]);
    L.vals.reserve(L.row_ptr[n]);
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, v] : rows[i]) {
            L.cols.push_back(j);
            L.vals.push_back(v);
        }
    }
    return L;
}

std::pair<ScalarMap, SolveReport> refine_transmittance(const SparseSymMatrix& L,
                                                       const ScalarMap& t_rough,
                                                       double lambda, double tol,
                                                       int max_iter) {
    return pcg_impl(L, t_rough, lambda, tol, max_iter, /*parallel=*/false);
}

}  // namespace serial

}  // namespace defog
