// Shared test helpers: independent oracles and input generators. Everything
// here is deliberately the dumb, obviously-correct version of whatever it
// checks, with no code shared with the kernels under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "defog/image.hpp"
#include "defog/matting.hpp"

namespace testsupport {

inline defog::Image random_image(int w, int h, std::mt19937& rng, double lo = 0.0,
                                 double hi = 1.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    defog::Image img(w, h);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        img.r[i] = uni(rng);
        img.g[i] = uni(rng);
        img.b[i] = uni(rng);
    }
    return img;
}

inline defog::ScalarMap random_map(int w, int h, std::mt19937& rng, double lo = 0.0,
                                   double hi = 1.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    defog::ScalarMap m(w, h);
    for (double& v : m.values) v = uni(rng);
    return m;
}

using Dense = std::vector<std::vector<double>>;

inline Dense csr_to_dense(const defog::SparseSymMatrix& A) {
    Dense d(A.n, std::vector<double>(A.n, 0.0));
    for (int i = 0; i < A.n; ++i)
        for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
            d[i][A.cols[p]] += A.vals[p];
    return d;
}

// Gauss-Jordan inverse of a 3x3 with partial pivoting.
inline void invert3(const double in[3][3], double out[3][3]) {
    double a[3][6];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            a[i][j] = in[i][j];
            a[i][j + 3] = (i == j) ? 1.0 : 0.0;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (piv != col)
            for (int j = 0; j < 6; ++j) std::swap(a[col][j], a[piv][j]);
        const double inv = 1.0 / a[col][col];
        for (int j = 0; j < 6; ++j) a[col][j] *= inv;
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            const double f = a[i][col];
            for (int j = 0; j < 6; ++j) a[i][j] -= f * a[col][j];
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = a[i][j + 3];
}

// Dense matting Laplacian: loops every interior 3x3 window, inverts the
// regularized covariance directly and scatters the 9x9 block.
inline Dense dense_matting_laplacian(const defog::Image& g, double eps) {
    const int w = g.width, h = g.height;
    const int n = w * h;
    Dense L(n, std::vector<double>(n, 0.0));

    for (int cy = 1; cy <= h - 2; ++cy) {
        for (int cx = 1; cx <= w - 2; ++cx) {
            std::vector<int> member;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    member.push_back((cy + dy) * w + (cx + dx));

            double mu[3] = {0, 0, 0};
            for (int i : member) {
                mu[0] += g.r[i];
                mu[1] += g.g[i];
                mu[2] += g.b[i];
            }
            for (double& m : mu) m /= 9.0;

            double cov[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
            for (int i : member) {
                const double d[3] = {g.r[i] - mu[0], g.g[i] - mu[1], g.b[i] - mu[2]};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) cov[a][b] += d[a] * d[b];
            }
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) cov[a][b] /= 9.0;
                cov[a][a] += eps / 9.0;
            }
            double inv[3][3];
            invert3(cov, inv);

            for (int i : member) {
                const double di[3] = {g.r[i] - mu[0], g.g[i] - mu[1], g.b[i] - mu[2]};
                for (int j : member) {
                    const double dj[3] = {g.r[j] - mu[0], g.g[j] - mu[1],
                                          g.b[j] - mu[2]};
                    double q = 0.0;
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b) q += di[a] * inv[a][b] * dj[b];
                    L[i][j] += (i == j ? 1.0 : 0.0) - (1.0 + q) / 9.0;
                }
            }
        }
    }
    return L;
}

// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        if (A[col][col] == 0.0) throw std::runtime_error("dense_solve: singular");
        for (int i = col + 1; i < n; ++i) {
            const double f = A[i][col] / A[col][col];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) A[i][j] -= f * A[col][j];
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

// Per-block mean, the long way.
inline double block_mean(const std::vector<double>& plane, int w, int h, int x0,
                         int y0, int factor) {
    double sum = 0.0;
    int count = 0;
    for (int y = y0; y < std::min(y0 + factor, h); ++y)
        for (int x = x0; x < std::min(x0 + factor, w); ++x) {
            sum += plane[static_cast<std::size_t>(y) * w + x];
            ++count;
        }
    return sum / count;
}

}  // namespace testsupport
