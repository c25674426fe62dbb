#pragma once

#include <utility>
#include <vector>

#include "defog/image.hpp"

namespace defog {

// Symmetric sparse matrix in CSR layout. For the matting Laplacian every
// row has at most 25 nonzeros (5x5 neighborhood reach), rows sum to ~0 and
// the matrix is positive semidefinite.
struct SparseSymMatrix {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> cols;     // ascending within each row
    std::vector<double> vals;

    std::size_t nnz() const { return cols.size(); }
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

// Closed-form matting Laplacian over all 3x3 windows fully inside the guide:
//   L(i,j) = sum_k [ delta_ij - (1/9) (1 + (I_i-mu_k)^T (Sigma_k + eps/9 Id)^-1 (I_j-mu_k)) ]
// with mu_k / Sigma_k the window color mean / covariance.
// Requires guide at least 3x3 and eps > 0.
SparseSymMatrix build_matting_laplacian(const Image& guide, double eps);

// Solves (L + lambda*I) t = lambda * t_rough with Jacobi-preconditioned
// conjugate gradients, started from t_rough. The solution is clamped to
// [0,1] after the report is taken; on non-convergence the best iterate is
// returned with report.converged = false.
std::pair<ScalarMap, SolveReport> refine_transmittance(
    const SparseSymMatrix& L, const ScalarMap& t_rough, double lambda,
    double tol = 1e-6, int max_iter = 2000);

// y = A x (rows in parallel).
void csr_matvec(const SparseSymMatrix& A, const std::vector<double>& x,
                std::vector<double>& y);

namespace serial {

// Scatter-style assembly: walks windows and accumulates each 9x9 block into
// triplets, then compresses. Same matrix as the gather kernel up to
// summation order.
SparseSymMatrix build_matting_laplacian(const Image& guide, double eps);

// Plain single-threaded PCG, textbook loops. Benchmark baseline.
std::pair<ScalarMap, SolveReport> refine_transmittance(
    const SparseSymMatrix& L, const ScalarMap& t_rough, double lambda,
    double tol = 1e-6, int max_iter = 2000);

}  // namespace serial

}  // namespace defog
