#include <doctest.h>

#include <omp.h>

#include <random>

#include "defog/matting.hpp"
#include "support.hpp"

using namespace defog;
using testsupport::csr_to_dense;
using testsupport::dense_matting_laplacian;
using testsupport::dense_solve;

namespace {

Image mirror_h(const Image& img) {
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            out.at(Channel::R, x, y) = img.at(Channel::R, img.width - 1 - x, y);
            out.at(Channel::G, x, y) = img.at(Channel::G, img.width - 1 - x, y);
            out.at(Channel::B, x, y) = img.at(Channel::B, img.width - 1 - x, y);
        }
    return out;
}

ScalarMap mirror_h(const ScalarMap& m) {
    ScalarMap out(m.width, m.height);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) out.at(x, y) = m.at(m.width - 1 - x, y);
    return out;
}

}  // namespace

TEST_CASE("3x3 constant guide: single window, L = I - J/9") {
    const Image guide(3, 3, 0.42);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    REQUIRE(L.n == 9);
    const auto D = csr_to_dense(L);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            const double want = (i == j ? 1.0 : 0.0) - 1.0 / 9.0;
            CHECK(D[i][j] == doctest::Approx(want).epsilon(1e-12));
        }
    // L * ones == 0 essentially exactly for a constant guide
    std::vector<double> ones(9, 1.0), y;
    csr_matvec(L, ones, y);
    for (double v : y) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("L annihilates constants on arbitrary guides") {
    std::mt19937 rng(909);
    for (auto [w, h] : {std::pair{4, 4}, {7, 5}, {3, 9}}) {
        const Image guide = testsupport::random_image(w, h, rng);
        const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
        std::vector<double> ones(L.n, 1.0), y;
        csr_matvec(L, ones, y);
        for (double v : y) CHECK(std::abs(v) <= 1e-8);
    }
}

TEST_CASE("gather assembly matches the dense window-loop oracle") {
    std::mt19937 rng(1010);
    for (int trial = 0; trial < 4; ++trial) {
        const Image guide = testsupport::random_image(4, 4, rng);
        const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
        const auto dense = dense_matting_laplacian(guide, 1e-7);
        const auto D = csr_to_dense(L);
        for (int i = 0; i < L.n; ++i)
            for (int j = 0; j < L.n; ++j)
                CHECK(std::abs(D[i][j] - dense[i][j]) <= 1e-10);
    }
}

TEST_CASE("serial scatter assembly agrees with the gather kernel") {
    std::mt19937 rng(1111);
    const Image guide = testsupport::random_image(6, 7, rng);
    const SparseSymMatrix a = build_matting_laplacian(guide, 1e-7);
    const SparseSymMatrix b = serial::build_matting_laplacian(guide, 1e-7);
    REQUIRE(a.row_ptr == b.row_ptr);
    REQUIRE(a.cols == b.cols);
    for (std::size_t i = 0; i < a.vals.size(); ++i)
        CHECK(std::abs(a.vals[i] - b.vals[i]) <= 1e-12);
}

TEST_CASE("L is exactly symmetric and positive semidefinite") {
    std::mt19937 rng(1212);
    const Image guide = testsupport::random_image(6, 6, rng);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    const auto D = csr_to_dense(L);
    for (int i = 0; i < L.n; ++i) {
        int nnz_row = L.row_ptr[i + 1] - L.row_ptr[i];
        CHECK(nnz_row <= 25);
        for (int j = 0; j < L.n; ++j) CHECK(D[i][j] == D[j][i]);
    }
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(L.n), y;
        double norm2 = 0;
        for (double& v : x) {
            v = uni(rng);
            norm2 += v * v;
        }
        csr_matvec(L, x, y);
        double q = 0;
        for (int i = 0; i < L.n; ++i) q += x[i] * y[i];
        CHECK(q >= -1e-8 * norm2);
    }
}

TEST_CASE("degenerate guides are rejected") {
    CHECK_THROWS_AS(build_matting_laplacian(Image(2, 5), 1e-7), std::invalid_argument);
    CHECK_THROWS_AS(build_matting_laplacian(Image(3, 3), 0.0), std::invalid_argument);
}

TEST_CASE("constant rough transmittance is a fixed point of the refinement") {
    std::mt19937 rng(1313);
    const Image guide = testsupport::random_image(8, 8, rng);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    const ScalarMap t(8, 8, 0.37);
    const auto [out, report] = refine_transmittance(L, t, 1e-4);
    CHECK(report.converged);
    for (double v : out.values) CHECK(std::abs(v - 0.37) <= 1e-10);
}

TEST_CASE("huge lambda pins the solution to the data term") {
    std::mt19937 rng(1414);
    const Image guide = testsupport::random_image(8, 8, rng);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    const ScalarMap t = testsupport::random_map(8, 8, rng);
    const auto [out, report] = refine_transmittance(L, t, 1e6);
    CHECK(report.converged);
    for (std::size_t i = 0; i < t.values.size(); ++i)
        CHECK(std::abs(out.values[i] - t.values[i]) <= 1e-3);
}

TEST_CASE("PCG matches a dense direct solve on 10x10 systems") {
    std::mt19937 rng(1515);
    for (int trial = 0; trial < 3; ++trial) {
        const Image guide = testsupport::random_image(10, 10, rng);
        const ScalarMap t = testsupport::random_map(10, 10, rng);
        const double lambda = 1e-4;
        const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);

        auto A = csr_to_dense(L);
        std::vector<double> b(L.n);
        for (int i = 0; i < L.n; ++i) {
            A[i][i] += lambda;
            b[i] = lambda * t.values[i];
        }
        const std::vector<double> want = dense_solve(A, b);

        const auto [got, report] = refine_transmittance(L, t, lambda);
        CHECK(report.converged);
        for (int i = 0; i < L.n; ++i)
            CHECK(std::abs(got.values[i] - clamp01(want[i])) <= 1e-5);

        const auto [got_serial, report_serial] = serial::refine_transmittance(L, t, lambda);
        CHECK(report_serial.converged);
        for (int i = 0; i < L.n; ++i)
            CHECK(std::abs(got_serial.values[i] - clamp01(want[i])) <= 1e-5);
    }
}

TEST_CASE("final residual never exceeds the initial one") {
    std::mt19937 rng(1616);
    const Image guide = testsupport::random_image(9, 9, rng);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    const ScalarMap t = testsupport::random_map(9, 9, rng);
    const double lambda = 1e-4;

    // initial relative residual of the start vector t
    std::vector<double> ax;
    csr_matvec(L, t.values, ax);
    double rnorm = 0, bnorm = 0;
    for (int i = 0; i < L.n; ++i) {
        const double bi = lambda * t.values[i];
        const double ri = bi - (ax[i] + lambda * t.values[i]);
        rnorm += ri * ri;
        bnorm += bi * bi;
    }
    const double initial = std::sqrt(rnorm) / std::sqrt(bnorm);

    const auto [out, report] = refine_transmittance(L, t, lambda);
    CHECK(report.relative_residual <= initial + 1e-15);
    CHECK(report.converged);
    for (double v : out.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("mirrored guide and data give the mirrored refinement") {
    std::mt19937 rng(1717);
    const Image guide = testsupport::random_image(8, 6, rng);
    const ScalarMap t = testsupport::random_map(8, 6, rng);
    const auto [out, rep] = refine_transmittance(build_matting_laplacian(guide, 1e-7), t, 1e-4);
    const auto [mout, mrep] =
        refine_transmittance(build_matting_laplacian(mirror_h(guide), 1e-7), mirror_h(t), 1e-4);
    const ScalarMap back = mirror_h(mout);
    // the solver's summation order differs between the two runs, so equality
    // holds to solver precision rather than bitwise
    for (std::size_t i = 0; i < out.values.size(); ++i)
        CHECK(std::abs(out.values[i] - back.values[i]) <= 1e-9);
}

TEST_CASE("parallel solve is bitwise stable across thread counts") {
    // 280x240 puts the system above the solver's parallel cutoff, so this
    // exercises the blocked reductions rather than the serial fallback
    std::mt19937 rng(1818);
    const Image guide = testsupport::random_image(280, 240, rng);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    ScalarMap t(280, 240);
    for (std::size_t i = 0; i < t.values.size(); ++i)
        t.values[i] = clamp01(1.0 - 0.95 * std::min({guide.r[i], guide.g[i], guide.b[i]}));

    const int before = omp_get_max_threads();
    const auto [a, ra] = refine_transmittance(L, t, 1e-4);
    omp_set_num_threads(1);
    const auto [b, rb] = refine_transmittance(L, t, 1e-4);
    omp_set_num_threads(before);

    CHECK(ra.iterations == rb.iterations);
    CHECK(ra.relative_residual == rb.relative_residual);
    CHECK(a.values == b.values);
}

TEST_CASE("non-convergence is reported, not thrown") {
    std::mt19937 rng(1919);
    const Image guide = testsupport::random_image(8, 8, rng);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    const ScalarMap t = testsupport::random_map(8, 8, rng);
    const auto [out, report] = refine_transmittance(L, t, 1e-4, 1e-15, 1);
    CHECK_FALSE(report.converged);
    CHECK(report.iterations == 1);
    CHECK(report.relative_residual > 1e-15);
    for (double v : out.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("solver rejects mismatched shapes") {
    const Image guide(4, 4, 0.5);
    const SparseSymMatrix L = build_matting_laplacian(guide, 1e-7);
    CHECK_THROWS_AS(refine_transmittance(L, ScalarMap(3, 3), 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(refine_transmittance(L, ScalarMap(4, 4), 0.0), std::invalid_argument);
}
