/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace geoderelict;

namespace {

SparseMatrix laplacian(std::size_t n)
{
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back({i, i, 2.0});
        if (i > 0)
            t.push_back({i, i - 1, -1.0});
        if (i + 1 < n)
            t.push_back({i, i + 1, -1.0});
    }
    return SparseMatrix::from_triplets(n, t);
}

// Diagonally dominant 2D 5-point operator with a storage term.
SparseMatrix storage_laplacian(std::size_t m, double storage)
{
    const std::size_t n = m * m;
    std::vector<SparseMatrix::Triplet> t;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::vector<double> diag(n, storage);
    auto link = [&](std::size_t a, std::size_t b) {
        const double c = u(rng);
        t.push_back({a, b, -c});
        t.push_back({b, a, -c});
        diag[a] += c;
        diag[b] += c;
    };
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            if (i + 1 < m)
                link(i + m * j, i + 1 + m * j);
            if (j + 1 < m)
                link(i + m * j, i + m * (j + 1));
        }
    for (std::size_t i = 0; i < n; ++i)
        t.push_back({i, i, diag[i]});
    return SparseMatrix::from_triplets(n, t);
}

double norm(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("spmv examples")
{
    const auto I = SparseMatrix::identity(4);
    std::vector<double> x{1.5, -2.0, 3.25, 0.0};
    CHECK(spmv(I, x) == x);

    const auto L = laplacian(3);
    CHECK(spmv(L, std::vector<double>{1.0, 1.0, 1.0}) == std::vector<double>{1.0, 0.0, 1.0});

    const auto Z = SparseMatrix::from_triplets(3, std::vector<SparseMatrix::Triplet>{});
    CHECK(spmv(Z, std::vector<double>{4.0, 5.0, 6.0}) == std::vector<double>(3, 0.0));
    CHECK_THROWS(spmv(L, std::vector<double>{1.0, 2.0}));
}

TEST_CASE("triplets are summed and sorted")
{
    std::vector<SparseMatrix::Triplet> t{{0, 1, 2.0}, {0, 0, 1.0}, {0, 1, 3.0}, {1, 1, 4.0}};
    const auto A = SparseMatrix::from_triplets(2, t);
    CHECK_NOTHROW(A.check_structure());
    CHECK(A.column_indices == std::vector<std::size_t>{0, 1, 1});
    CHECK(A.values == std::vector<double>{1.0, 5.0, 4.0});
    CHECK(A.diagonal(1) == 4.0);
    auto B = A;
    B.column_indices[1] = 0;
    CHECK_THROWS(B.check_structure());
}

TEST_CASE("spmv is linear")
{
    const auto A = storage_laplacian(12, 0.3);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(A.n), y(A.n), z(A.n);
        for (std::size_t i = 0; i < A.n; ++i) {
            x[i] = g(rng);
            y[i] = g(rng);
        }
        const double a = g(rng);
        const double b = g(rng);
        for (std::size_t i = 0; i < A.n; ++i)
            z[i] = a * x[i] + b * y[i];
        const auto Az = spmv(A, z);
        const auto Ax = spmv(A, x);
        const auto Ay = spmv(A, y);
        std::vector<double> diff(A.n);
        for (std::size_t i = 0; i < A.n; ++i)
            diff[i] = Az[i] - (a * Ax[i] + b * Ay[i]);
        CHECK(norm(diff) <= 1e-12 * norm(Az));
    }
}

TEST_CASE("CG on the identity")
{
    const auto I = SparseMatrix::identity(6);
    std::vector<double> b{1, 2, 3, 4, 5, 6};
    std::vector<double> x(6, 0.0);
    const auto r = cg_solve(I, b, x);
    CHECK(r.converged);
    CHECK(r.iterations <= 1);
    CHECK(x == b);
}

TEST_CASE("CG recovers a manufactured solution")
{
    const auto A = laplacian(50);
    const auto b = spmv(A, std::vector<double>(50, 1.0));
    std::vector<double> x(50, 0.0);
    const auto r = cg_solve(A, b, x, CgOptions{.tolerance = 1e-12});
    CHECK(r.converged);
    for (double v : x)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("CG iteration bound on engine-like matrices")
{
    for (std::size_t m : {5u, 10u, 20u}) {
        const auto A = storage_laplacian(m, 0.05);
        std::vector<double> b(A.n);
        std::mt19937_64 rng(m);
        std::normal_distribution<double> g;
        for (auto& v : b)
            v = g(rng);
        std::vector<double> x(A.n, 0.0);
        const auto r = cg_solve(A, b, x, CgOptions{.tolerance = 1e-10});
        CHECK(r.converged);
        CHECK(r.iterations <= static_cast<int>(3 * A.n));
        const auto Ax = spmv(A, x);
        std::vector<double> res(A.n);
        for (std::size_t i = 0; i < A.n; ++i)
            res[i] = b[i] - Ax[i];
        CHECK(norm(res) <= 1e-9 * norm(b));
    }
}

TEST_CASE("CG error decreases monotonically in the energy norm")
{
    const auto A = storage_laplacian(12, 0.05);
    std::vector<double> exact(A.n);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    for (auto& v : exact)
        v = g(rng);
    const auto b = spmv(A, exact);
    double prev = 1e300;
    for (int k = 0; k <= 60; ++k) {
        std::vector<double> x(A.n, 0.0);
        cg_solve(A, b, x, CgOptions{.tolerance = 1e-300, .max_iterations = k});
        std::vector<double> e(A.n);
        for (std::size_t i = 0; i < A.n; ++i)
            e[i] = x[i] - exact[i];
        const auto Ae = spmv(A, e);
        double energy = 0.0;
        for (std::size_t i = 0; i < A.n; ++i)
            energy += e[i] * Ae[i];
        const double err = std::sqrt(energy);
        CHECK(err <= prev * (1.0 + 1e-13));
        prev = err;
    }
}

// Expected to fail for CG.
TEST_CASE("CG preconditioned residual is monotone" * doctest::should_fail())
{
    const auto A = storage_laplacian(20, 0.05);
    std::vector<double> b(A.n);
    std::mt19937_64 rng(20);
    std::normal_distribution<double> g;
    for (auto& v : b)
        v = g(rng);
    std::vector<double> x(A.n, 0.0);
    std::vector<double> history;
    const auto r = cg_solve(A, b, x, CgOptions{.tolerance = 1e-10, .preconditioned_residual_history = &history});
    REQUIRE(history.size() == static_cast<std::size_t>(r.iterations) + 1);
    for (std::size_t k = 1; k < history.size(); ++k)
        CHECK(history[k] <= history[k - 1] * (1.0 + 1e-13));
}

TEST_CASE("CG reports non-convergence without throwing")
{
    const auto A = laplacian(200);
    std::vector<double> b(200, 1.0);
    std::vector<double> x(200, 0.0);
    const auto r = cg_solve(A, b, x, CgOptions{.tolerance = 1e-14, .max_iterations = 3});
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
}

}
