/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace geoderelict {

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix A;
    A.n = n;
    A.row_offsets.resize(n + 1);
    std::iota(A.row_offsets.begin(), A.row_offsets.end(), std::size_t{0});
    A.column_indices.resize(n);
    std::iota(A.column_indices.begin(), A.column_indices.end(), std::size_t{0});
    A.values.assign(n, 1.0);
    return A;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t n, std::span<const Triplet> triplets)
{
    std::vector<Triplet> sorted(triplets.begin(), triplets.end());
    for (const auto& t : sorted)
        if (t.row >= n || t.col >= n)
            throw std::invalid_argument("from_triplets: index out of range");
    std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& l, const Triplet& r) {
        return l.row != r.row ? l.row < r.row : l.col < r.col;
    });
    SparseMatrix A;
    A.n = n;
    A.row_offsets.assign(n + 1, 0);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k > 0 && sorted[k].row == sorted[k - 1].row && sorted[k].col == sorted[k - 1].col) {
            A.values.back() += sorted[k].value;
            continue;
        }
        A.column_indices.push_back(sorted[k].col);
        A.values.push_back(sorted[k].value);
        ++A.row_offsets[sorted[k].row + 1];
    }
    for (std::size_t r = 0; r < n; ++r)
        A.row_offsets[r + 1] += A.row_offsets[r];
    return A;
}

void SparseMatrix::check_structure() const
{
    if (row_offsets.size() != n + 1 || row_offsets.front() != 0)
        throw std::invalid_argument("sparse matrix: row_offsets must have n+1 entries starting at 0");
    for (std::size_t r = 0; r < n; ++r)
        if (row_offsets[r + 1] < row_offsets[r])
            throw std::invalid_argument("sparse matrix: row_offsets not monotone");
    if (row_offsets.back() != column_indices.size() || column_indices.size() != values.size())
        throw std::invalid_argument("sparse matrix: array lengths disagree");
    for (std::size_t c : column_indices)
        if (c >= n)
            throw std::invalid_argument("sparse matrix: column index out of range");
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = row_offsets[r] + 1; k < row_offsets[r + 1]; ++k)
            if (column_indices[k] <= column_indices[k - 1])
                throw std::invalid_argument("sparse matrix: column indices not strictly ascending in row "
                                            + std::to_string(r));
}

double SparseMatrix::diagonal(std::size_t row) const
{
    for (std::size_t k = row_offsets[row]; k < row_offsets[row + 1]; ++k)
        if (column_indices[k] == row)
            return values[k];
    return 0.0;
}

void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y)
{
    if (x.size() != A.n || y.size() != A.n)
        throw std::invalid_argument("spmv: dimension mismatch");
    for (std::size_t r = 0; r < A.n; ++r) {
        double s = 0.0;
        for (std::size_t k = A.row_offsets[r]; k < A.row_offsets[r + 1]; ++k)
            s += A.values[k] * x[A.column_indices[k]];
        y[r] = s;
    }
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x)
{
    std::vector<double> y(A.n);
    spmv(A, x, y);
    return y;
}

SolveReport cg_solve(const SparseMatrix& A, std::span<const double> b, std::span<double> x, const CgOptions& options)
{
    const std::size_t n = A.n;
    if (b.size() != n || x.size() != n)
        throw std::invalid_argument("cg_solve: dimension mismatch");
    if (!(options.tolerance > 0.0))
        throw std::invalid_argument("cg_solve: tolerance must be > 0");

    SolveReport report;
    const double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        report.converged = true;
        return report;
    }

    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = A.diagonal(i);
        if (!(d > 0.0))
            throw std::invalid_argument("cg_solve: matrix diagonal must be positive");
        inv_diag[i] = 1.0 / d;
    }

    std::vector<double> r(n), z(n), p(n), Ap(n);
    auto true_residual = [&] {
        spmv(A, x, Ap);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = b[i] - Ap[i];
        return std::sqrt(dot(r, r)) / b_norm;
    };
    auto record = [&](double rz) {
        if (options.preconditioned_residual_history)
            options.preconditioned_residual_history->push_back(std::sqrt(std::max(rz, 0.0)));
    };

    double rel = true_residual();
    bool first = true;
    int restarts = 0;
    // The recurrence residual can drift from b - A x; on apparent convergence
    // the true residual is checked and the iteration restarted from it.
    while (rel > options.tolerance && report.iterations < options.max_iterations) {
        for (std::size_t i = 0; i < n; ++i)
            z[i] = inv_diag[i] * r[i];
        p = z;
        double rz = dot(r, z);
        if (first)
            record(rz);
        first = false;

        bool breakdown = false;
        while (rel > options.tolerance && report.iterations < options.max_iterations) {
            spmv(A, p, Ap);
            const double pAp = dot(p, Ap);
            if (!(pAp > 0.0)) {
                breakdown = true;
                break;
            }
            const double alpha = rz / pAp;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * Ap[i];
            }
            for (std::size_t i = 0; i < n; ++i)
                z[i] = inv_diag[i] * r[i];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i)
                p[i] = z[i] + beta * p[i];
            ++report.iterations;
            record(rz);
            rel = std::sqrt(dot(r, r)) / b_norm;
        }
        rel = true_residual();
        if (breakdown || ++restarts > 3)
            break;
    }

    report.final_residual_norm = rel;
    report.converged = rel <= options.tolerance;
    return report;
}

} // namespace geoderelict
