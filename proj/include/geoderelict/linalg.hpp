/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace geoderelict {

/// Compressed sparse row matrix. Column indices are ascending within a row.
struct SparseMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_offsets;
    std::vector<std::size_t> column_indices;
    std::vector<double> values;

    static SparseMatrix identity(std::size_t n);

    /// Builds from (row, col, value) triplets; duplicates are summed in input
    /// order.
    struct Triplet {
        std::size_t row;
        std::size_t col;
        double value;
    };
    static SparseMatrix from_triplets(std::size_t n, std::span<const Triplet> triplets);

    /// Throws std::invalid_argument if the CSR arrays are inconsistent.
    void check_structure() const;

    double diagonal(std::size_t row) const;
};

/// y = A x, rows in order, columns ascending. Throws on size mismatch.
std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);
void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y);

struct SolveReport {
    int iterations = 0;
    double final_residual_norm = 0.0;   // ||b - A x|| / ||b||
    bool converged = false;
};

struct CgOptions {
    double tolerance = 1e-8;
    int max_iterations = 5000;
    // Optional: sqrt(r^T M^-1 r) after every iteration, starting with the
    // initial residual.
    std::vector<double>* preconditioned_residual_history = nullptr;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. `x` holds the
/// initial guess on entry and the solution on exit. Never throws on
/// non-convergence; the report says so.
SolveReport cg_solve(const SparseMatrix& A, std::span<const double> b, std::span<double> x, const CgOptions& options = {});

} // namespace geoderelict
