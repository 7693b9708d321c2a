/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

namespace geoderelict {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;       // measured error in the units of `tolerance`
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationOptions {
    // Multiplies the conductivity used by the numerical model but not by the
    // analytic reference. Anything other than 1 should fail the erfc check.
    double conductivity_scale = 1.0;
};

/// 100-cell column between two wells: max relative deviation of the
/// pressure drop per face, the face flux and the series-resistance rate.
double darcy_column_error(int cells = 100);

/// Relative L2 error of implicit conduction from a fixed-temperature cell
/// against the erfc similarity solution over a quarter year.
double conduction_erfc_error(int cells, double conductivity_scale = 1.0);

/// Relative error of the cold-front midpoint against the retarded
/// displacement (rho_w*cw/C_bulk) * V_inj / A.
double retardation_front_error(int cells);

/// Relative error of a centred producer on a 101x101 grid with fixed outer
/// pressure against steady radial inflow.
double radial_inflow_error();

/// Largest relative difference between CG and a dense LU solve over
/// `seeds` random SPD systems of size `n`.
double cg_dense_error(int seeds = 100, int n = 50);

struct TableResidual {
    double max_tonnes = 0.0;   // coal, carbon and CO2 columns
    double max_profit = 0.0;   // ten-thousand yuan
};

/// Recomputes the reference coal/carbon/CO2/profit table from the reference
/// annual heat values with the default factors.
TableResidual table3_residual();

std::vector<ValidationCheck> run_validation(const ValidationOptions& options = {});

} // namespace geoderelict
