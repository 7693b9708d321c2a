/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/wells.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace geoderelict {

// Rates are averages over the report interval ending at the sample time.
struct WellSample {
    double water_rate_m3_per_day = 0.0;      // produced
    double injection_rate_m3_per_day = 0.0;  // injected
    double produced_temp_C = 0.0;
    double heat_rate_W = 0.0;                // heat recovered relative to the datum
    double cum_heat_J = 0.0;
};

struct ReportPoint {
    double time_days = 0.0;
    double mean_pressure_MPa = 0.0;
    std::vector<WellSample> wells;
};

/// Relative closure of the fluid and thermal energy budgets.
struct BalanceReport {
    double mass_error_rel = 0.0;
    double energy_error_rel = 0.0;
};

struct TimeSeries {
    std::vector<std::string> well_names;
    std::vector<WellKind> well_kinds;
    std::vector<ReportPoint> points;
    double horizon_years = 0.0;

    BalanceReport cumulative_balance;
    double max_step_mass_error = 0.0;
    double max_step_energy_error = 0.0;
    std::size_t steps = 0;
    std::size_t cuts = 0;

    std::size_t producer_count() const;
};

} // namespace geoderelict
