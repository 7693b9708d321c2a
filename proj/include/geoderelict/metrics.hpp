/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/timeseries.hpp"
#include "geoderelict/units.hpp"

#include <string>
#include <vector>

namespace geoderelict {

struct EmissionFactors {
    double coal_energy = units::tonne_coal;   // J per tonne standard coal
    double carbon_per_coal = 0.67;            // t C per t coal
    double co2_per_carbon = 44.0 / 12.0;      // t CO2 per t C
    double profit_per_coal = 2000.0;          // yuan per t coal

    void validate() const;
    bool operator==(const EmissionFactors&) const = default;
};

enum class Accounting { horizon_average, first_year };

struct Emissions {
    double carbon_t = 0.0;
    double co2_t = 0.0;
    double profit_10k_yuan = 0.0;   // ten-thousand yuan
};

/// Heat converted through the coal/carbon/CO2/profit chain.
struct HeatConversion {
    double heat_J = 0.0;
    double coal_t = 0.0;
    Emissions emissions;
};

struct WellAnnual {
    std::string name;
    WellKind kind = WellKind::producer;
    HeatConversion annual;
};

struct AnnualSummary {
    std::vector<WellAnnual> wells;
    HeatConversion system;               // producers only
    std::size_t producer_count = 0;
    double per_producer_heat_J = 0.0;    // system / producer_count
};

double coal_equivalent(double heat_J, const EmissionFactors& f);
Emissions emissions_and_profit(double coal_t, const EmissionFactors& f);
HeatConversion convert_heat(double heat_J, const EmissionFactors& f);

/// Annual heat per well and for the system. Horizon-average divides the
/// cumulative heat at the horizon by `horizon_years`; first-year takes the
/// cumulative heat at one year. Throws std::invalid_argument on an empty
/// series or a non-positive horizon.
AnnualSummary annualize(const TimeSeries& series, double horizon_years, const EmissionFactors& f,
                        Accounting accounting = Accounting::horizon_average);

} // namespace geoderelict
