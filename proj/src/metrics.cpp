/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace geoderelict {

std::size_t TimeSeries::producer_count() const
{
    return static_cast<std::size_t>(std::count(well_kinds.begin(), well_kinds.end(), WellKind::producer));
}

void EmissionFactors::validate() const
{
    if (!(coal_energy > 0.0) || !(carbon_per_coal > 0.0) || !(co2_per_carbon > 0.0) || !(profit_per_coal > 0.0))
        throw std::invalid_argument("emission factors must all be > 0");
}

double coal_equivalent(double heat_J, const EmissionFactors& f)
{
    if (!(heat_J >= 0.0))
        throw std::invalid_argument("coal_equivalent: heat must be >= 0");
    return heat_J / f.coal_energy;
}

Emissions emissions_and_profit(double coal_t, const EmissionFactors& f)
{
    if (!(coal_t >= 0.0))
        throw std::invalid_argument("emissions_and_profit: coal must be >= 0");
    Emissions e;
    e.carbon_t = coal_t * f.carbon_per_coal;
    e.co2_t = e.carbon_t * f.co2_per_carbon;
    e.profit_10k_yuan = coal_t * f.profit_per_coal / 1e4;
    return e;
}

HeatConversion convert_heat(double heat_J, const EmissionFactors& f)
{
    HeatConversion c;
    c.heat_J = heat_J;
    // Net-consuming wells (negative heat) report zero coal rather than failing.
    c.coal_t = coal_equivalent(std::max(heat_J, 0.0), f);
    c.emissions = emissions_and_profit(c.coal_t, f);
    return c;
}

namespace {

double cumulative_at(const TimeSeries& s, std::size_t well, double t_days)
{
    double t_prev = 0.0;
    double h_prev = 0.0;
    for (const auto& p : s.points) {
        if (p.time_days >= t_days) {
            const double w = (t_days - t_prev) / (p.time_days - t_prev);
            return h_prev + w * (p.wells[well].cum_heat_J - h_prev);
        }
        t_prev = p.time_days;
        h_prev = p.wells[well].cum_heat_J;
    }
    return h_prev;
}

} // namespace

AnnualSummary annualize(const TimeSeries& series, double horizon_years, const EmissionFactors& f, Accounting accounting)
{
    if (series.points.empty())
        throw std::invalid_argument("annualize: empty time series");
    if (!(horizon_years > 0.0))
        throw std::invalid_argument("annualize: horizon must be > 0");

    AnnualSummary out;
    double system = 0.0;
    const auto& last = series.points.back();
    for (std::size_t w = 0; w < series.well_names.size(); ++w) {
        double annual = 0.0;
        if (accounting == Accounting::horizon_average)
            annual = last.wells[w].cum_heat_J / horizon_years;
        else
            annual = cumulative_at(series, w, units::year / units::day);
        out.wells.push_back(WellAnnual{series.well_names[w], series.well_kinds[w], convert_heat(annual, f)});
        if (series.well_kinds[w] == WellKind::producer)
            system += annual;
    }
    out.system = convert_heat(system, f);
    out.producer_count = series.producer_count();
    out.per_producer_heat_J = out.producer_count > 0 ? system / static_cast<double>(out.producer_count) : 0.0;
    return out;
}

} // namespace geoderelict
