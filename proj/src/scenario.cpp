/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <tuple>

namespace geoderelict {

std::string_view to_string(Pattern p)
{
    switch (p) {
    case Pattern::direct: return "direct";
    case Pattern::four_inject_one_produce: return "four_inject_one_produce";
    case Pattern::one_inject_four_produce: return "one_inject_four_produce";
    case Pattern::custom: return "custom";
    }
    return "custom";
}

std::optional<Pattern> pattern_from_string(std::string_view s)
{
    if (s == "direct")
        return Pattern::direct;
    if (s == "four_inject_one_produce" || s == "4i1p")
        return Pattern::four_inject_one_produce;
    if (s == "one_inject_four_produce" || s == "1i4p")
        return Pattern::one_inject_four_produce;
    if (s == "custom")
        return Pattern::custom;
    return std::nullopt;
}

void TimestepControl::validate() const
{
    if (!(dt_init > 0.0) || !(dt_init <= dt_max))
        throw std::invalid_argument("time: need 0 < dt_init <= dt_max");
    if (!(growth > 1.0))
        throw std::invalid_argument("time: growth must be > 1");
    if (!(cut > 0.0 && cut < 1.0))
        throw std::invalid_argument("time: cut must lie in (0,1)");
    if (!(cfl_target > 0.0 && cfl_target <= 1.0))
        throw std::invalid_argument("time: cfl_target must lie in (0,1]");
}

void AquiferModel::validate() const
{
    if (!enabled)
        return;
    if (!(productivity >= 0.0))
        throw std::invalid_argument("aquifer: productivity must be >= 0");
    if (!(water_volume > 0.0))
        throw std::invalid_argument("aquifer: water volume must be > 0 when enabled");
    if (!(initial_pressure > 0.0))
        throw std::invalid_argument("aquifer: initial pressure must be > 0");
    if (compressibility && !(*compressibility > 0.0))
        throw std::invalid_argument("aquifer: compressibility must be > 0");
    if (attachment == AquiferAttachment::cells && cells.empty())
        throw std::invalid_argument("aquifer: explicit attachment needs at least one cell");
}

PatternLayout pattern_layout(double spacing, const GridSpec& grid)
{
    grid.validate();
    if (!(spacing > 0.0))
        throw std::invalid_argument("pattern: spacing must be > 0");
    if (grid.nx * grid.dx < 2.0 * spacing || grid.ny * grid.dy < 2.0 * spacing)
        throw std::invalid_argument("pattern: spacing too large for grid footprint");
    PatternLayout l;
    l.center_i = grid.nx / 2;
    l.center_j = grid.ny / 2;
    const double leg = spacing / std::sqrt(2.0);
    l.offset_i = static_cast<int>(std::lround(leg / grid.dx));
    l.offset_j = static_cast<int>(std::lround(leg / grid.dy));
    if (l.offset_i < 1 || l.offset_j < 1)
        throw std::invalid_argument("pattern: spacing smaller than one cell");
    if (l.center_i - l.offset_i < 0 || l.center_i + l.offset_i >= grid.nx || l.center_j - l.offset_j < 0
        || l.center_j + l.offset_j >= grid.ny)
        throw std::invalid_argument("pattern: satellite wells fall outside grid");
    l.actual_spacing = std::hypot(l.offset_i * grid.dx, l.offset_j * grid.dy);
    l.snap_error = std::abs(l.actual_spacing - spacing);
    return l;
}

std::vector<WellSpec> expand_pattern(Pattern pattern, double spacing, const GridSpec& grid, const PatternWells& tmpl)
{
    auto make = [&](std::string name, WellKind kind, int i, int j) {
        WellSpec w;
        w.name = std::move(name);
        w.kind = kind;
        w.i = i;
        w.j = j;
        w.layer_top = tmpl.layer_top;
        w.layer_bottom = tmpl.layer_bottom;
        w.radius = tmpl.radius;
        w.bhp = kind == WellKind::injector ? tmpl.injector_bhp : tmpl.producer_bhp;
        w.inj_temperature = tmpl.injection_temperature;
        return w;
    };

    if (pattern == Pattern::custom)
        throw std::invalid_argument("pattern: custom pattern has no automatic expansion");
    if (pattern == Pattern::direct) {
        grid.validate();
        return {make("p1", WellKind::producer, grid.nx / 2, grid.ny / 2)};
    }

    const PatternLayout l = pattern_layout(spacing, grid);
    const int di[4] = {-l.offset_i, l.offset_i, l.offset_i, -l.offset_i};
    const int dj[4] = {-l.offset_j, -l.offset_j, l.offset_j, l.offset_j};
    const bool satellites_inject = pattern == Pattern::four_inject_one_produce;
    const WellKind centre_kind = satellites_inject ? WellKind::producer : WellKind::injector;
    const WellKind satellite_kind = satellites_inject ? WellKind::injector : WellKind::producer;
    const std::string satellite_prefix = satellites_inject ? "i" : "p";

    std::vector<WellSpec> wells;
    wells.push_back(make(satellites_inject ? "p1" : "i1", centre_kind, l.center_i, l.center_j));
    for (int s = 0; s < 4; ++s)
        wells.push_back(make(satellite_prefix + std::to_string(s + 1), satellite_kind, l.center_i + di[s],
                             l.center_j + dj[s]));
    return wells;
}

namespace {

using WellKey = std::tuple<int, int, WellKind>;

std::multiset<WellKey> well_keys(const std::vector<WellSpec>& wells)
{
    std::multiset<WellKey> keys;
    for (const auto& w : wells)
        keys.emplace(w.i, w.j, w.kind);
    return keys;
}

} // namespace

void ScenarioConfig::validate() const
{
    grid.validate();
    rock.validate();
    fluid.validate();
    timestep.validate();
    factors.validate();
    aquifer.validate();

    if (!(initial_pressure > 0.0))
        throw std::invalid_argument("init: pressure must be > 0");
    if (initial_temperature && temperature_gradient)
        throw std::invalid_argument("init: temperature and temperature_gradient are mutually exclusive");
    if (!initial_temperature && !temperature_gradient)
        throw std::invalid_argument("init: need temperature or temperature_gradient");
    const double top = grid.top_depth + 0.5 * grid.dz;
    const double bottom = grid.top_depth + (grid.nz - 0.5) * grid.dz;
    const double t_min = initial_temperature ? *initial_temperature : surface_temperature + *temperature_gradient * top;
    const double t_max = initial_temperature ? *initial_temperature
                                             : surface_temperature + *temperature_gradient * bottom;
    if (!(std::min(t_min, t_max) > 0.0 && std::max(t_min, t_max) < 150.0))
        throw std::invalid_argument("init: initial temperature outside (0, 150) C");

    if (wells.empty())
        throw std::invalid_argument("wells: at least one well is required");
    std::set<std::string> names;
    for (const auto& w : wells) {
        w.validate(grid, initial_pressure);
        if (!names.insert(w.name).second)
            throw std::invalid_argument("wells: duplicate well name '" + w.name + "'");
    }

    if (pattern == Pattern::direct) {
        for (const auto& w : wells)
            if (w.kind != WellKind::producer)
                throw std::invalid_argument("pattern: direct production admits producers only");
    }
    else if (pattern != Pattern::custom) {
        const auto expected = expand_pattern(pattern, spacing, grid, PatternWells{});
        if (well_keys(expected) != well_keys(wells))
            throw std::invalid_argument("pattern: wells do not match " + std::string(to_string(pattern))
                                        + " geometry at spacing " + std::to_string(spacing) + " m");
    }

    if (!(horizon_years > 0.0))
        throw std::invalid_argument("time: horizon must be > 0");
    if (!(report_interval_days > 0.0))
        throw std::invalid_argument("time: report interval must be > 0");
    if (!(solver.pressure_tolerance > 0.0) || !(solver.conduction_tolerance > 0.0) || solver.max_iterations < 1)
        throw std::invalid_argument("time: solver tolerances must be > 0");
    if (!(heat_datum > 0.0 && heat_datum < 150.0))
        throw std::invalid_argument("factors: heat datum outside (0, 150) C");
    if (aquifer.enabled && aquifer.attachment == AquiferAttachment::cells)
        for (std::size_t c : aquifer.cells)
            if (c >= grid.cell_count())
                throw std::invalid_argument("aquifer: attached cell outside grid");
}

ScenarioConfig builtin_scenario(Pattern pattern, double injection_pressure_mpa, std::vector<std::string>* warnings)
{
    ScenarioConfig c;
    c.initial_pressure = 7.0 * units::mpa;
    c.initial_temperature = 45.0;
    c.horizon_years = 50.0;
    c.pattern = pattern;
    c.spacing = 200.0;

    PatternWells tmpl;
    switch (pattern) {
    case Pattern::direct:
        c.name = "chang2_direct";
        c.grid = GridSpec{25, 25, 3, 20.0, 20.0, 2.0, 1200.0};
        c.report_interval_days = 10.0;
        tmpl.producer_bhp = 0.2 * units::mpa;
        tmpl.layer_top = 0;
        tmpl.layer_bottom = 2;
        break;
    case Pattern::four_inject_one_produce:
    case Pattern::one_inject_four_produce: {
        if (injection_pressure_mpa != 10.0 && injection_pressure_mpa != 15.0 && injection_pressure_mpa != 20.0
            && warnings)
            warnings->push_back("injection pressure " + std::to_string(injection_pressure_mpa)
                                + " MPa is outside the studied set {10, 15, 20}");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g", injection_pressure_mpa);
        c.name = std::string(pattern == Pattern::four_inject_one_produce ? "chang2_4i1p_" : "chang2_1i4p_") + buf
                 + "MPa";
        c.grid = GridSpec{25, 25, 10, 20.0, 20.0, 5.0, 1200.0};
        c.report_interval_days = 30.0;
        tmpl.injector_bhp = injection_pressure_mpa * units::mpa;
        tmpl.producer_bhp = 2.0 * units::mpa;
        tmpl.layer_top = 2;
        tmpl.layer_bottom = 9;
        break;
    }
    case Pattern::custom:
        throw std::invalid_argument("builtin_scenario: unknown pattern");
    }
    c.wells = expand_pattern(pattern, c.spacing, c.grid, tmpl);
    c.validate();
    return c;
}

} // namespace geoderelict
