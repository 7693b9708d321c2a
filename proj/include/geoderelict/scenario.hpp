/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/grid.hpp"
#include "geoderelict/metrics.hpp"
#include "geoderelict/props.hpp"
#include "geoderelict/units.hpp"
#include "geoderelict/wells.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoderelict {

enum class Pattern { direct, four_inject_one_produce, one_inject_four_produce, custom };

std::string_view to_string(Pattern p);
std::optional<Pattern> pattern_from_string(std::string_view s);

struct TimestepControl {
    double dt_init = 0.1 * units::day;   // s
    double dt_max = 10.0 * units::day;   // s
    double growth = 1.5;
    double cut = 0.5;
    double cfl_target = 0.9;

    void validate() const;
    bool operator==(const TimestepControl&) const = default;
};

struct SolverSettings {
    double pressure_tolerance = 1e-8;
    double conduction_tolerance = 1e-8;
    int max_iterations = 5000;

    bool operator==(const SolverSettings&) const = default;
};

enum class AquiferAttachment { bottom, edge, cells };

/// Fetkovich-style lumped aquifer: influx J*(p_aq - p_cell) shared evenly by
/// the attached cells, with p_aq depleted by material balance.
struct AquiferModel {
    bool enabled = false;
    double productivity = 0.0;              // m^3/(Pa s), whole aquifer
    double initial_pressure = 0.0;          // Pa
    double water_volume = 0.0;              // m^3
    std::optional<double> compressibility;  // 1/Pa; reservoir total when unset
    AquiferAttachment attachment = AquiferAttachment::bottom;
    std::vector<std::size_t> cells;         // used with AquiferAttachment::cells

    void validate() const;
    bool operator==(const AquiferModel&) const = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    GridSpec grid;
    RockModel rock;
    FluidModel fluid;

    double initial_pressure = 7.0 * units::mpa;     // Pa
    std::optional<double> initial_temperature;      // C, uniform
    std::optional<double> temperature_gradient;     // C/m, with surface_temperature
    double surface_temperature = 15.0;              // C

    std::vector<WellSpec> wells;
    Pattern pattern = Pattern::custom;
    double spacing = 200.0;                         // m

    AquiferModel aquifer;
    double horizon_years = 50.0;
    TimestepControl timestep;
    double report_interval_days = 30.0;
    SolverSettings solver;

    EmissionFactors factors;
    double heat_datum = 20.0;                       // C
    Accounting accounting = Accounting::horizon_average;
    bool gravity = false;

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Geometry of a five-well pattern around the grid centre.
struct PatternLayout {
    int center_i = 0;
    int center_j = 0;
    int offset_i = 0;
    int offset_j = 0;
    double actual_spacing = 0.0;   // m, after snapping to cell centres
    double snap_error = 0.0;       // |actual - requested|, m
};

PatternLayout pattern_layout(double spacing, const GridSpec& grid);

/// Well template applied to every well produced by expand_pattern.
struct PatternWells {
    double injector_bhp = 15.0 * units::mpa;
    double producer_bhp = 2.0 * units::mpa;
    int layer_top = 2;
    int layer_bottom = 9;
    double radius = 0.1;
    double injection_temperature = 20.0;
};

/// Centre well plus four diagonal satellites at `spacing` from the centre.
/// Four-injection: satellites i1..i4 inject into centre producer p1.
/// One-injection: centre injector i1 feeds satellites p1..p4.
std::vector<WellSpec> expand_pattern(Pattern pattern, double spacing, const GridSpec& grid, const PatternWells& tmpl);

/// The three field scenarios. Injection pressure (MPa) applies to the
/// injection patterns; values other than 10/15/20 add a warning.
ScenarioConfig builtin_scenario(Pattern pattern, double injection_pressure_mpa = 15.0,
                                std::vector<std::string>* warnings = nullptr);

} // namespace geoderelict
