/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace geoderelict {

namespace units {
inline constexpr double millidarcy = 9.869233e-16;  // m^2
inline constexpr double darcy = 9.869233e-13;       // m^2
inline constexpr double mpa = 1.0e6;                // Pa
inline constexpr double day = 86400.0;              // s
inline constexpr double year = 365.25 * day;        // s
inline constexpr double tonne_coal = 2.9307e10;     // J, standard coal equivalent
inline constexpr double kelvin_offset = 273.15;
inline constexpr double gravity = 9.80665;          // m/s^2
} // namespace units

enum class Dimension {
    dimensionless,
    length,
    permeability,
    pressure,
    temperature,
    temperature_gradient,
    inverse_pressure,
    inverse_temperature,
    density,
    specific_heat,
    volumetric_heat_capacity,
    thermal_conductivity,
    time,
    volume,
    flow_rate,
    productivity,
    energy,
    energy_per_mass,
    money_per_mass,
    mass_ratio,
    concentration,
};

std::string_view dimension_name(Dimension d);

/// value_in_base = value * factor + offset
struct UnitDef {
    Dimension dimension = Dimension::dimensionless;
    double factor = 1.0;
    double offset = 0.0;
};

/// Looks up a unit symbol ("mD", "MPa", "C", "m3/d", "tce", ...). Spaces are
/// ignored; an empty string is the dimensionless unit.
std::optional<UnitDef> find_unit(std::string_view symbol);

/// Canonical base-unit symbol for a dimension, used when rendering decks.
std::string_view base_unit(Dimension d);

/// Converts between two units of the same dimension. Throws
/// std::invalid_argument for unknown symbols or mismatched dimensions.
double convert_units(double value, std::string_view from, std::string_view to);

} // namespace geoderelict
