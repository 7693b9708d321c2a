/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/units.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace geoderelict {

namespace {

struct UnitEntry {
    std::string_view symbol;
    UnitDef def;
};

using D = Dimension;

constexpr std::array unit_table{
    UnitEntry{"", {D::dimensionless, 1.0, 0.0}},
    UnitEntry{"fraction", {D::dimensionless, 1.0, 0.0}},
    UnitEntry{"%", {D::dimensionless, 0.01, 0.0}},

    UnitEntry{"m", {D::length, 1.0, 0.0}},
    UnitEntry{"km", {D::length, 1000.0, 0.0}},
    UnitEntry{"ft", {D::length, 0.3048, 0.0}},

    UnitEntry{"m2", {D::permeability, 1.0, 0.0}},
    UnitEntry{"m^2", {D::permeability, 1.0, 0.0}},
    UnitEntry{"mD", {D::permeability, units::millidarcy, 0.0}},
    UnitEntry{"md", {D::permeability, units::millidarcy, 0.0}},
    UnitEntry{"D", {D::permeability, units::darcy, 0.0}},
    UnitEntry{"um2", {D::permeability, 1e-12, 0.0}},

    UnitEntry{"Pa", {D::pressure, 1.0, 0.0}},
    UnitEntry{"kPa", {D::pressure, 1e3, 0.0}},
    UnitEntry{"MPa", {D::pressure, units::mpa, 0.0}},
    UnitEntry{"bar", {D::pressure, 1e5, 0.0}},
    UnitEntry{"psi", {D::pressure, 6894.757293168361, 0.0}},

    UnitEntry{"C", {D::temperature, 1.0, 0.0}},
    UnitEntry{"degC", {D::temperature, 1.0, 0.0}},
    UnitEntry{"K", {D::temperature, 1.0, -units::kelvin_offset}},

    UnitEntry{"C/m", {D::temperature_gradient, 1.0, 0.0}},
    UnitEntry{"C/100m", {D::temperature_gradient, 0.01, 0.0}},
    UnitEntry{"C/km", {D::temperature_gradient, 0.001, 0.0}},

    UnitEntry{"1/Pa", {D::inverse_pressure, 1.0, 0.0}},
    UnitEntry{"1/kPa", {D::inverse_pressure, 1e-3, 0.0}},
    UnitEntry{"1/MPa", {D::inverse_pressure, 1e-6, 0.0}},
    UnitEntry{"1/bar", {D::inverse_pressure, 1e-5, 0.0}},

    UnitEntry{"1/C", {D::inverse_temperature, 1.0, 0.0}},
    UnitEntry{"1/K", {D::inverse_temperature, 1.0, 0.0}},

    UnitEntry{"kg/m3", {D::density, 1.0, 0.0}},
    UnitEntry{"g/cm3", {D::density, 1000.0, 0.0}},

    UnitEntry{"J/kg/C", {D::specific_heat, 1.0, 0.0}},
    UnitEntry{"J/kg/K", {D::specific_heat, 1.0, 0.0}},
    UnitEntry{"kJ/kg/C", {D::specific_heat, 1000.0, 0.0}},

    UnitEntry{"J/m3/C", {D::volumetric_heat_capacity, 1.0, 0.0}},
    UnitEntry{"J/m3/K", {D::volumetric_heat_capacity, 1.0, 0.0}},
    UnitEntry{"MJ/m3/C", {D::volumetric_heat_capacity, 1e6, 0.0}},

    UnitEntry{"W/m/C", {D::thermal_conductivity, 1.0, 0.0}},
    UnitEntry{"W/m/K", {D::thermal_conductivity, 1.0, 0.0}},

    UnitEntry{"s", {D::time, 1.0, 0.0}},
    UnitEntry{"h", {D::time, 3600.0, 0.0}},
    UnitEntry{"d", {D::time, units::day, 0.0}},
    UnitEntry{"day", {D::time, units::day, 0.0}},
    UnitEntry{"days", {D::time, units::day, 0.0}},
    UnitEntry{"year", {D::time, units::year, 0.0}},
    UnitEntry{"years", {D::time, units::year, 0.0}},
    UnitEntry{"yr", {D::time, units::year, 0.0}},

    UnitEntry{"m3", {D::volume, 1.0, 0.0}},

    UnitEntry{"m3/s", {D::flow_rate, 1.0, 0.0}},
    UnitEntry{"m3/d", {D::flow_rate, 1.0 / units::day, 0.0}},

    UnitEntry{"m3/s/Pa", {D::productivity, 1.0, 0.0}},
    UnitEntry{"m3/d/MPa", {D::productivity, 1.0 / (units::day * units::mpa), 0.0}},
    UnitEntry{"m3/d/bar", {D::productivity, 1.0 / (units::day * 1e5), 0.0}},

    UnitEntry{"J", {D::energy, 1.0, 0.0}},
    UnitEntry{"GJ", {D::energy, 1e9, 0.0}},
    UnitEntry{"tce", {D::energy, units::tonne_coal, 0.0}},
    UnitEntry{"t-coal", {D::energy, units::tonne_coal, 0.0}},

    UnitEntry{"J/t", {D::energy_per_mass, 1.0, 0.0}},
    UnitEntry{"GJ/t", {D::energy_per_mass, 1e9, 0.0}},

    UnitEntry{"yuan/t", {D::money_per_mass, 1.0, 0.0}},

    UnitEntry{"t/t", {D::mass_ratio, 1.0, 0.0}},

    UnitEntry{"mg/L", {D::concentration, 1.0, 0.0}},
};

std::string strip_spaces(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (c != ' ' && c != '\t')
            out.push_back(c);
    return out;
}

} // namespace

std::string_view dimension_name(Dimension d)
{
    switch (d) {
    case D::dimensionless: return "dimensionless";
    case D::length: return "length";
    case D::permeability: return "permeability";
    case D::pressure: return "pressure";
    case D::temperature: return "temperature";
    case D::temperature_gradient: return "temperature gradient";
    case D::inverse_pressure: return "compressibility";
    case D::inverse_temperature: return "thermal expansivity";
    case D::density: return "density";
    case D::specific_heat: return "specific heat";
    case D::volumetric_heat_capacity: return "volumetric heat capacity";
    case D::thermal_conductivity: return "thermal conductivity";
    case D::time: return "time";
    case D::volume: return "volume";
    case D::flow_rate: return "flow rate";
    case D::productivity: return "productivity";
    case D::energy: return "energy";
    case D::energy_per_mass: return "energy per mass";
    case D::money_per_mass: return "price per mass";
    case D::mass_ratio: return "mass ratio";
    case D::concentration: return "concentration";
    }
    return "unknown";
}

std::optional<UnitDef> find_unit(std::string_view symbol)
{
    const std::string key = strip_spaces(symbol);
    for (const auto& e : unit_table)
        if (e.symbol == key)
            return e.def;
    return std::nullopt;
}

std::string_view base_unit(Dimension d)
{
    switch (d) {
    case D::dimensionless: return "";
    case D::length: return "m";
    case D::permeability: return "m2";
    case D::pressure: return "Pa";
    case D::temperature: return "C";
    case D::temperature_gradient: return "C/m";
    case D::inverse_pressure: return "1/Pa";
    case D::inverse_temperature: return "1/C";
    case D::density: return "kg/m3";
    case D::specific_heat: return "J/kg/C";
    case D::volumetric_heat_capacity: return "J/m3/C";
    case D::thermal_conductivity: return "W/m/C";
    case D::time: return "s";
    case D::volume: return "m3";
    case D::flow_rate: return "m3/s";
    case D::productivity: return "m3/s/Pa";
    case D::energy: return "J";
    case D::energy_per_mass: return "J/t";
    case D::money_per_mass: return "yuan/t";
    case D::mass_ratio: return "t/t";
    case D::concentration: return "mg/L";
    }
    return "";
}

namespace {

// 1e-6 is inexact; 1e6 is not.
double exact_divisor(double factor)
{
    if (factor >= 1.0)
        return 0.0;
    const double r = std::round(1.0 / factor);
    return 1.0 / r == factor ? r : 0.0;
}

double to_base(double value, double factor)
{
    const double r = exact_divisor(factor);
    return r > 0.0 ? value / r : value * factor;
}

double from_base(double value, double factor)
{
    const double r = exact_divisor(factor);
    return r > 0.0 ? value * r : value / factor;
}

} // namespace

double convert_units(double value, std::string_view from, std::string_view to)
{
    const auto f = find_unit(from);
    if (!f)
        throw std::invalid_argument("unknown unit '" + std::string(from) + "'");
    const auto t = find_unit(to);
    if (!t)
        throw std::invalid_argument("unknown unit '" + std::string(to) + "'");
    if (f->dimension != t->dimension)
        throw std::invalid_argument("cannot convert " + std::string(dimension_name(f->dimension)) + " ("
                                    + std::string(from) + ") to " + std::string(dimension_name(t->dimension)) + " ("
                                    + std::string(to) + ")");
    const double base = to_base(value, f->factor) + f->offset;
    return from_base(base - t->offset, t->factor);
}

} // namespace geoderelict
