/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/props.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace geoderelict {

void FluidModel::validate() const
{
    if (!(rho_ref > 0.0))
        throw std::invalid_argument("fluid: reference density must be > 0");
    if (!(p_ref > 0.0))
        throw std::invalid_argument("fluid: reference pressure must be > 0");
    if (!(c_f >= 0.0))
        throw std::invalid_argument("fluid: compressibility must be >= 0");
    if (!(beta >= 0.0))
        throw std::invalid_argument("fluid: thermal expansivity must be >= 0");
    if (!(cw > 0.0))
        throw std::invalid_argument("fluid: specific heat must be > 0");
    if (!(salinity >= 0.0))
        throw std::invalid_argument("fluid: salinity must be >= 0");
}

void RockModel::validate() const
{
    if (!(phi > 0.0 && phi < 1.0))
        throw std::invalid_argument("rock: porosity must lie in (0,1)");
    if (!(k > 0.0))
        throw std::invalid_argument("rock: permeability must be > 0");
    if (!(c_r >= 0.0))
        throw std::invalid_argument("rock: compressibility must be >= 0");
    if (!(rock_vol_heat > 0.0))
        throw std::invalid_argument("rock: grain heat capacity must be > 0");
    if (!(lambda_bulk >= 0.0))
        throw std::invalid_argument("rock: thermal conductivity must be >= 0");
}

double water_density(const FluidModel& f, double p, double T)
{
    if (!(p > 0.0))
        throw std::invalid_argument("water_density: pressure must be > 0");
    return f.rho_ref * std::exp(f.c_f * (p - f.p_ref) - f.beta * (T - f.T_ref));
}

double water_viscosity(double T)
{
    if (!(T > 0.0 && T < 150.0))
        throw std::domain_error("water_viscosity: temperature " + std::to_string(T)
                                + " C outside correlation range (0, 150)");
    return 2.414e-5 * std::pow(10.0, 247.8 / (T + units::kelvin_offset - 140.0));
}

double total_compressibility(const FluidModel& f, const RockModel& r)
{
    return r.c_r + f.c_f;
}

double bulk_heat_capacity(const FluidModel& f, const RockModel& r, double rho_w)
{
    return r.phi * rho_w * f.cw + (1.0 - r.phi) * r.rock_vol_heat;
}

} // namespace geoderelict
