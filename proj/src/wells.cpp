/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/wells.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geoderelict {

std::string_view to_string(WellKind kind)
{
    return kind == WellKind::producer ? "producer" : "injector";
}

void WellSpec::validate(const GridSpec& grid, double initial_pressure) const
{
    const std::string where = "well '" + name + "': ";
    if (name.empty())
        throw std::invalid_argument("well: empty name");
    if (i < 0 || i >= grid.nx || j < 0 || j >= grid.ny)
        throw std::invalid_argument(where + "column outside grid");
    if (layer_top < 0 || layer_bottom >= grid.nz || layer_top > layer_bottom)
        throw std::invalid_argument(where + "perforated layers outside grid");
    if (!(radius > 0.0) || !(radius < 0.2 * std::min(grid.dx, grid.dy)))
        throw std::invalid_argument(where + "radius must lie in (0, 0.2*min(dx,dy))");
    if (!(bhp > 0.0))
        throw std::invalid_argument(where + "BHP must be > 0");
    if (kind == WellKind::producer && !(bhp < initial_pressure))
        throw std::invalid_argument(where + "producer BHP must be below initial reservoir pressure");
    if (kind == WellKind::injector && !(bhp > initial_pressure))
        throw std::invalid_argument(where + "injector BHP must exceed initial reservoir pressure");
    if (kind == WellKind::injector && !(inj_temperature > 0.0 && inj_temperature < 150.0))
        throw std::invalid_argument(where + "injection temperature outside (0, 150) C");
}

double equivalent_radius(double dx, double dy)
{
    return 0.14 * std::sqrt(dx * dx + dy * dy);
}

double well_index(double k, double dz, double r_e, double r_w)
{
    if (!(r_w > 0.0) || !(r_e > r_w))
        throw std::domain_error("well_index: equivalent radius must exceed wellbore radius");
    return 2.0 * std::numbers::pi * k * dz / std::log(r_e / r_w);
}

double perforation_flow(double well_index, double mu, double p_cell, double p_bhp_at_layer)
{
    if (!(mu > 0.0))
        throw std::invalid_argument("perforation_flow: viscosity must be > 0");
    return (well_index / mu) * (p_bhp_at_layer - p_cell);
}

double enthalpy_rate(double q, double rho, double cw, double T_upwind, double T_datum)
{
    return q * rho * cw * (T_upwind - T_datum);
}

std::vector<Perforation> perforations(const WellSpec& well, const Grid& grid, std::span<const double> permeability)
{
    const GridSpec& g = grid.spec();
    const double r_e = equivalent_radius(g.dx, g.dy);
    std::vector<Perforation> out;
    for (int k = well.layer_top; k <= well.layer_bottom; ++k) {
        const std::size_t c = grid.index(well.i, well.j, k);
        out.push_back(Perforation{c, grid.depth(c), well_index(permeability[c], g.dz, r_e, well.radius)});
    }
    return out;
}

} // namespace geoderelict
