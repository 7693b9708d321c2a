/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/grid.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geoderelict {

enum class WellKind { producer, injector };

std::string_view to_string(WellKind kind);

/// Vertical well completed in layers [layer_top, layer_bottom] (0-based,
/// inclusive) of areal column (i, j), controlled at bottom-hole pressure.
struct WellSpec {
    std::string name;
    WellKind kind = WellKind::producer;
    int i = 0;
    int j = 0;
    int layer_top = 0;
    int layer_bottom = 0;
    double radius = 0.1;             // m
    double bhp = 0.0;                // Pa
    double inj_temperature = 20.0;   // C, injectors only

    /// Throws std::invalid_argument when the well does not fit the grid or
    /// its BHP sits on the wrong side of the initial reservoir pressure.
    void validate(const GridSpec& grid, double initial_pressure) const;

    bool operator==(const WellSpec&) const = default;
};

struct Perforation {
    std::size_t cell = 0;
    double depth = 0.0;        // m
    double well_index = 0.0;   // m^3
};

/// Peaceman equivalent radius for an isotropic cell.
double equivalent_radius(double dx, double dy);

/// 2*pi*k*dz / ln(r_e/r_w). Throws std::domain_error when r_e <= r_w.
double well_index(double k, double dz, double r_e, double r_w);

/// Volumetric rate into the reservoir (m^3/s); positive means injection.
double perforation_flow(double well_index, double mu, double p_cell, double p_bhp_at_layer);

/// Enthalpy carried by a stream relative to a datum temperature (W).
double enthalpy_rate(double q, double rho, double cw, double T_upwind, double T_datum);

/// Perforations of `well`, top to bottom, with Peaceman indices computed from
/// per-cell permeability.
std::vector<Perforation> perforations(const WellSpec& well, const Grid& grid, std::span<const double> permeability);

} // namespace geoderelict
