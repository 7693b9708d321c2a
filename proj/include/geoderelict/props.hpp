/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/units.hpp"

namespace geoderelict {

/// Slightly compressible water with linear thermal expansion.
struct FluidModel {
    double rho_ref = 1000.0;         // kg/m^3 at (p_ref, T_ref)
    double p_ref = 0.1 * units::mpa; // Pa
    double T_ref = 20.0;             // C
    double c_f = 4.5e-10;            // 1/Pa
    double beta = 4.0e-4;            // 1/C
    double cw = 4186.0;              // J/(kg C)
    double salinity = 28870.0;       // mg/L, recorded only

    void validate() const;
    bool operator==(const FluidModel&) const = default;
};

struct RockModel {
    double phi = 0.18;
    double k = 20.0 * units::millidarcy;    // m^2
    double c_r = 0.27e-4 / units::mpa;      // 1/Pa
    double rock_vol_heat = 2.35e6;          // J/(m^3 C), grains
    double lambda_bulk = 2.5;               // W/(m C)

    void validate() const;
    bool operator==(const RockModel&) const = default;
};

double water_density(const FluidModel& f, double p, double T);

/// Vogel-type correlation, valid for 0 < T < 150 C.
double water_viscosity(double T);

double total_compressibility(const FluidModel& f, const RockModel& r);

/// Local-thermal-equilibrium mixture phi*rho_w*cw + (1-phi)*rock_vol_heat.
double bulk_heat_capacity(const FluidModel& f, const RockModel& r, double rho_w);

} // namespace geoderelict
