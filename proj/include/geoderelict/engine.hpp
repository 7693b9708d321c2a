/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/grid.hpp"
#include "geoderelict/linalg.hpp"
#include "geoderelict/scenario.hpp"
#include "geoderelict/timeseries.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoderelict {

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WellModel {
    WellSpec spec;
    std::vector<Perforation> perfs;
    double reference_depth = 0.0;   // depth at which the BHP control applies
};

/// Everything derived once from a scenario: discretisation, property
/// fields, well couplings and the shared sparsity pattern.
struct Model {
    ScenarioConfig config;
    Grid grid;
    std::vector<double> permeability{};
    std::vector<double> pore_volume{};          // m^3 at initial pressure
    std::vector<double> initial_pressure{};     // Pa
    std::vector<double> initial_temperature{};  // C
    double compressibility = 0.0;             // total, 1/Pa
    double rho_w = 0.0;                       // kg/m^3, used for heat and gravity
    double fluid_heat = 0.0;                  // rho_w*cw, J/(m^3 C)
    std::vector<double> rock_heat{};            // J/C per cell, grains only
    std::vector<double> conductance{};          // W/C per face
    std::vector<WellModel> wells{};

    std::vector<std::size_t> aquifer_cells{};
    std::vector<double> aquifer_temperature{};
    double aquifer_compressibility = 0.0;

    // 7-point CSR layout shared by the pressure and conduction systems.
    SparseMatrix stencil{};
    std::vector<std::size_t> diagonal_slot{};
    std::vector<std::size_t> face_slot_ab{};
    std::vector<std::size_t> face_slot_ba{};
};

Model build_model(const ScenarioConfig& config);

struct WellTotals {
    double produced_volume = 0.0;  // m^3
    double injected_volume = 0.0;  // m^3
    double heat_J = 0.0;           // recovered relative to the datum
    double produced_volume_temp = 0.0;   // m^3 C, for flow-weighted temperature
};

struct SimState {
    double time = 0.0;                 // s
    std::vector<double> pressure;      // Pa
    std::vector<double> temperature;   // C
    std::vector<WellTotals> wells;
    std::vector<WellTotals> interval;  // since the last report point
    double aquifer_pressure = 0.0;     // Pa
    double aquifer_influx = 0.0;       // m^3, cumulative

    // Boundary budgets since t = 0 (wells plus aquifer).
    double net_volume_in = 0.0;        // m^3
    double net_energy_in = 0.0;        // J, absolute-Celsius enthalpy
    double gross_volume_in = 0.0;
    double gross_energy_in = 0.0;
};

SimState initial_state(const Model& model);

/// Fluid content pv*(1 + c_t*(p - p_init)) per cell, m^3.
double fluid_content(const Model& model, std::size_t cell, double p);
double stored_fluid(const Model& model, const SimState& state);
double stored_energy(const Model& model, const SimState& state);
double mean_pressure(const Model& model, const SimState& state);

/// Result of one Fetkovich aquifer step with boundary pressures held fixed.
struct AquiferStep {
    std::vector<double> influx;        // m^3/s per attached cell, + into reservoir
    double productivity = 0.0;         // effective m^3/(Pa s) per attached cell
    double pressure = 0.0;             // aquifer pressure after the step
};

/// Effective per-cell productivity over dt from the exponential solution of
/// the Fetkovich balance, for `ncells` equally sharing total productivity.
double aquifer_effective_productivity(double productivity, double compressibility, double water_volume,
                                      std::size_t ncells, double dt);

AquiferStep aquifer_influx(const AquiferModel& aquifer, double compressibility, double aquifer_pressure,
                           std::span<const double> boundary_pressures, double dt);

struct PressureSystem {
    SparseMatrix matrix;
    std::vector<double> rhs;
    std::vector<double> face_mobility;                 // T_f/mu_f, m^3/(Pa s)
    std::vector<std::vector<double>> perf_mobility;    // WI/mu per well perforation
    std::vector<std::vector<double>> perf_bhp;         // Pa at each perforation depth
    double aquifer_productivity = 0.0;                 // per attached cell
};

/// Face mobility with viscosity taken at the upwind temperature of `state`.
std::vector<double> face_mobilities(const Model& model, const SimState& state);

/// Backward-Euler pressure system for p^{n+1}.
PressureSystem assemble_pressure(const Model& model, const SimState& state, double dt);

/// Per-face volumetric flux a -> b (m^3/s) for the given pressure field.
std::vector<double> darcy_fluxes(const Model& model, std::span<const double> pressure,
                                 std::span<const double> face_mobility);
std::vector<double> darcy_fluxes(const Model& model, const SimState& state);

/// Perforation flow rates after a pressure solve, m^3/s, + into reservoir.
std::vector<std::vector<double>> perforation_rates(const Model& model, const PressureSystem& sys,
                                                   std::span<const double> pressure);

struct TransportInput {
    std::span<const double> pressure_old;
    std::span<const double> pressure_new;
    std::span<const double> face_flux;
    const std::vector<std::vector<double>>* perf_rates = nullptr;
    std::span<const double> aquifer_rates;    // per attached cell
};

struct TransportReport {
    int substeps = 0;
    double max_cfl = 0.0;                     // before sub-stepping
    std::vector<double> well_heat;            // J recovered per well
    std::vector<double> well_produced_vt;     // m^3 C leaving through each well
    double energy_in = 0.0;                   // J, absolute-Celsius enthalpy, net
    double gross_energy_in = 0.0;
    SolveReport conduction;
};

/// Explicit upwind advection, sub-stepped to the CFL target, followed by
/// backward-Euler conduction. Throws SimulationError when the advection
/// would need more than `max_substeps` substeps.
TransportReport advance_temperature(const Model& model, std::span<double> temperature, const TransportInput& in,
                                    double dt, int max_substeps = 20000);

/// Backward-Euler conduction on an arbitrary grid. Cells flagged in `fixed`
/// keep their temperature (Dirichlet). `heat_capacity` is J/C per cell.
SolveReport conduction_solve(const Grid& grid, std::span<const double> conductance,
                             std::span<const double> heat_capacity, std::span<double> temperature, double dt,
                             std::span<const unsigned char> fixed, double tolerance, int max_iterations);

struct StepResult {
    double dt = 0.0;               // time actually advanced
    int cuts = 0;
    BalanceReport balance;         // this step
    SolveReport pressure_solve;
    TransportReport transport;
};

/// Advances one step of at most `dt`, cutting by the configured factor on
/// solver or stability failure. Throws SimulationError after ten cuts.
StepResult step(const Model& model, SimState& state, double dt);

/// Runs the scenario to its horizon and samples every report interval.
TimeSeries run(const ScenarioConfig& config);

} // namespace geoderelict
