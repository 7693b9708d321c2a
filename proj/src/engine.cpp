/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/engine.hpp"

#include "geoderelict/props.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace geoderelict {

namespace {

struct Stencil {
    SparseMatrix matrix;
    std::vector<std::size_t> diagonal_slot;
    std::vector<std::size_t> face_slot_ab;
    std::vector<std::size_t> face_slot_ba;
};

Stencil build_stencil(const Grid& grid)
{
    Stencil s;
    const std::size_t n = grid.size();
    s.matrix.n = n;
    s.matrix.row_offsets.assign(n + 1, 0);
    s.diagonal_slot.resize(n);
    s.face_slot_ab.resize(grid.faces().size());
    s.face_slot_ba.resize(grid.faces().size());
    for (std::size_t row = 0; row < n; ++row) {
        bool diagonal_done = false;
        for (const Neighbor& nb : grid.neighbors(row)) {
            if (!diagonal_done && nb.cell > row) {
                s.diagonal_slot[row] = s.matrix.column_indices.size();
                s.matrix.column_indices.push_back(row);
                diagonal_done = true;
            }
            const std::size_t slot = s.matrix.column_indices.size();
            if (grid.faces()[nb.face].a == row)
                s.face_slot_ab[nb.face] = slot;
            else
                s.face_slot_ba[nb.face] = slot;
            s.matrix.column_indices.push_back(nb.cell);
        }
        if (!diagonal_done) {
            s.diagonal_slot[row] = s.matrix.column_indices.size();
            s.matrix.column_indices.push_back(row);
        }
        s.matrix.row_offsets[row + 1] = s.matrix.column_indices.size();
    }
    s.matrix.values.assign(s.matrix.column_indices.size(), 0.0);
    return s;
}

double gravity_head(const Model& m)
{
    return m.config.gravity ? m.rho_w * units::gravity : 0.0;
}

double heat_capacity(const Model& m, std::size_t cell, double content)
{
    return m.rock_heat[cell] + m.fluid_heat * content;
}

std::string format_time(double seconds)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g d", seconds / units::day);
    return buf;
}

} // namespace

Model build_model(const ScenarioConfig& config)
{
    config.validate();
    const GridSpec& gs = config.grid;
    const std::size_t n = gs.cell_count();
    std::vector<double> perm(n, config.rock.k);

    Model m{.config = config, .grid = Grid(gs, perm)};
    m.permeability = std::move(perm);
    m.pore_volume = pore_volume(m.grid, std::vector<double>(n, config.rock.phi));

    m.initial_temperature.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        m.initial_temperature[c] = config.initial_temperature
                                       ? *config.initial_temperature
                                       : config.surface_temperature + *config.temperature_gradient * m.grid.depth(c);
    const double mean_t = std::accumulate(m.initial_temperature.begin(), m.initial_temperature.end(), 0.0)
                          / static_cast<double>(n);

    m.compressibility = total_compressibility(config.fluid, config.rock);
    m.rho_w = water_density(config.fluid, config.initial_pressure, mean_t);
    m.fluid_heat = m.rho_w * config.fluid.cw;

    // Hydrostatic equilibrium about mid-reservoir when gravity is on.
    const double datum = gs.top_depth + 0.5 * gs.nz * gs.dz;
    m.initial_pressure.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        m.initial_pressure[c] = config.initial_pressure + gravity_head(m) * (m.grid.depth(c) - datum);

    m.rock_heat.resize(n);
    for (std::size_t c = 0; c < n; ++c)
        m.rock_heat[c] = (1.0 - config.rock.phi) * config.rock.rock_vol_heat * m.grid.bulk_volume(c);
    m.conductance.reserve(m.grid.faces().size());
    for (const Face& f : m.grid.faces())
        m.conductance.push_back(config.rock.lambda_bulk * f.area / f.distance);

    for (const WellSpec& w : config.wells) {
        WellModel wm{w, perforations(w, m.grid, m.permeability), 0.0};
        wm.reference_depth = wm.perfs.front().depth;
        m.wells.push_back(std::move(wm));
    }

    if (config.aquifer.enabled) {
        switch (config.aquifer.attachment) {
        case AquiferAttachment::bottom:
            for (int j = 0; j < gs.ny; ++j)
                for (int i = 0; i < gs.nx; ++i)
                    m.aquifer_cells.push_back(m.grid.index(i, j, gs.nz - 1));
            break;
        case AquiferAttachment::edge:
            for (std::size_t c = 0; c < n; ++c) {
                const auto [i, j, k] = m.grid.ijk(c);
                if (i == 0 || j == 0 || i == gs.nx - 1 || j == gs.ny - 1)
                    m.aquifer_cells.push_back(c);
            }
            break;
        case AquiferAttachment::cells:
            m.aquifer_cells = config.aquifer.cells;
            std::sort(m.aquifer_cells.begin(), m.aquifer_cells.end());
            m.aquifer_cells.erase(std::unique(m.aquifer_cells.begin(), m.aquifer_cells.end()), m.aquifer_cells.end());
            break;
        }
        for (std::size_t c : m.aquifer_cells)
            m.aquifer_temperature.push_back(m.initial_temperature[c]);
        m.aquifer_compressibility = config.aquifer.compressibility.value_or(m.compressibility);
    }

    Stencil s = build_stencil(m.grid);
    m.stencil = std::move(s.matrix);
    m.diagonal_slot = std::move(s.diagonal_slot);
    m.face_slot_ab = std::move(s.face_slot_ab);
    m.face_slot_ba = std::move(s.face_slot_ba);
    return m;
}

SimState initial_state(const Model& model)
{
    SimState s;
    s.pressure = model.initial_pressure;
    s.temperature = model.initial_temperature;
    s.wells.assign(model.wells.size(), WellTotals{});
    s.interval = s.wells;
    s.aquifer_pressure = model.config.aquifer.enabled ? model.config.aquifer.initial_pressure : 0.0;
    return s;
}

double fluid_content(const Model& model, std::size_t cell, double p)
{
    return model.pore_volume[cell] * (1.0 + model.compressibility * (p - model.initial_pressure[cell]));
}

double stored_fluid(const Model& model, const SimState& state)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < model.grid.size(); ++c)
        sum += fluid_content(model, c, state.pressure[c]);
    return sum;
}

double stored_energy(const Model& model, const SimState& state)
{
    double sum = 0.0;
    for (std::size_t c = 0; c < model.grid.size(); ++c)
        sum += heat_capacity(model, c, fluid_content(model, c, state.pressure[c])) * state.temperature[c];
    return sum;
}

double mean_pressure(const Model& model, const SimState& state)
{
    double pv = 0.0;
    double sum = 0.0;
    for (std::size_t c = 0; c < model.grid.size(); ++c) {
        pv += model.pore_volume[c];
        sum += model.pore_volume[c] * state.pressure[c];
    }
    return sum / pv;
}

double aquifer_effective_productivity(double productivity, double compressibility, double water_volume,
                                      std::size_t ncells, double dt)
{
    if (ncells == 0 || !(productivity > 0.0))
        return 0.0;
    const double capacity = compressibility * water_volume;
    const double total = -capacity * std::expm1(-productivity * dt / capacity) / dt;
    return total / static_cast<double>(ncells);
}

AquiferStep aquifer_influx(const AquiferModel& aquifer, double compressibility, double aquifer_pressure,
                           std::span<const double> boundary_pressures, double dt)
{
    AquiferStep out;
    out.pressure = aquifer_pressure;
    out.influx.assign(boundary_pressures.size(), 0.0);
    if (!aquifer.enabled || boundary_pressures.empty())
        return out;
    const double c = aquifer.compressibility.value_or(compressibility);
    out.productivity = aquifer_effective_productivity(aquifer.productivity, c, aquifer.water_volume,
                                                      boundary_pressures.size(), dt);
    double total = 0.0;
    for (std::size_t i = 0; i < boundary_pressures.size(); ++i) {
        out.influx[i] = out.productivity * (aquifer_pressure - boundary_pressures[i]);
        total += out.influx[i];
    }
    out.pressure = aquifer_pressure - total * dt / (c * aquifer.water_volume);
    return out;
}

std::vector<double> face_mobilities(const Model& model, const SimState& state)
{
    const auto& faces = model.grid.faces();
    const double g = gravity_head(model);
    std::vector<double> mob(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        const double dphi = state.pressure[face.a] - state.pressure[face.b]
                            - g * (model.grid.depth(face.a) - model.grid.depth(face.b));
        const double t_up = dphi >= 0.0 ? state.temperature[face.a] : state.temperature[face.b];
        mob[f] = face.trans / water_viscosity(t_up);
    }
    return mob;
}

PressureSystem assemble_pressure(const Model& model, const SimState& state, double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("assemble_pressure: dt must be > 0");
    const std::size_t n = model.grid.size();
    const double g = gravity_head(model);

    PressureSystem sys;
    sys.matrix = model.stencil;
    std::fill(sys.matrix.values.begin(), sys.matrix.values.end(), 0.0);
    sys.rhs.assign(n, 0.0);
    auto& v = sys.matrix.values;

    for (std::size_t c = 0; c < n; ++c) {
        const double acc = model.pore_volume[c] * model.compressibility / dt;
        v[model.diagonal_slot[c]] += acc;
        sys.rhs[c] += acc * state.pressure[c];
    }

    sys.face_mobility = face_mobilities(model, state);
    const auto& faces = model.grid.faces();
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        const double mob = sys.face_mobility[f];
        v[model.diagonal_slot[face.a]] += mob;
        v[model.diagonal_slot[face.b]] += mob;
        v[model.face_slot_ab[f]] -= mob;
        v[model.face_slot_ba[f]] -= mob;
        const double head = mob * g * (model.grid.depth(face.b) - model.grid.depth(face.a));
        sys.rhs[face.a] -= head;
        sys.rhs[face.b] += head;
    }

    sys.perf_mobility.resize(model.wells.size());
    sys.perf_bhp.resize(model.wells.size());
    for (std::size_t w = 0; w < model.wells.size(); ++w) {
        const WellModel& well = model.wells[w];
        for (const Perforation& perf : well.perfs) {
            const double t = well.spec.kind == WellKind::injector ? well.spec.inj_temperature
                                                                  : state.temperature[perf.cell];
            const double mob = perf.well_index / water_viscosity(t);
            const double bhp = well.spec.bhp + g * (perf.depth - well.reference_depth);
            sys.perf_mobility[w].push_back(mob);
            sys.perf_bhp[w].push_back(bhp);
            v[model.diagonal_slot[perf.cell]] += mob;
            sys.rhs[perf.cell] += mob * bhp;
        }
    }

    if (model.config.aquifer.enabled) {
        const AquiferModel& aq = model.config.aquifer;
        sys.aquifer_productivity = aquifer_effective_productivity(aq.productivity, model.aquifer_compressibility,
                                                                  aq.water_volume, model.aquifer_cells.size(), dt);
        for (std::size_t c : model.aquifer_cells) {
            v[model.diagonal_slot[c]] += sys.aquifer_productivity;
            sys.rhs[c] += sys.aquifer_productivity * state.aquifer_pressure;
        }
    }
    return sys;
}

std::vector<double> darcy_fluxes(const Model& model, std::span<const double> pressure,
                                 std::span<const double> face_mobility)
{
    const auto& faces = model.grid.faces();
    const double g = gravity_head(model);
    std::vector<double> flux(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        flux[f] = face_mobility[f]
                  * (pressure[face.a] - pressure[face.b] - g * (model.grid.depth(face.a) - model.grid.depth(face.b)));
    }
    return flux;
}

std::vector<double> darcy_fluxes(const Model& model, const SimState& state)
{
    return darcy_fluxes(model, state.pressure, face_mobilities(model, state));
}

std::vector<std::vector<double>> perforation_rates(const Model& model, const PressureSystem& sys,
                                                   std::span<const double> pressure)
{
    std::vector<std::vector<double>> q(model.wells.size());
    for (std::size_t w = 0; w < model.wells.size(); ++w)
        for (std::size_t k = 0; k < model.wells[w].perfs.size(); ++k)
            q[w].push_back(perforation_flow(sys.perf_mobility[w][k], 1.0, pressure[model.wells[w].perfs[k].cell],
                                            sys.perf_bhp[w][k]));
    return q;
}

SolveReport conduction_solve(const Grid& grid, std::span<const double> conductance,
                             std::span<const double> heat_capacity, std::span<double> temperature, double dt,
                             std::span<const unsigned char> fixed, double tolerance, int max_iterations)
{
    const std::size_t n = grid.size();
    const auto& faces = grid.faces();
    if (conductance.size() != faces.size() || heat_capacity.size() != n || temperature.size() != n)
        throw std::invalid_argument("conduction_solve: size mismatch");
    auto is_fixed = [&](std::size_t c) { return !fixed.empty() && fixed[c] != 0; };

    Stencil s = build_stencil(grid);
    auto& v = s.matrix.values;
    std::vector<double> rhs(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (is_fixed(c)) {
            v[s.diagonal_slot[c]] = 1.0;
            rhs[c] = temperature[c];
        }
        else {
            v[s.diagonal_slot[c]] = heat_capacity[c] / dt;
            rhs[c] = heat_capacity[c] / dt * temperature[c];
        }
    }
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const std::size_t a = faces[f].a;
        const std::size_t b = faces[f].b;
        const double g = conductance[f];
        if (is_fixed(a) && is_fixed(b))
            continue;
        if (is_fixed(a)) {
            v[s.diagonal_slot[b]] += g;
            rhs[b] += g * temperature[a];
        }
        else if (is_fixed(b)) {
            v[s.diagonal_slot[a]] += g;
            rhs[a] += g * temperature[b];
        }
        else {
            v[s.diagonal_slot[a]] += g;
            v[s.diagonal_slot[b]] += g;
            v[s.face_slot_ab[f]] -= g;
            v[s.face_slot_ba[f]] -= g;
        }
    }

    CgOptions opt;
    opt.tolerance = tolerance;
    opt.max_iterations = max_iterations;
    return cg_solve(s.matrix, rhs, temperature, opt);
}

TransportReport advance_temperature(const Model& model, std::span<double> temperature, const TransportInput& in,
                                    double dt, int max_substeps)
{
    const std::size_t n = model.grid.size();
    const auto& faces = model.grid.faces();
    const double fh = model.fluid_heat;
    const double datum = model.config.heat_datum;

    TransportReport rep;
    rep.well_heat.assign(model.wells.size(), 0.0);
    rep.well_produced_vt.assign(model.wells.size(), 0.0);

    std::vector<double> w_old(n);
    std::vector<double> w_new(n);
    std::vector<double> outflow(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        w_old[c] = fluid_content(model, c, in.pressure_old[c]);
        w_new[c] = fluid_content(model, c, in.pressure_new[c]);
    }
    for (std::size_t f = 0; f < faces.size(); ++f)
        outflow[in.face_flux[f] > 0.0 ? faces[f].a : faces[f].b] += std::abs(in.face_flux[f]);
    if (in.perf_rates)
        for (std::size_t w = 0; w < model.wells.size(); ++w)
            for (std::size_t k = 0; k < model.wells[w].perfs.size(); ++k)
                outflow[model.wells[w].perfs[k].cell] += std::max(-(*in.perf_rates)[w][k], 0.0);
    for (std::size_t a = 0; a < in.aquifer_rates.size(); ++a)
        outflow[model.aquifer_cells[a]] += std::max(-in.aquifer_rates[a], 0.0);

    for (std::size_t c = 0; c < n; ++c) {
        const double cap = heat_capacity(model, c, std::min(w_old[c], w_new[c]));
        rep.max_cfl = std::max(rep.max_cfl, outflow[c] * fh * dt / cap);
    }
    const double needed = std::ceil(rep.max_cfl / model.config.timestep.cfl_target);
    if (needed > max_substeps)
        throw SimulationError("advection needs " + std::to_string(static_cast<long long>(needed))
                              + " substeps (limit " + std::to_string(max_substeps) + ")");
    rep.substeps = std::max(1, static_cast<int>(needed));
    const double h = dt / rep.substeps;

    std::vector<double> energy(n);
    for (int s = 0; s < rep.substeps; ++s) {
        const double w0 = static_cast<double>(s) / rep.substeps;
        const double w1 = static_cast<double>(s + 1) / rep.substeps;
        for (std::size_t c = 0; c < n; ++c)
            energy[c] = heat_capacity(model, c, w_old[c] + w0 * (w_new[c] - w_old[c])) * temperature[c];

        for (std::size_t f = 0; f < faces.size(); ++f) {
            const double q = in.face_flux[f];
            const double e = h * fh * q * (q > 0.0 ? temperature[faces[f].a] : temperature[faces[f].b]);
            energy[faces[f].a] -= e;
            energy[faces[f].b] += e;
        }
        if (in.perf_rates) {
            for (std::size_t w = 0; w < model.wells.size(); ++w) {
                const WellModel& well = model.wells[w];
                for (std::size_t k = 0; k < well.perfs.size(); ++k) {
                    const std::size_t c = well.perfs[k].cell;
                    const double q = (*in.perf_rates)[w][k];
                    const double t = q > 0.0 && well.spec.kind == WellKind::injector ? well.spec.inj_temperature
                                                                                      : temperature[c];
                    const double e = h * fh * q * t;
                    energy[c] += e;
                    rep.energy_in += e;
                    rep.gross_energy_in += std::max(e, 0.0);
                    rep.well_heat[w] -= h * fh * q * (t - datum);
                    if (q < 0.0)
                        rep.well_produced_vt[w] -= h * q * t;
                }
            }
        }
        for (std::size_t a = 0; a < in.aquifer_rates.size(); ++a) {
            const std::size_t c = model.aquifer_cells[a];
            const double q = in.aquifer_rates[a];
            const double e = h * fh * q * (q > 0.0 ? model.aquifer_temperature[a] : temperature[c]);
            energy[c] += e;
            rep.energy_in += e;
            rep.gross_energy_in += std::max(e, 0.0);
        }

        for (std::size_t c = 0; c < n; ++c)
            temperature[c] = energy[c] / heat_capacity(model, c, w_old[c] + w1 * (w_new[c] - w_old[c]));
    }

    if (model.config.rock.lambda_bulk > 0.0) {
        std::vector<double> cap(n);
        for (std::size_t c = 0; c < n; ++c)
            cap[c] = heat_capacity(model, c, w_new[c]);
        rep.conduction = conduction_solve(model.grid, model.conductance, cap, temperature, dt, {},
                                          model.config.solver.conduction_tolerance,
                                          model.config.solver.max_iterations);
    }
    else {
        rep.conduction.converged = true;
    }
    return rep;
}

namespace {

struct Attempt {
    SimState next;
    StepResult result;
};

// One step of exactly dt; throws SimulationError when the step must be cut.
Attempt attempt_step(const Model& model, const SimState& state, double dt)
{
    Attempt a;
    a.result.dt = dt;
    const std::size_t n = model.grid.size();

    const PressureSystem sys = assemble_pressure(model, state, dt);
    // Solve for the increment so the tolerance is relative to this step's change.
    std::vector<double> r = spmv(sys.matrix, state.pressure);
    for (std::size_t c = 0; c < n; ++c)
        r[c] = sys.rhs[c] - r[c];
    std::vector<double> dp(n, 0.0);
    double r_norm = 0.0;
    double scale = 0.0;
    const SparseMatrix& A = sys.matrix;
    for (std::size_t c = 0; c < n; ++c) {
        double row = std::abs(sys.rhs[c]);
        for (std::size_t k = A.row_offsets[c]; k < A.row_offsets[c + 1]; ++k)
            row += std::abs(A.values[k] * state.pressure[A.column_indices[k]]);
        r_norm += r[c] * r[c];
        scale += row * row;
    }
    CgOptions opt;
    opt.tolerance = model.config.solver.pressure_tolerance;
    opt.max_iterations = model.config.solver.max_iterations;
    // A residual at round-off level means p is already the solution.
    if (std::sqrt(r_norm) <= 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(scale))
        a.result.pressure_solve.converged = true;
    else
        a.result.pressure_solve = cg_solve(sys.matrix, r, dp, opt);
    if (!a.result.pressure_solve.converged)
        throw SimulationError("pressure solve did not converge");
    std::vector<double> p = state.pressure;
    for (std::size_t c = 0; c < n; ++c)
        p[c] += dp[c];
    for (std::size_t c = 0; c < n; ++c)
        if (!(p[c] > 0.0))
            throw SimulationError("non-positive pressure in cell " + std::to_string(c));

    const std::vector<double> flux = darcy_fluxes(model, p, sys.face_mobility);
    const auto perf_q = perforation_rates(model, sys, p);
    std::vector<double> aq_q(model.aquifer_cells.size());
    for (std::size_t i = 0; i < aq_q.size(); ++i)
        aq_q[i] = sys.aquifer_productivity * (state.aquifer_pressure - p[model.aquifer_cells[i]]);

    std::vector<double> t = state.temperature;
    TransportInput in{state.pressure, p, flux, &perf_q, aq_q};
    a.result.transport = advance_temperature(model, t, in, dt);
    if (!a.result.transport.conduction.converged)
        throw SimulationError("conduction solve did not converge");
    for (std::size_t c = 0; c < n; ++c)
        if (!(t[c] >= 0.0 && t[c] <= 150.0))
            throw SimulationError("temperature outside [0, 150] C in cell " + std::to_string(c));

    SimState& s = a.next;
    s = state;
    s.time = state.time + dt;
    s.pressure = std::move(p);
    s.temperature = std::move(t);

    double volume_in = 0.0;
    double gross_volume_in = 0.0;
    for (std::size_t w = 0; w < model.wells.size(); ++w) {
        for (double q : perf_q[w]) {
            volume_in += q * dt;
            gross_volume_in += std::max(q, 0.0) * dt;
            for (WellTotals* t : {&s.wells[w], &s.interval[w]}) {
                if (q > 0.0)
                    t->injected_volume += q * dt;
                else
                    t->produced_volume -= q * dt;
            }
        }
        for (WellTotals* t : {&s.wells[w], &s.interval[w]}) {
            t->heat_J += a.result.transport.well_heat[w];
            t->produced_volume_temp += a.result.transport.well_produced_vt[w];
        }
    }
    double aquifer_in = 0.0;
    for (double q : aq_q) {
        aquifer_in += q * dt;
        gross_volume_in += std::max(q, 0.0) * dt;
    }
    volume_in += aquifer_in;
    s.aquifer_influx += aquifer_in;
    if (model.config.aquifer.enabled)
        s.aquifer_pressure -= aquifer_in / (model.aquifer_compressibility * model.config.aquifer.water_volume);

    s.net_volume_in += volume_in;
    s.gross_volume_in += gross_volume_in;
    s.net_energy_in += a.result.transport.energy_in;
    s.gross_energy_in += a.result.transport.gross_energy_in;

    const double fluid_after = stored_fluid(model, s);
    const double fluid_change = fluid_after - stored_fluid(model, state);
    a.result.balance.mass_error_rel = std::abs(fluid_change - volume_in) / std::max(fluid_after, gross_volume_in);
    const double energy_after = stored_energy(model, s);
    const double energy_change = energy_after - stored_energy(model, state);
    a.result.balance.energy_error_rel = std::abs(energy_change - a.result.transport.energy_in)
                                        / std::max(std::abs(energy_after), a.result.transport.gross_energy_in);
    return a;
}

} // namespace

StepResult step(const Model& model, SimState& state, double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be > 0");
    std::string last_error;
    for (int cuts = 0; cuts <= 10; ++cuts) {
        try {
            Attempt a = attempt_step(model, state, dt);
            a.result.cuts = cuts;
            state = std::move(a.next);
            return a.result;
        }
        catch (const SimulationError& e) {
            last_error = e.what();
        }
        catch (const std::domain_error& e) {
            last_error = e.what();
        }
        if (cuts < 10)
            dt *= model.config.timestep.cut;
    }
    throw SimulationError("step at t = " + format_time(state.time) + " failed after 10 cuts (dt = "
                          + format_time(dt) + "): " + last_error);
}

namespace {

BalanceReport cumulative_balance(const Model& model, const SimState& initial, const SimState& state)
{
    BalanceReport b;
    const double fluid = stored_fluid(model, state);
    b.mass_error_rel = std::abs(fluid - stored_fluid(model, initial) - state.net_volume_in)
                       / std::max(fluid, state.gross_volume_in);
    const double energy = stored_energy(model, state);
    b.energy_error_rel = std::abs(energy - stored_energy(model, initial) - state.net_energy_in)
                         / std::max(std::abs(energy), state.gross_energy_in);
    return b;
}

ReportPoint sample(const Model& model, const SimState& now, double t_prev)
{
    ReportPoint pt;
    pt.time_days = now.time / units::day;
    pt.mean_pressure_MPa = mean_pressure(model, now) / units::mpa;
    const double span_s = now.time - t_prev;
    const double span_d = span_s / units::day;
    for (std::size_t w = 0; w < model.wells.size(); ++w) {
        const WellTotals& in = now.interval[w];
        const WellModel& well = model.wells[w];
        WellSample ws;
        ws.water_rate_m3_per_day = in.produced_volume / span_d;
        ws.injection_rate_m3_per_day = in.injected_volume / span_d;
        if (well.spec.kind == WellKind::injector)
            ws.produced_temp_C = well.spec.inj_temperature;
        else if (in.produced_volume > 0.0)
            ws.produced_temp_C = in.produced_volume_temp / in.produced_volume;
        else {
            double sum = 0.0;
            for (const Perforation& perf : well.perfs)
                sum += now.temperature[perf.cell];
            ws.produced_temp_C = sum / static_cast<double>(well.perfs.size());
        }
        ws.heat_rate_W = in.heat_J / span_s;
        ws.cum_heat_J = now.wells[w].heat_J;
        pt.wells.push_back(ws);
    }
    return pt;
}

} // namespace

TimeSeries run(const ScenarioConfig& config)
{
    TimeSeries ts;
    for (const WellSpec& w : config.wells) {
        ts.well_names.push_back(w.name);
        ts.well_kinds.push_back(w.kind);
    }
    ts.horizon_years = config.horizon_years;
    if (config.horizon_years == 0.0) {
        ScenarioConfig probe = config;
        probe.horizon_years = 1.0;
        probe.validate();
        return ts;
    }

    const Model model = build_model(config);
    const SimState initial = initial_state(model);
    SimState state = initial;

    const double horizon = config.horizon_years * units::year;
    const double interval = config.report_interval_days * units::day;
    std::vector<double> report_times;
    for (double k = 1.0; k * interval < horizon * (1.0 - 1e-12); k += 1.0)
        report_times.push_back(k * interval);
    report_times.push_back(horizon);

    const TimestepControl& tc = config.timestep;
    double dt = tc.dt_init;
    double last_report = 0.0;
    for (double target : report_times) {
        while (state.time < target) {
            const double remaining = target - state.time;
            const bool lands = remaining <= dt * (1.0 + 1e-9);
            const double dt_try = lands ? remaining : dt;
            const StepResult r = step(model, state, dt_try);
            ts.steps += 1;
            ts.cuts += static_cast<std::size_t>(r.cuts);
            ts.max_step_mass_error = std::max(ts.max_step_mass_error, r.balance.mass_error_rel);
            ts.max_step_energy_error = std::max(ts.max_step_energy_error, r.balance.energy_error_rel);
            if (r.cuts > 0)
                dt = r.dt;
            else if (!lands)
                dt = std::min(dt * tc.growth, tc.dt_max);
            if (lands && r.cuts == 0)
                state.time = target;
        }
        ts.points.push_back(sample(model, state, last_report));
        last_report = state.time;
        state.interval.assign(state.wells.size(), WellTotals{});
    }
    ts.cumulative_balance = cumulative_balance(model, initial, state);
    return ts;
}

} // namespace geoderelict
