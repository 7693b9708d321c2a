/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/validation.hpp"

#include "geoderelict/engine.hpp"
#include "geoderelict/props.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace geoderelict {

namespace {

std::string fmt(const char* format, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

ScenarioConfig column(int cells, double dx, double cross, double p_inj, double p_prod)
{
    ScenarioConfig c;
    c.name = "column";
    c.grid = GridSpec{cells, 1, 1, dx, cross, cross, 1000.0};
    c.initial_temperature = 45.0;
    c.initial_pressure = 7.0 * units::mpa;
    c.fluid.c_f = 0.0;
    c.rock.c_r = 0.0;
    c.horizon_years = 1.0;
    c.report_interval_days = 30.0;

    WellSpec inj;
    inj.name = "i1";
    inj.kind = WellKind::injector;
    inj.bhp = p_inj;
    inj.radius = 0.05;
    WellSpec prod;
    prod.name = "p1";
    prod.bhp = p_prod;
    prod.radius = 0.05;
    prod.i = cells - 1;
    c.wells = {inj, prod};
    return c;
}

} // namespace

double darcy_column_error(int cells)
{
    ScenarioConfig c = column(cells, 10.0, 10.0, 8.0 * units::mpa, 6.0 * units::mpa);
    c.solver.pressure_tolerance = 1e-15;
    const Model m = build_model(c);
    const SimState s = initial_state(m);
    const PressureSystem sys = assemble_pressure(m, s, units::day);
    std::vector<double> p = s.pressure;
    CgOptions opt;
    opt.tolerance = c.solver.pressure_tolerance;
    cg_solve(sys.matrix, sys.rhs, p, opt);

    const auto flux = darcy_fluxes(m, p, sys.face_mobility);
    const auto rates = perforation_rates(m, sys, p);
    const double q_in = rates[0][0];
    const double q_out = -rates[1][0];

    double err = 0.0;
    const double drop = (p.front() - p.back()) / (cells - 1);
    for (int i = 0; i + 1 < cells; ++i) {
        err = std::max(err, std::abs((p[i] - p[i + 1]) - drop) / drop);
        err = std::max(err, std::abs(flux[i] - q_in) / q_in);
    }
    err = std::max(err, std::abs(q_out - q_in) / q_in);

    // Series resistances: injector sandface, faces, producer sandface.
    double resistance = 1.0 / sys.perf_mobility[0][0] + 1.0 / sys.perf_mobility[1][0];
    for (double mob : sys.face_mobility)
        resistance += 1.0 / mob;
    const double q_series = (c.wells[0].bhp - c.wells[1].bhp) / resistance;
    return std::max(err, std::abs(q_in - q_series) / q_series);
}

double conduction_erfc_error(int cells, double conductivity_scale)
{
    const double length = 20.0;
    const double dx = length / cells;
    const double t_end = 0.25 * units::year;
    const double t_init = 45.0;
    const double t_wall = 20.0;

    const RockModel rock;
    const FluidModel fluid;
    const double rho = water_density(fluid, 7.0 * units::mpa, t_init);
    const double c_bulk = bulk_heat_capacity(fluid, rock, rho);
    const double alpha = rock.lambda_bulk / c_bulk;

    const GridSpec spec{cells, 1, 1, dx, 1.0, 1.0, 0.0};
    const Grid grid(spec, std::vector<double>(spec.cell_count(), rock.k));
    std::vector<double> conductance;
    for (const Face& f : grid.faces())
        conductance.push_back(conductivity_scale * rock.lambda_bulk * f.area / f.distance);
    const std::vector<double> capacity(spec.cell_count(), c_bulk * dx);
    std::vector<unsigned char> fixed(spec.cell_count(), 0);
    fixed[0] = 1;
    std::vector<double> t(spec.cell_count(), t_init);
    t[0] = t_wall;

    const int steps = 4 * cells;
    const double dt = t_end / steps;
    for (int n = 0; n < steps; ++n)
        conduction_solve(grid, conductance, capacity, t, dt, fixed, 1e-12, 10000);

    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double x = i * dx;
        const double exact = t_init + (t_wall - t_init) * std::erfc(x / (2.0 * std::sqrt(alpha * t_end)));
        num += (t[i] - exact) * (t[i] - exact);
        den += (exact - t_init) * (exact - t_init);
    }
    return std::sqrt(num / den);
}

double retardation_front_error(int cells)
{
    const double length = 200.0;
    const double cross = 10.0;
    ScenarioConfig c = column(cells, length / cells, cross, 20.0 * units::mpa, 2.0 * units::mpa);
    c.fluid.beta = 0.0;
    c.rock.lambda_bulk = 0.0;
    c.wells[0].inj_temperature = 20.0;
    const Model m = build_model(c);
    SimState s = initial_state(m);

    const double ratio = m.fluid_heat / bulk_heat_capacity(c.fluid, c.rock, m.rho_w);
    const double area = cross * cross;
    auto front = [&] { return ratio * s.wells[0].injected_volume / area; };

    double dt = c.timestep.dt_init;
    while (front() < 0.5 * length) {
        step(m, s, dt);
        dt = std::min(dt * c.timestep.growth, c.timestep.dt_max);
    }

    const double mid = 0.5 * (45.0 + 20.0);
    const double dx = length / cells;
    double x_mid = 0.0;
    for (int i = 1; i < cells; ++i)
        if (s.temperature[i] >= mid) {
            const double w = (mid - s.temperature[i - 1]) / (s.temperature[i] - s.temperature[i - 1]);
            x_mid = (i - 0.5 + w) * dx;
            break;
        }
    return std::abs(x_mid - front()) / front();
}

double radial_inflow_error()
{
    const int n = 101;
    const double dx = 10.0;
    const double h = 10.0;
    ScenarioConfig c;
    c.name = "radial";
    c.grid = GridSpec{n, n, 1, dx, dx, h, 1000.0};
    c.initial_temperature = 45.0;
    c.initial_pressure = 7.0 * units::mpa;
    c.fluid.c_f = 0.0;
    c.rock.c_r = 0.0;
    c.horizon_years = 1.0;
    c.solver.pressure_tolerance = 1e-12;

    WellSpec prod;
    prod.name = "p1";
    prod.i = n / 2;
    prod.j = n / 2;
    prod.bhp = 5.0 * units::mpa;
    c.wells = {prod};

    const double r_fixed = 45.0 * dx;
    c.aquifer.enabled = true;
    c.aquifer.attachment = AquiferAttachment::cells;
    c.aquifer.initial_pressure = c.initial_pressure;
    c.aquifer.water_volume = 1e15;
    c.aquifer.compressibility = 1e-9;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (std::hypot((i - n / 2) * dx, (j - n / 2) * dx) > r_fixed)
                c.aquifer.cells.push_back(static_cast<std::size_t>(i + n * j));
    c.aquifer.productivity = 1e-3 * static_cast<double>(c.aquifer.cells.size());

    const Model m = build_model(c);
    SimState s = initial_state(m);
    const PressureSystem sys = assemble_pressure(m, s, units::day);
    std::vector<double> p = s.pressure;
    CgOptions opt;
    opt.tolerance = c.solver.pressure_tolerance;
    cg_solve(sys.matrix, sys.rhs, p, opt);
    const double q = -perforation_rates(m, sys, p)[0][0];

    const double mu = water_viscosity(45.0);
    const double q_exact = 2.0 * std::numbers::pi * c.rock.k * h * (c.initial_pressure - prod.bhp)
                           / (mu * std::log(r_fixed / prod.radius));
    return std::abs(q - q_exact) / q_exact;
}

double cg_dense_error(int seeds, int n)
{
    double worst = 0.0;
    for (int seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd mm(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                mm(i, j) = u(rng);
        const Eigen::MatrixXd a = mm.transpose() * mm + Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i)
            b(i) = u(rng);
        const Eigen::VectorXd exact = a.partialPivLu().solve(b);

        std::vector<SparseMatrix::Triplet> trip;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                trip.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a(i, j)});
        const SparseMatrix sa = SparseMatrix::from_triplets(static_cast<std::size_t>(n), trip);
        std::vector<double> rhs(b.data(), b.data() + n);
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        CgOptions opt;
        opt.tolerance = 1e-13;
        cg_solve(sa, rhs, x, opt);

        double num = 0.0;
        for (int i = 0; i < n; ++i)
            num += (x[i] - exact(i)) * (x[i] - exact(i));
        worst = std::max(worst, std::sqrt(num) / exact.norm());
    }
    return worst;
}

TableResidual table3_residual()
{
    struct Row {
        double heat;
        double coal;
        double carbon;
        double co2;
        double profit;
    };
    static const Row rows[] = {
        {5.68e12, 193.8, 129.8, 476.1, 38.8},  {7.71e12, 263.0, 176.2, 646.2, 52.6},
        {9.65e12, 329.2, 220.6, 808.8, 65.8},  {9.33e12, 318.2, 213.2, 781.7, 63.6},
        {1.08e13, 368.6, 247.0, 905.5, 73.7},  {1.22e13, 417.0, 279.4, 1024.3, 83.4},
    };
    TableResidual r;
    const EmissionFactors f;
    for (const Row& row : rows) {
        const HeatConversion c = convert_heat(row.heat, f);
        r.max_tonnes = std::max({r.max_tonnes, std::abs(c.coal_t - row.coal),
                                 std::abs(c.emissions.carbon_t - row.carbon), std::abs(c.emissions.co2_t - row.co2)});
        r.max_profit = std::max(r.max_profit, std::abs(c.emissions.profit_10k_yuan - row.profit));
    }
    return r;
}

std::vector<ValidationCheck> run_validation(const ValidationOptions& options)
{
    std::vector<ValidationCheck> out;
    auto add = [&](std::string name, double value, double tol, std::string detail) {
        out.push_back(ValidationCheck{std::move(name), value < tol, value, tol, std::move(detail)});
    };

    const double darcy = darcy_column_error(100);
    add("darcy_1d", darcy, 1e-10, fmt("max relative deviation %.3g over 100 cells", darcy));

    const double e100 = conduction_erfc_error(100, options.conductivity_scale);
    const double e200 = conduction_erfc_error(200, options.conductivity_scale);
    {
        ValidationCheck chk{"conduction_erfc", e100 < 0.02 && e200 < 0.01 && e200 < e100, e100, 0.02,
                            fmt("L2 error %.4g at 100 cells, %.4g at 200 cells", e100, e200)};
        out.push_back(chk);
    }

    const double front = retardation_front_error(400);
    add("retardation_front", front, 0.05, fmt("front midpoint off by %.3g relative at 400 cells", front));

    const double radial = radial_inflow_error();
    add("radial_inflow", radial, 0.03, fmt("rate off by %.3g relative on 101x101", radial));

    const double cg = cg_dense_error(100, 50);
    add("cg_vs_dense", cg, 1e-8, fmt("worst relative difference %.3g over 100 seeds", cg));

    const TableResidual t3 = table3_residual();
    {
        ValidationCheck chk{"table3_regression", t3.max_tonnes < 0.5 && t3.max_profit < 0.1, t3.max_tonnes, 0.5,
                            fmt("max residual %.3g t, %.3g ten-thousand yuan", t3.max_tonnes, t3.max_profit)};
        out.push_back(chk);
    }
    return out;
}

} // namespace geoderelict
