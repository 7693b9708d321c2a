/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance                      all criteria, runs in-process
//   acceptance --prepare DIR        runs the seven field scenarios into DIR
//   acceptance --cache DIR [-c N]   reuses DIR for the field criteria

#include "geoderelict/deck.hpp"
#include "geoderelict/engine.hpp"
#include "geoderelict/metrics.hpp"
#include "geoderelict/props.hpp"
#include "geoderelict/report.hpp"
#include "geoderelict/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gd = geoderelict;
namespace fs = std::filesystem;
using json = nlohmann::json;

#ifndef GEODERELICT_SOURCE_DIR
#define GEODERELICT_SOURCE_DIR "."
#endif

namespace {

// Pinned tolerances.
constexpr double table_tonnes_tol = 0.5;
constexpr double table_profit_tol = 0.1;
constexpr double darcy_tol = 1e-10;
constexpr double erfc_tol_100 = 0.02;
constexpr double erfc_tol_200 = 0.01;
constexpr double front_tol = 0.05;
constexpr double ratio_ref = 1.562;
constexpr double ratio_ref_tol = 5e-4;
constexpr double radial_tol = 0.03;
constexpr double mass_tol = 1e-4;
constexpr double energy_tol = 5e-3;
constexpr double run_seconds = 60.0;
constexpr double depletion_35_days = 150.0;
constexpr double depletion_10_days = 11.0 * 365.25 / 12.0;
constexpr double coal_low = 100.0;
constexpr double coal_high = 900.0;
constexpr double coal_ref_low = 190.0;
constexpr double coal_ref_high = 420.0;
constexpr double cg_tol = 1e-8;
constexpr double tonne_coal_J = 29.307e9;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- field runs

struct Case {
    gd::Pattern pattern;
    double mpa;
    const char* deck;   // shipped deck, or nullptr for the builtin
};

const std::vector<Case>& field_cases()
{
    static const std::vector<Case> cases = {
        {gd::Pattern::direct, 15.0, "chang2_direct.deck"},
        {gd::Pattern::four_inject_one_produce, 10.0, nullptr},
        {gd::Pattern::four_inject_one_produce, 15.0, "chang2_4i1p_15MPa.deck"},
        {gd::Pattern::four_inject_one_produce, 20.0, nullptr},
        {gd::Pattern::one_inject_four_produce, 10.0, nullptr},
        {gd::Pattern::one_inject_four_produce, 15.0, "chang2_1i4p_15MPa.deck"},
        {gd::Pattern::one_inject_four_produce, 20.0, nullptr},
    };
    return cases;
}

struct Record {
    std::string name;
    std::string csv;
    std::string summary;
    double seconds = 0.0;
};

struct Row {
    double t = 0.0;
    std::string well;
    double water = 0.0;
    double injection = 0.0;
    double cum_heat = 0.0;
};

std::vector<Row> parse_csv(const std::string& csv)
{
    std::vector<Row> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    if (line != gd::timeseries_header)
        throw std::runtime_error("unexpected CSV header");
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 8)
            throw std::runtime_error("bad CSV row: " + line);
        rows.push_back(Row{std::stod(f[0]), f[1], std::stod(f[2]), std::stod(f[3]), std::stod(f[6])});
    }
    return rows;
}

struct Field {
    std::vector<double> t;
    std::map<std::string, std::vector<double>> water;
    std::map<std::string, std::vector<double>> cum_heat;
    std::vector<std::string> producers;
    double horizon_years = 0.0;
    json summary;

    std::vector<double> system_heat() const
    {
        std::vector<double> h(t.size(), 0.0);
        for (const auto& p : producers)
            for (std::size_t k = 0; k < t.size(); ++k)
                h[k] += cum_heat.at(p)[k];
        return h;
    }
    double annual_system() const { return system_heat().back() / horizon_years; }
    double annual_per_producer() const { return annual_system() / static_cast<double>(producers.size()); }
};

Field field_of(const Record& r)
{
    Field f;
    f.summary = json::parse(r.summary);
    f.horizon_years = f.summary.at("horizon_years").get<double>();
    for (const auto& w : f.summary.at("wells"))
        if (w.at("kind").get<std::string>() == "producer")
            f.producers.push_back(w.at("name").get<std::string>());
    for (const Row& row : parse_csv(r.csv)) {
        if (f.t.empty() || f.t.back() != row.t)
            f.t.push_back(row.t);
        f.water[row.well].push_back(row.water);
        f.cum_heat[row.well].push_back(row.cum_heat);
    }
    if (f.producers.empty())
        throw std::runtime_error(r.name + ": no producers");
    return f;
}

class Runs {
public:
    Runs(std::optional<fs::path> cache, fs::path source) : cache_(std::move(cache)), source_(std::move(source)) {}

    gd::ScenarioConfig config(const Case& c) const
    {
        if (c.deck)
            return gd::load_deck(source_ / "scenarios" / c.deck);
        return gd::builtin_scenario(c.pattern, c.mpa);
    }

    Record produce(const Case& c) const { return execute(config(c)); }

    static Record execute(const gd::ScenarioConfig& cfg)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const gd::TimeSeries s = gd::run(cfg);
        const double secs = seconds_since(t0);
        return Record{cfg.name, gd::timeseries_csv(s), gd::summary_json(cfg, s), secs};
    }

    const Record& get(const Case& c)
    {
        const std::string name = gd::builtin_scenario(c.pattern, c.mpa).name;
        auto it = memo_.find(name);
        if (it != memo_.end())
            return it->second;
        Record r;
        if (cache_) {
            const fs::path file = *cache_ / (name + ".json");
            std::ifstream in(file);
            if (!in)
                throw std::runtime_error("missing cache entry " + file.string() + "; run --prepare first");
            const json j = json::parse(in);
            r = Record{j.at("name"), j.at("csv"), j.at("summary"), j.at("seconds")};
        } else {
            r = produce(c);
        }
        return memo_.emplace(name, std::move(r)).first->second;
    }

    const Record& get(gd::Pattern p, double mpa)
    {
        for (const Case& c : field_cases())
            if (c.pattern == p && c.mpa == mpa)
                return get(c);
        throw std::logic_error("no such field case");
    }

    const fs::path& source() const { return source_; }

private:
    std::optional<fs::path> cache_;
    fs::path source_;
    std::map<std::string, Record> memo_;
};

int prepare(const fs::path& dir, const Runs& runs)
{
    fs::create_directories(dir);
    for (const Case& c : field_cases()) {
        const Record r = runs.produce(c);
        const json j{{"name", r.name}, {"seconds", r.seconds}, {"csv", r.csv}, {"summary", r.summary}};
        gd::write_file(dir / (r.name + ".json"), j.dump());
        std::printf("prepared %s in %.2f s\n", r.name.c_str(), r.seconds);
    }
    return 0;
}

// ---------------------------------------------------------------- oracles

double density(const gd::FluidModel& f, double p, double T)
{
    return f.rho_ref * std::exp(f.c_f * (p - f.p_ref) - f.beta * (T - f.T_ref));
}

double bulk_capacity(const gd::FluidModel& f, const gd::RockModel& r, double rho)
{
    return r.phi * rho * f.cw + (1.0 - r.phi) * r.rock_vol_heat;
}

gd::ScenarioConfig column(int cells, double dx, double cross, double p_inj, double p_prod)
{
    gd::ScenarioConfig c;
    c.name = "column";
    c.grid = gd::GridSpec{cells, 1, 1, dx, cross, cross, 1000.0};
    c.initial_temperature = 45.0;
    c.initial_pressure = 7.0 * gd::units::mpa;
    c.fluid.c_f = 0.0;
    c.rock.c_r = 0.0;
    c.horizon_years = 1.0;

    gd::WellSpec inj;
    inj.name = "i1";
    inj.kind = gd::WellKind::injector;
    inj.bhp = p_inj;
    inj.radius = 0.05;
    gd::WellSpec prod;
    prod.name = "p1";
    prod.bhp = p_prod;
    prod.radius = 0.05;
    prod.i = cells - 1;
    c.wells = {inj, prod};
    return c;
}

Outcome table3(Runs&)
{
    struct RefRow {
        double heat, coal, carbon, co2, profit;
    };
    static const RefRow rows[] = {
        {5.68e12, 193.8, 129.8, 476.1, 38.8}, {7.71e12, 263.0, 176.2, 646.2, 52.6},
        {9.65e12, 329.2, 220.6, 808.8, 65.8}, {9.33e12, 318.2, 213.2, 781.7, 63.6},
        {1.08e13, 368.6, 247.0, 905.5, 73.7}, {1.22e13, 417.0, 279.4, 1024.3, 83.4},
    };
    const gd::EmissionFactors f;
    double tonnes = 0.0;
    double profit = 0.0;
    double worst_heat = 0.0;
    for (const RefRow& row : rows) {
        const gd::HeatConversion c = gd::convert_heat(row.heat, f);
        const double t = std::max({std::abs(c.coal_t - row.coal), std::abs(c.emissions.carbon_t - row.carbon),
                                   std::abs(c.emissions.co2_t - row.co2)});
        if (t > tonnes) {
            tonnes = t;
            worst_heat = row.heat;
        }
        profit = std::max(profit, std::abs(c.emissions.profit_10k_yuan - row.profit));
    }
    return {tonnes <= table_tonnes_tol && profit <= table_profit_tol,
            fmt("max residual %.3g t (limit %g, worst row %.3g J), %.3g ten-thousand yuan (limit %g)", tonnes,
                table_tonnes_tol, worst_heat, profit, table_profit_tol)};
}

Outcome darcy(Runs&)
{
    const int n = 100;
    const double dx = 10.0;
    const double cross = 10.0;
    gd::ScenarioConfig c = column(n, dx, cross, 8.0 * gd::units::mpa, 6.0 * gd::units::mpa);
    const gd::Model m = gd::build_model(c);
    const gd::SimState s = gd::initial_state(m);
    const gd::PressureSystem sys = gd::assemble_pressure(m, s, gd::units::day);
    std::vector<double> p = s.pressure;
    gd::CgOptions opt;
    opt.tolerance = 1e-15;
    opt.max_iterations = 1000;
    gd::cg_solve(sys.matrix, sys.rhs, p, opt);
    const auto flux = gd::darcy_fluxes(m, p, sys.face_mobility);

    // Series resistances: two Peaceman sandfaces and n-1 faces. Injected
    // water enters at its own temperature.
    const double mu = gd::water_viscosity(45.0);
    const double mu_inj = gd::water_viscosity(c.wells[0].inj_temperature);
    const double k = c.rock.k;
    const double r_e = 0.14 * std::sqrt(dx * dx + cross * cross);
    const double wi = 2.0 * std::numbers::pi * k * cross / std::log(r_e / c.wells[0].radius);
    const double resistance = (mu_inj + mu) / wi + (n - 1) * mu * dx / (k * cross * cross);
    const double q = (c.wells[0].bhp - c.wells[1].bhp) / resistance;
    const double drop = q * mu * dx / (k * cross * cross);

    double profile = 0.0;
    double uniform = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        profile = std::max(profile, std::abs((p[i] - p[i + 1]) - drop) / drop);
        uniform = std::max(uniform, std::abs(flux[i] - q) / q);
    }
    return {profile < darcy_tol && uniform < darcy_tol,
            fmt("pressure drop per face off by %.3g, flux off by %.3g relative (limit %g)", profile, uniform,
                darcy_tol)};
}

double erfc_error(int cells)
{
    const double length = 20.0;
    const double dx = length / cells;
    const double t_end = 0.25 * 365.25 * 86400.0;
    const double t0 = 45.0;
    const double tw = 20.0;
    const gd::FluidModel fluid;
    const gd::RockModel rock;
    const double cb = bulk_capacity(fluid, rock, density(fluid, 7e6, t0));
    const double alpha = rock.lambda_bulk / cb;

    const gd::GridSpec spec{cells, 1, 1, dx, 1.0, 1.0, 0.0};
    const gd::Grid grid(spec, std::vector<double>(spec.cell_count(), rock.k));
    std::vector<double> g;
    for (const gd::Face& f : grid.faces())
        g.push_back(rock.lambda_bulk * f.area / f.distance);
    const std::vector<double> cap(spec.cell_count(), cb * dx);
    std::vector<unsigned char> fixed(spec.cell_count(), 0);
    fixed[0] = 1;
    std::vector<double> T(spec.cell_count(), t0);
    T[0] = tw;

    const int steps = 4 * cells;
    for (int s = 0; s < steps; ++s)
        gd::conduction_solve(grid, g, cap, T, t_end / steps, fixed, 1e-12, 10000);

    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double exact = t0 + (tw - t0) * std::erfc(i * dx / (2.0 * std::sqrt(alpha * t_end)));
        num += (T[i] - exact) * (T[i] - exact);
        den += (exact - t0) * (exact - t0);
    }
    return std::sqrt(num / den);
}

Outcome conduction(Runs&)
{
    const double e100 = erfc_error(100);
    const double e200 = erfc_error(200);
    return {e100 < erfc_tol_100 && e200 < erfc_tol_200 && e200 < e100,
            fmt("L2 error %.3g at 100 cells (limit %g), %.3g at 200 cells (limit %g), ratio %.2f", e100,
                erfc_tol_100, e200, erfc_tol_200, e100 / e200)};
}

Outcome retardation(Runs&)
{
    const gd::FluidModel f0;
    const gd::RockModel r0;
    const double ratio0 = f0.rho_ref * f0.cw / bulk_capacity(f0, r0, f0.rho_ref);

    const int cells = 400;
    const double length = 200.0;
    const double cross = 10.0;
    const double dx = length / cells;
    gd::ScenarioConfig c = column(cells, dx, cross, 20.0 * gd::units::mpa, 2.0 * gd::units::mpa);
    c.fluid.beta = 0.0;
    c.rock.lambda_bulk = 0.0;
    c.wells[0].inj_temperature = 20.0;
    const double rho = density(c.fluid, c.initial_pressure, 45.0);
    const double ratio = rho * c.fluid.cw / bulk_capacity(c.fluid, c.rock, rho);
    const double area = cross * cross;

    const gd::Model m = gd::build_model(c);
    gd::SimState s = gd::initial_state(m);
    auto midpoint = [&] {
        const double mid = 0.5 * (45.0 + 20.0);
        for (int i = 1; i < cells; ++i)
            if (s.temperature[i] >= mid) {
                const double w = (mid - s.temperature[i - 1]) / (s.temperature[i] - s.temperature[i - 1]);
                return (i - 0.5 + w) * dx;
            }
        return length;
    };

    // Front speed per unit injected Darcy displacement, between a quarter
    // and three quarters of the column.
    double dt = c.timestep.dt_init;
    std::optional<std::pair<double, double>> a;
    std::pair<double, double> b;
    for (int n = 0;; ++n) {
        if (n > 100000)
            throw std::runtime_error("front did not cross the column");
        const double disp = s.wells[0].injected_volume / area;
        if (!a && ratio * disp >= 0.25 * length)
            a = {disp, midpoint()};
        if (ratio * disp >= 0.75 * length) {
            b = {disp, midpoint()};
            break;
        }
        gd::step(m, s, dt);
        dt = std::min(dt * c.timestep.growth, c.timestep.dt_max);
    }
    const double speed = (b.second - a->second) / (b.first - a->first);
    const double err = std::abs(speed - ratio) / ratio;
    return {err < front_tol && std::abs(ratio0 - ratio_ref) < ratio_ref_tol,
            fmt("front speed %.4f u vs %.4f u, off by %.3g (limit %g); reference ratio %.4f vs %.3f", speed, ratio,
                err, front_tol, ratio0, ratio_ref)};
}

Outcome radial(Runs&)
{
    const int n = 101;
    const double dx = 10.0;
    const double h = 10.0;
    const double r_out = 450.0;
    gd::ScenarioConfig c;
    c.name = "radial";
    c.grid = gd::GridSpec{n, n, 1, dx, dx, h, 1000.0};
    c.initial_temperature = 45.0;
    c.initial_pressure = 7.0 * gd::units::mpa;
    c.fluid.c_f = 0.0;
    c.rock.c_r = 0.0;
    c.horizon_years = 1.0;

    gd::WellSpec w;
    w.name = "p1";
    w.i = n / 2;
    w.j = n / 2;
    w.bhp = 5.0 * gd::units::mpa;
    c.wells = {w};

    // A huge, stiff aquifer on every cell beyond r_out pins the outer pressure.
    c.aquifer.enabled = true;
    c.aquifer.attachment = gd::AquiferAttachment::cells;
    c.aquifer.initial_pressure = c.initial_pressure;
    c.aquifer.water_volume = 1e15;
    c.aquifer.compressibility = 1e-9;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (std::hypot((i - n / 2) * dx, (j - n / 2) * dx) > r_out)
                c.aquifer.cells.push_back(static_cast<std::size_t>(i + n * j));
    c.aquifer.productivity = 1e-3 * static_cast<double>(c.aquifer.cells.size());

    const gd::Model m = gd::build_model(c);
    const gd::SimState s = gd::initial_state(m);
    const gd::PressureSystem sys = gd::assemble_pressure(m, s, gd::units::day);
    std::vector<double> p = s.pressure;
    gd::CgOptions opt;
    opt.tolerance = 1e-12;
    opt.max_iterations = 20000;
    gd::cg_solve(sys.matrix, sys.rhs, p, opt);
    const double q = -gd::perforation_rates(m, sys, p)[0][0];

    const double mu = gd::water_viscosity(45.0);
    const double exact =
        2.0 * std::numbers::pi * c.rock.k * h * (c.initial_pressure - w.bhp) / (mu * std::log(r_out / w.radius));
    const double err = std::abs(q - exact) / exact;
    return {err < radial_tol, fmt("rate %.5g m3/d vs %.5g m3/d, off by %.3g (limit %g)", q * 86400.0,
                                  exact * 86400.0, err, radial_tol)};
}

Outcome conservation(Runs& runs)
{
    double mass = 0.0;
    double energy = 0.0;
    double slowest = 0.0;
    std::string slow_name;
    for (const Case& c : field_cases()) {
        const Record& r = runs.get(c);
        const json bal = json::parse(r.summary).at("balance");
        mass = std::max(mass, std::abs(bal.at("mass_error_rel").get<double>()));
        energy = std::max(energy, std::abs(bal.at("energy_error_rel").get<double>()));
        if (r.seconds > slowest) {
            slowest = r.seconds;
            slow_name = r.name;
        }
    }
    return {mass < mass_tol && energy < energy_tol && slowest < run_seconds,
            fmt("worst mass %.3g (limit %g), energy %.3g (limit %g), slowest run %s %.1f s (limit %g s)", mass,
                mass_tol, energy, energy_tol, slow_name.c_str(), slowest, run_seconds)};
}

Outcome depletion(Runs& runs)
{
    const Field f = field_of(runs.get(gd::Pattern::direct, 15.0));
    const std::vector<double>& q = f.water.at(f.producers.front());
    const double q0 = q.front();
    double rise = 0.0;
    for (std::size_t k = 1; k < q.size(); ++k)
        rise = std::max(rise, (q[k] - q[k - 1]) / q0);
    const bool monotone = rise <= 0.0;
    auto first_below = [&](double frac) {
        for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k] < frac * q0)
                return f.t[k];
        return std::numeric_limits<double>::infinity();
    };
    const double d35 = first_below(0.35);
    const double d10 = first_below(0.10);
    return {monotone && d35 <= depletion_35_days && d10 <= depletion_10_days,
            fmt("initial %.3g m3/d, largest rise %.2g of initial, below 35%% at %.0f d (limit %g d), below 10%% at %.0f d (limit %.1f d)", q0,
                rise, d35, depletion_35_days, d10, depletion_10_days)};
}

Outcome pressure_order(Runs& runs)
{
    bool pass = true;
    std::string detail;
    for (gd::Pattern p : {gd::Pattern::four_inject_one_produce, gd::Pattern::one_inject_four_produce}) {
        const auto h10 = field_of(runs.get(p, 10.0)).system_heat();
        const auto h15 = field_of(runs.get(p, 15.0)).system_heat();
        const auto h20 = field_of(runs.get(p, 20.0)).system_heat();
        std::size_t bad = 0;
        for (std::size_t k = 0; k < h15.size(); ++k)
            if (!(h20[k] > h15[k] && h15[k] > h10[k]))
                ++bad;
        pass = pass && bad == 0 && h10.size() == h15.size() && h15.size() == h20.size();
        detail += fmt("%s: %zu of %zu report times out of order, final %.3g > %.3g > %.3g J; ",
                      std::string(gd::to_string(p)).c_str(), bad, h15.size(), h20.back(), h15.back(), h10.back());
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome pattern_order(Runs& runs)
{
    bool pass = true;
    std::string detail;
    for (double mpa : {10.0, 15.0, 20.0}) {
        const Field a = field_of(runs.get(gd::Pattern::four_inject_one_produce, mpa));
        const Field b = field_of(runs.get(gd::Pattern::one_inject_four_produce, mpa));
        const bool per = a.annual_per_producer() > b.annual_per_producer();
        const bool sys = b.annual_system() > a.annual_system();
        pass = pass && per && sys;
        detail += fmt("%g MPa per producer %.3g vs %.3g J (%s), system %.3g vs %.3g J (%s); ", mpa,
                      a.annual_per_producer(), b.annual_per_producer(), per ? "ok" : "wrong order",
                      a.annual_system(), b.annual_system(), sys ? "ok" : "wrong order");
    }
    detail.resize(detail.size() - 2);
    return {pass, "4i1p vs 1i4p: " + detail};
}

Outcome magnitude(Runs& runs)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    int in_ref = 0;
    for (const Case& c : field_cases()) {
        if (c.pattern == gd::Pattern::direct)
            continue;
        const double coal = field_of(runs.get(c)).annual_system() / tonne_coal_J;
        lo = std::min(lo, coal);
        hi = std::max(hi, coal);
        if (coal >= coal_ref_low && coal <= coal_ref_high)
            ++in_ref;
    }
    return {lo >= coal_low && hi <= coal_high,
            fmt("annual coal %.1f to %.1f t (band %g to %g t); %d of 6 inside %g to %g t (reported only)", lo, hi,
                coal_low, coal_high, in_ref, coal_ref_low, coal_ref_high)};
}

Outcome determinism(Runs& runs)
{
    bool pass = true;
    std::string detail;
    for (const Case& c : field_cases()) {
        if (!c.deck)
            continue;
        const Record& first = runs.get(c);
        const Record again = runs.produce(c);
        const bool same = again.csv == first.csv && again.summary == first.summary;
        pass = pass && same && again.seconds < run_seconds;
        detail += fmt("%s %s (%.1f s); ", c.deck, same ? "identical" : "DIFFERS", again.seconds);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome cg_dense(Runs&)
{
    const int n = 50;
    double worst = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 1000);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> m(n * n);
        for (double& v : m)
            v = u(rng);
        std::vector<double> a(n * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = i == j ? 1.0 : 0.0;
                for (int k = 0; k < n; ++k)
                    s += m[k * n + i] * m[k * n + j];
                a[i * n + j] = s;
            }
        std::vector<double> b(n);
        for (double& v : b)
            v = u(rng);

        // Dense Cholesky, then two triangular solves.
        std::vector<double> l(n * n, 0.0);
        for (int j = 0; j < n; ++j) {
            double d = a[j * n + j];
            for (int k = 0; k < j; ++k)
                d -= l[j * n + k] * l[j * n + k];
            l[j * n + j] = std::sqrt(d);
            for (int i = j + 1; i < n; ++i) {
                double s = a[i * n + j];
                for (int k = 0; k < j; ++k)
                    s -= l[i * n + k] * l[j * n + k];
                l[i * n + j] = s / l[j * n + j];
            }
        }
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            double s = b[i];
            for (int k = 0; k < i; ++k)
                s -= l[i * n + k] * y[k];
            y[i] = s / l[i * n + i];
        }
        std::vector<double> exact(n);
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            for (int k = i + 1; k < n; ++k)
                s -= l[k * n + i] * exact[k];
            exact[i] = s / l[i * n + i];
        }

        std::vector<gd::SparseMatrix::Triplet> trip;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                trip.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a[i * n + j]});
        const gd::SparseMatrix sa = gd::SparseMatrix::from_triplets(n, trip);
        std::vector<double> x(n, 0.0);
        gd::CgOptions opt;
        opt.tolerance = 1e-12;
        gd::cg_solve(sa, b, x, opt);

        double num = 0.0;
        double den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += (x[i] - exact[i]) * (x[i] - exact[i]);
            den += exact[i] * exact[i];
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return {worst < cg_tol, fmt("worst relative difference %.3g over 100 seeds, n = 50 (limit %g)", worst, cg_tol)};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome(Runs&)> fn;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all = {
        {1, "table3_regression", 1.0, table3},
        {2, "darcy_1d", 1.0, darcy},
        {3, "conduction_erfc", 5.0, conduction},
        {4, "thermal_retardation", 5.0, retardation},
        {5, "radial_inflow", 10.0, radial},
        {6, "conservation", 0.0, conservation},
        {7, "depletion_shape", 0.0, depletion},
        {8, "pressure_ordering", 0.0, pressure_order},
        {9, "pattern_ordering", 0.0, pattern_order},
        {10, "coal_band", 0.0, magnitude},
        {11, "determinism", 0.0, determinism},
        {12, "cg_vs_dense", 5.0, cg_dense},
    };
    return all;
}

bool evaluate(const Criterion& c, Runs& runs)
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        o = c.fn(runs);
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    std::string timing = fmt("%.2f s", secs);
    if (c.limit_s > 0.0) {
        timing += fmt(", limit %g s", c.limit_s);
        if (secs >= c.limit_s) {
            o.pass = false;
            timing += ", TOO SLOW";
        }
    }
    std::printf("%s %2d %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"geoderelict acceptance criteria"};
    std::string prepare_dir;
    std::string cache_dir;
    std::string source = GEODERELICT_SOURCE_DIR;
    int only = 0;
    app.add_option("--prepare", prepare_dir, "Run the field scenarios and store them in DIR");
    app.add_option("--cache", cache_dir, "Read field runs from DIR");
    app.add_option("-c,--criterion", only, "Evaluate one criterion")->check(CLI::Range(1, 12));
    app.add_option("--source", source, "Source tree holding scenarios/");
    CLI11_PARSE(app, argc, argv);

    std::optional<fs::path> cache;
    if (!cache_dir.empty())
        cache = cache_dir;
    Runs runs(cache, source);

    try {
        if (!prepare_dir.empty())
            return prepare(prepare_dir, runs);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "prepare failed: %s\n", e.what());
        return 1;
    }

    int failed = 0;
    for (const Criterion& c : criteria())
        if (only == 0 || c.id == only)
            failed += evaluate(c, runs) ? 0 : 1;
    if (only == 0)
        std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria().size()) - failed, criteria().size());
    return failed == 0 ? 0 : 1;
}
