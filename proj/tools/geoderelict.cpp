/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/geoderelict.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace {

enum Exit { exit_ok = 0, exit_usage = 1, exit_simulation = 2 };

struct ScenarioDeleter {
    void operator()(gd_scenario* s) const { gd_scenario_free(s); }
};
struct ResultDeleter {
    void operator()(gd_result* r) const { gd_result_free(r); }
};
using ScenarioPtr = std::unique_ptr<gd_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<gd_result, ResultDeleter>;

void report_error(const char* context)
{
    if (gd_last_error_line() > 0)
        std::fprintf(stderr, "%s: %s [kind=%s line=%d column=%d]\n", context, gd_last_error(), gd_last_error_kind(),
                     gd_last_error_line(), gd_last_error_column());
    else
        std::fprintf(stderr, "%s: %s [kind=%s]\n", context, gd_last_error(), gd_last_error_kind());
}

int exit_for(gd_status status)
{
    return status == GD_ERR_SIMULATION ? exit_simulation : exit_usage;
}

void log_scenario(const gd_scenario* s)
{
    for (size_t i = 0; i < gd_scenario_warning_count(s); ++i)
        std::fprintf(stderr, "warning: %s\n", gd_scenario_warning(s, i));
    double requested = 0.0;
    double actual = 0.0;
    if (gd_scenario_spacing(s, &requested, &actual) == GD_OK && requested > 0.0)
        std::fprintf(stderr, "%s: well spacing %.2f m snapped to %.2f m (error %.2f m)\n", gd_scenario_name(s),
                     requested, actual, std::abs(actual - requested));
}

void print_summary(const gd_scenario* s, const gd_result* r)
{
    gd_annual a{};
    gd_balance b{};
    if (gd_result_annual(r, &a) != GD_OK || gd_result_balance(r, &b) != GD_OK)
        return;
    std::printf("%s: system annual heat %.6g J, %.2f t coal, %.2f t CO2, %.2f x10^4 yuan; per producer %.6g J\n",
                gd_scenario_name(s), a.system.heat_J, a.system.coal_t, a.system.co2_t, a.system.profit_10k_yuan,
                a.per_producer_heat_J);
    std::printf("%s: %zu steps, %zu cuts, mass balance %.3g, energy balance %.3g\n", gd_scenario_name(s), b.steps,
                b.cuts, b.mass_error_rel, b.energy_error_rel);
}

struct RunOptions {
    std::string deck;
    std::string out;
    double horizon_years = -1.0;
    bool gravity = false;
    bool aquifer = false;
};

int cmd_run(const RunOptions& o)
{
    gd_scenario* raw = nullptr;
    if (gd_status st = gd_scenario_load(o.deck.c_str(), &raw); st != GD_OK) {
        report_error("deck error");
        return exit_usage;
    }
    ScenarioPtr s(raw);
    if (o.horizon_years >= 0.0 && gd_scenario_set_horizon_years(s.get(), o.horizon_years) != GD_OK) {
        report_error("usage error");
        return exit_usage;
    }
    if (o.gravity && gd_scenario_set_gravity(s.get(), 1) != GD_OK) {
        report_error("deck error");
        return exit_usage;
    }
    if (o.aquifer && gd_scenario_set_aquifer(s.get(), 1) != GD_OK) {
        report_error("deck error");
        return exit_usage;
    }
    log_scenario(s.get());

    gd_result* res = nullptr;
    if (gd_status st = gd_run(s.get(), &res); st != GD_OK) {
        report_error("simulation failed");
        return exit_for(st);
    }
    ResultPtr r(res);
    if (gd_result_write_artifacts(r.get(), o.out.c_str()) != GD_OK) {
        report_error("output error");
        return exit_usage;
    }
    print_summary(s.get(), r.get());
    return exit_ok;
}

unsigned sweep_threads(std::size_t runs)
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GEODERELICT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            n = static_cast<unsigned>(v);
        else
            std::fprintf(stderr, "warning: ignoring GEODERELICT_THREADS='%s'\n", env);
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, runs));
}

struct SweepOptions {
    std::string pattern;
    std::vector<std::string> pressure_list;
    std::vector<double> pressures;
    std::string out;
    double horizon_years = -1.0;
};

bool parse_pressures(SweepOptions& o)
{
    for (const auto& item : o.pressure_list) {
        if (item.empty())
            continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
            std::fprintf(stderr, "usage error: --pressures: '%s' is not a positive pressure in MPa\n", item.c_str());
            return false;
        }
        o.pressures.push_back(v);
    }
    if (o.pressures.empty()) {
        std::fprintf(stderr, "usage error: --pressures needs at least one value\n");
        return false;
    }
    return true;
}

int cmd_sweep(SweepOptions& o)
{
    if (!parse_pressures(o))
        return exit_usage;
    {
        gd_scenario* probe = nullptr;
        if (gd_scenario_builtin(o.pattern.c_str(), 15.0, &probe) != GD_OK) {
            report_error("usage error");
            return exit_usage;
        }
        gd_scenario_free(probe);
    }
    const std::size_t n = o.pressures.size();
    std::vector<ScenarioPtr> scenarios(n);
    std::vector<ResultPtr> results(n);
    std::vector<gd_status> status(n, GD_OK);
    std::vector<std::string> errors(n);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
        char mpa[32];
        std::snprintf(mpa, sizeof mpa, "%gMPa", o.pressures[i]);
        gd_scenario* raw = nullptr;
        status[i] = gd_scenario_builtin(o.pattern.c_str(), o.pressures[i], &raw);
        if (status[i] == GD_OK) {
            scenarios[i].reset(raw);
            names[i] = gd_scenario_name(raw);
            if (std::find(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(i), names[i])
                != names.begin() + static_cast<std::ptrdiff_t>(i))
                names[i] += std::string("_") + mpa;
            if (o.horizon_years >= 0.0)
                status[i] = gd_scenario_set_horizon_years(raw, o.horizon_years);
        }
        if (status[i] != GD_OK) {
            errors[i] = gd_last_error();
            names[i] = o.pattern + "_" + mpa;
            continue;
        }
        log_scenario(raw);
    }

    std::mutex next_mutex;
    std::size_t next = 0;
    auto worker = [&] {
        for (;;) {
            std::size_t i = 0;
            {
                std::lock_guard lock(next_mutex);
                while (next < n && status[next] != GD_OK)
                    ++next;
                if (next == n)
                    return;
                i = next++;
            }
            gd_result* raw = nullptr;
            status[i] = gd_run(scenarios[i].get(), &raw);
            if (status[i] == GD_OK) {
                results[i].reset(raw);
                const auto dir = std::filesystem::path(o.out) / names[i];
                status[i] = gd_result_write_artifacts(raw, dir.string().c_str());
            }
            if (status[i] != GD_OK)
                errors[i] = gd_last_error();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < sweep_threads(n); ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    int code = exit_ok;
    std::vector<const gd_result*> done;
    std::vector<double> done_pressures;
    for (std::size_t i = 0; i < n; ++i) {
        if (status[i] != GD_OK) {
            std::fprintf(stderr, "run %s failed: %s\n", names[i].c_str(), errors[i].c_str());
            code = std::max(code, static_cast<int>(status[i] == GD_ERR_SIMULATION ? exit_simulation : exit_usage));
            continue;
        }
        print_summary(scenarios[i].get(), results[i].get());
        done.push_back(results[i].get());
        done_pressures.push_back(o.pressures[i]);
    }
    if (!done.empty() && gd_write_sweep_tables(done.data(), done_pressures.data(), done.size(), o.out.c_str()) != GD_OK) {
        report_error("output error");
        code = std::max(code, static_cast<int>(exit_usage));
    }
    return code;
}

int cmd_validate(double conductivity_scale)
{
    gd_validation* v = nullptr;
    if (gd_validate(conductivity_scale, &v) != GD_OK) {
        report_error("validation error");
        return exit_usage;
    }
    bool all = true;
    for (size_t i = 0; i < gd_validation_count(v); ++i) {
        gd_check c{};
        gd_validation_check(v, i, &c);
        std::printf("%s %-18s %s (limit %g)\n", c.passed ? "PASS" : "FAIL", c.name, c.detail, c.tolerance);
        all = all && c.passed;
    }
    gd_validation_free(v);
    return all ? exit_ok : exit_usage;
}

int cmd_report(const std::vector<std::string>& dirs, const std::string& out)
{
    if (dirs.empty()) {
        std::fprintf(stderr, "usage error: report needs at least one run directory\n");
        return exit_usage;
    }
    std::vector<const char*> ptrs;
    for (const auto& d : dirs)
        ptrs.push_back(d.c_str());
    if (gd_report_svg(ptrs.data(), ptrs.size(), out.c_str()) != GD_OK) {
        report_error("report error");
        return exit_usage;
    }
    std::printf("wrote %s and %s\n", (std::filesystem::path(out) / "rates.svg").string().c_str(),
                (std::filesystem::path(out) / "heat.svg").string().c_str());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"geoderelict: geothermal heat recovery from depleted reservoirs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gd_version()));

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run one deck and write timeseries.csv, summary.json and SVG plots");
    run_cmd->add_option("deck", run.deck, "Deck file")->required();
    run_cmd->add_option("-o,--out", run.out, "Output directory")->required();
    run_cmd->add_option("--horizon-years", run.horizon_years, "Override the simulated horizon")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_flag("--gravity", run.gravity, "Enable gravity");
    run_cmd->add_flag("--aquifer", run.aquifer, "Enable the aquifer");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a built-in pattern over injection pressures");
    sweep_cmd->add_option("--pattern", sweep.pattern, "direct, four_inject_one_produce or one_inject_four_produce")
        ->required();
    sweep_cmd->add_option("--pressures", sweep.pressure_list, "Injection pressures in MPa, comma separated")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("-o,--out", sweep.out, "Output directory")->required();
    sweep_cmd->add_option("--horizon-years", sweep.horizon_years, "Override the simulated horizon")
        ->check(CLI::NonNegativeNumber);

    double conductivity_scale = 1.0;
    auto* validate_cmd = app.add_subcommand("validate", "Run the analytic verification suite");
    validate_cmd->add_option("--perturb-conductivity", conductivity_scale)->group("")->check(CLI::PositiveNumber);

    std::vector<std::string> report_dirs;
    std::string report_out = ".";
    auto* report_cmd = app.add_subcommand("report", "Overlay completed runs into rates.svg and heat.svg");
    report_cmd->add_option("dirs", report_dirs, "Run directories");
    report_cmd->add_option("-o,--out", report_out, "Output directory");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (run_cmd->parsed())
        return cmd_run(run);
    if (sweep_cmd->parsed())
        return cmd_sweep(sweep);
    if (validate_cmd->parsed())
        return cmd_validate(conductivity_scale);
    return cmd_report(report_dirs, report_out);
}
