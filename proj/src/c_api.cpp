/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/geoderelict.h"

#include "geoderelict/deck.hpp"
#include "geoderelict/engine.hpp"
#include "geoderelict/metrics.hpp"
#include "geoderelict/report.hpp"
#include "geoderelict/validation.hpp"

#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

using namespace geoderelict;

struct gd_scenario {
    ScenarioConfig config;
    std::vector<std::string> warnings;
};

struct gd_result {
    ScenarioConfig config;
    TimeSeries series;
};

struct gd_validation {
    std::vector<ValidationCheck> checks;
};

namespace {

struct LastError {
    std::string message;
    std::string kind;
    int line = 0;
    int column = 0;
};

thread_local LastError last_error;

gd_status fail(gd_status status, std::string message, std::string kind = {}, int line = 0, int column = 0)
{
    last_error = LastError{std::move(message), std::move(kind), line, column};
    return status;
}

gd_status ok()
{
    last_error = LastError{};
    return GD_OK;
}

// Maps exceptions thrown by the core onto status codes.
template <class F>
gd_status guarded(F&& f)
{
    try {
        return f();
    }
    catch (const DeckError& e) {
        return fail(e.kind() == DeckErrorKind::io ? GD_ERR_IO : GD_ERR_DECK, e.what(), std::string(to_string(e.kind())),
                    e.line(), e.column());
    }
    catch (const SimulationError& e) {
        return fail(GD_ERR_SIMULATION, e.what(), "simulation");
    }
    catch (const ReportError& e) {
        return fail(GD_ERR_IO, e.what(), "io");
    }
    catch (const std::invalid_argument& e) {
        return fail(GD_ERR_INVALID_ARGUMENT, e.what(), "invalid_argument");
    }
    catch (const std::domain_error& e) {
        return fail(GD_ERR_SIMULATION, e.what(), "simulation");
    }
    catch (const std::filesystem::filesystem_error& e) {
        return fail(GD_ERR_IO, e.what(), "io");
    }
    catch (const std::bad_alloc&) {
        return fail(GD_ERR_INTERNAL, "out of memory", "internal");
    }
    catch (const std::exception& e) {
        return fail(GD_ERR_INTERNAL, e.what(), "internal");
    }
    catch (...) {
        return fail(GD_ERR_INTERNAL, "unknown error", "internal");
    }
}

gd_status null_argument(const char* what)
{
    return fail(GD_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null", "invalid_argument");
}

gd_conversion to_c(const HeatConversion& c)
{
    return gd_conversion{c.heat_J, c.coal_t, c.emissions.carbon_t, c.emissions.co2_t, c.emissions.profit_10k_yuan};
}

} // namespace

extern "C" {

const char* gd_version(void)
{
    return "1.0.0";
}

const char* gd_last_error(void)
{
    return last_error.message.c_str();
}

const char* gd_last_error_kind(void)
{
    return last_error.kind.c_str();
}

int gd_last_error_line(void)
{
    return last_error.line;
}

int gd_last_error_column(void)
{
    return last_error.column;
}

gd_status gd_scenario_parse(const char* text, gd_scenario** out)
{
    if (!text || !out)
        return null_argument("text and out");
    *out = nullptr;
    return guarded([&] {
        *out = new gd_scenario{parse_deck(text), {}};
        return ok();
    });
}

gd_status gd_scenario_load(const char* path, gd_scenario** out)
{
    if (!path || !out)
        return null_argument("path and out");
    *out = nullptr;
    return guarded([&] {
        *out = new gd_scenario{load_deck(path), {}};
        return ok();
    });
}

gd_status gd_scenario_builtin(const char* pattern, double injection_pressure_mpa, gd_scenario** out)
{
    if (!pattern || !out)
        return null_argument("pattern and out");
    *out = nullptr;
    const auto p = pattern_from_string(pattern);
    if (!p || *p == Pattern::custom)
        return fail(GD_ERR_INVALID_ARGUMENT, std::string("unknown pattern '") + pattern + "'", "invalid_argument");
    return guarded([&] {
        auto s = std::make_unique<gd_scenario>();
        s->config = builtin_scenario(*p, injection_pressure_mpa, &s->warnings);
        *out = s.release();
        return ok();
    });
}

void gd_scenario_free(gd_scenario* scenario)
{
    delete scenario;
}

gd_status gd_scenario_render(const gd_scenario* scenario, char** text)
{
    if (!scenario || !text)
        return null_argument("scenario and text");
    return guarded([&] {
        const std::string s = render_deck(scenario->config);
        char* buf = new char[s.size() + 1];
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *text = buf;
        return ok();
    });
}

void gd_string_free(char* text)
{
    delete[] text;
}

const char* gd_scenario_name(const gd_scenario* scenario)
{
    return scenario ? scenario->config.name.c_str() : "";
}

size_t gd_scenario_warning_count(const gd_scenario* scenario)
{
    return scenario ? scenario->warnings.size() : 0;
}

const char* gd_scenario_warning(const gd_scenario* scenario, size_t index)
{
    if (!scenario || index >= scenario->warnings.size())
        return "";
    return scenario->warnings[index].c_str();
}

gd_status gd_scenario_spacing(const gd_scenario* scenario, double* requested_m, double* actual_m)
{
    if (!scenario || !requested_m || !actual_m)
        return null_argument("scenario and outputs");
    return guarded([&] {
        const ScenarioConfig& c = scenario->config;
        *requested_m = 0.0;
        *actual_m = 0.0;
        if (c.pattern == Pattern::four_inject_one_produce || c.pattern == Pattern::one_inject_four_produce) {
            *requested_m = c.spacing;
            *actual_m = pattern_layout(c.spacing, c.grid).actual_spacing;
        }
        return ok();
    });
}

gd_status gd_scenario_set_horizon_years(gd_scenario* scenario, double years)
{
    if (!scenario)
        return null_argument("scenario");
    if (!(years >= 0.0))
        return fail(GD_ERR_INVALID_ARGUMENT, "horizon must be >= 0 years", "invalid_argument");
    scenario->config.horizon_years = years;
    return ok();
}

gd_status gd_scenario_set_gravity(gd_scenario* scenario, int enabled)
{
    if (!scenario)
        return null_argument("scenario");
    return guarded([&] {
        ScenarioConfig c = scenario->config;
        c.gravity = enabled != 0;
        c.validate();
        scenario->config = std::move(c);
        return ok();
    });
}

gd_status gd_scenario_set_aquifer(gd_scenario* scenario, int enabled)
{
    if (!scenario)
        return null_argument("scenario");
    return guarded([&] {
        ScenarioConfig c = scenario->config;
        if (enabled && c.aquifer == AquiferModel{}) {
            // Bottom aquifer holding ten reservoir pore volumes at initial pressure.
            const double pv = c.rock.phi * c.grid.nx * c.grid.dx * c.grid.ny * c.grid.dy * c.grid.nz * c.grid.dz;
            c.aquifer.attachment = AquiferAttachment::bottom;
            c.aquifer.initial_pressure = c.initial_pressure;
            c.aquifer.water_volume = 10.0 * pv;
            c.aquifer.productivity = 100.0 / (units::day * units::mpa);
        }
        c.aquifer.enabled = enabled != 0;
        c.validate();
        scenario->config = std::move(c);
        return ok();
    });
}

gd_status gd_run(const gd_scenario* scenario, gd_result** out)
{
    if (!scenario || !out)
        return null_argument("scenario and out");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<gd_result>();
        r->config = scenario->config;
        r->series = run(scenario->config);
        *out = r.release();
        return ok();
    });
}

void gd_result_free(gd_result* result)
{
    delete result;
}

gd_status gd_result_write_artifacts(const gd_result* result, const char* dir)
{
    if (!result || !dir)
        return null_argument("result and dir");
    return guarded([&] {
        write_run_artifacts(dir, result->config, result->series);
        return ok();
    });
}

size_t gd_result_point_count(const gd_result* result)
{
    return result ? result->series.points.size() : 0;
}

size_t gd_result_well_count(const gd_result* result)
{
    return result ? result->series.well_names.size() : 0;
}

const char* gd_result_well_name(const gd_result* result, size_t well)
{
    if (!result || well >= result->series.well_names.size())
        return "";
    return result->series.well_names[well].c_str();
}

gd_status gd_result_well_kind(const gd_result* result, size_t well, gd_well_kind* kind)
{
    if (!result || !kind)
        return null_argument("result and kind");
    if (well >= result->series.well_kinds.size())
        return fail(GD_ERR_INVALID_ARGUMENT, "well index out of range", "invalid_argument");
    *kind = result->series.well_kinds[well] == WellKind::injector ? GD_INJECTOR : GD_PRODUCER;
    return ok();
}

gd_status gd_result_time_days(const gd_result* result, size_t point, double* days)
{
    if (!result || !days)
        return null_argument("result and days");
    if (point >= result->series.points.size())
        return fail(GD_ERR_INVALID_ARGUMENT, "point index out of range", "invalid_argument");
    *days = result->series.points[point].time_days;
    return ok();
}

gd_status gd_result_mean_pressure_mpa(const gd_result* result, size_t point, double* mpa)
{
    if (!result || !mpa)
        return null_argument("result and mpa");
    if (point >= result->series.points.size())
        return fail(GD_ERR_INVALID_ARGUMENT, "point index out of range", "invalid_argument");
    *mpa = result->series.points[point].mean_pressure_MPa;
    return ok();
}

gd_status gd_result_sample(const gd_result* result, size_t point, size_t well, gd_sample* sample)
{
    if (!result || !sample)
        return null_argument("result and sample");
    if (point >= result->series.points.size() || well >= result->series.well_names.size())
        return fail(GD_ERR_INVALID_ARGUMENT, "point or well index out of range", "invalid_argument");
    const WellSample& w = result->series.points[point].wells[well];
    *sample = gd_sample{w.water_rate_m3_per_day, w.injection_rate_m3_per_day, w.produced_temp_C, w.heat_rate_W,
                        w.cum_heat_J};
    return ok();
}

gd_status gd_result_annual(const gd_result* result, gd_annual* annual)
{
    if (!result || !annual)
        return null_argument("result and annual");
    return guarded([&] {
        const AnnualSummary a = annualize(result->series, result->series.horizon_years, result->config.factors,
                                          result->config.accounting);
        *annual = gd_annual{to_c(a.system), a.per_producer_heat_J, a.producer_count};
        return ok();
    });
}

gd_status gd_result_balance(const gd_result* result, gd_balance* balance)
{
    if (!result || !balance)
        return null_argument("result and balance");
    const TimeSeries& s = result->series;
    *balance = gd_balance{s.cumulative_balance.mass_error_rel, s.cumulative_balance.energy_error_rel,
                          s.max_step_mass_error, s.max_step_energy_error, s.steps, s.cuts};
    return ok();
}

gd_status gd_write_sweep_tables(const gd_result* const* results, const double* pressures_mpa, size_t count,
                                const char* dir)
{
    if (!results || !pressures_mpa || !dir)
        return null_argument("results, pressures and dir");
    return guarded([&] {
        std::vector<SweepRow> rows;
        for (size_t i = 0; i < count; ++i) {
            if (!results[i])
                return null_argument("result entry");
            rows.push_back(sweep_row(results[i]->config, results[i]->series, pressures_mpa[i]));
        }
        std::filesystem::create_directories(dir);
        write_file(std::filesystem::path(dir) / "table2.csv", table2_csv(rows));
        write_file(std::filesystem::path(dir) / "table3.csv", table3_csv(rows));
        return ok();
    });
}

gd_status gd_report_svg(const char* const* run_dirs, size_t count, const char* out_dir)
{
    if (!run_dirs || !out_dir)
        return null_argument("run_dirs and out_dir");
    if (count == 0)
        return fail(GD_ERR_INVALID_ARGUMENT, "at least one run directory is required", "invalid_argument");
    return guarded([&] {
        std::vector<RunCurves> runs;
        for (size_t i = 0; i < count; ++i)
            runs.push_back(read_run_dir(run_dirs[i]));
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "rates.svg", rates_svg(runs));
        write_file(std::filesystem::path(out_dir) / "heat.svg", heat_svg(runs));
        return ok();
    });
}

gd_status gd_validate(double conductivity_scale, gd_validation** out)
{
    if (!out)
        return null_argument("out");
    *out = nullptr;
    if (!(conductivity_scale > 0.0))
        return fail(GD_ERR_INVALID_ARGUMENT, "conductivity scale must be > 0", "invalid_argument");
    return guarded([&] {
        ValidationOptions opt;
        opt.conductivity_scale = conductivity_scale;
        *out = new gd_validation{run_validation(opt)};
        return ok();
    });
}

size_t gd_validation_count(const gd_validation* validation)
{
    return validation ? validation->checks.size() : 0;
}

gd_status gd_validation_check(const gd_validation* validation, size_t index, gd_check* check)
{
    if (!validation || !check)
        return null_argument("validation and check");
    if (index >= validation->checks.size())
        return fail(GD_ERR_INVALID_ARGUMENT, "check index out of range", "invalid_argument");
    const ValidationCheck& c = validation->checks[index];
    *check = gd_check{c.name.c_str(), c.passed ? 1 : 0, c.value, c.tolerance, c.detail.c_str()};
    return ok();
}

void gd_validation_free(gd_validation* validation)
{
    delete validation;
}

gd_status gd_convert_heat(double heat_J, gd_conversion* out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = to_c(convert_heat(heat_J, EmissionFactors{}));
        return ok();
    });
}

gd_status gd_convert_units(double value, const char* from, const char* to, double* out)
{
    if (!from || !to || !out)
        return null_argument("from, to and out");
    return guarded([&] {
        *out = convert_units(value, from, to);
        return ok();
    });
}

} // extern "C"
