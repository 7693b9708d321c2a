/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef GEODERELICT_H
#define GEODERELICT_H

#include <stddef.h>

#if defined(_WIN32)
#define GD_API __declspec(dllexport)
#else
#define GD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
    GD_OK = 0,
    GD_ERR_INVALID_ARGUMENT = 1,
    GD_ERR_DECK = 2,
    GD_ERR_SIMULATION = 3,
    GD_ERR_IO = 4,
    GD_ERR_INTERNAL = 5
} gd_status;

typedef enum gd_well_kind { GD_PRODUCER = 0, GD_INJECTOR = 1 } gd_well_kind;

typedef struct gd_scenario gd_scenario;
typedef struct gd_result gd_result;
typedef struct gd_validation gd_validation;

typedef struct gd_sample {
    double water_rate_m3_per_day;
    double injection_rate_m3_per_day;
    double produced_temp_C;
    double heat_rate_W;
    double cum_heat_J;
} gd_sample;

typedef struct gd_conversion {
    double heat_J;
    double coal_t;
    double carbon_t;
    double co2_t;
    double profit_10k_yuan;
} gd_conversion;

typedef struct gd_annual {
    gd_conversion system;
    double per_producer_heat_J;
    size_t producer_count;
} gd_annual;

typedef struct gd_balance {
    double mass_error_rel;
    double energy_error_rel;
    double max_step_mass_error;
    double max_step_energy_error;
    size_t steps;
    size_t cuts;
} gd_balance;

typedef struct gd_check {
    const char* name;
    int passed;
    double value;
    double tolerance;
    const char* detail;
} gd_check;

GD_API const char* gd_version(void);

/* Details of the last failure on the calling thread. */
GD_API const char* gd_last_error(void);
GD_API const char* gd_last_error_kind(void);
GD_API int gd_last_error_line(void);
GD_API int gd_last_error_column(void);

GD_API gd_status gd_scenario_parse(const char* text, gd_scenario** out);
GD_API gd_status gd_scenario_load(const char* path, gd_scenario** out);
/* pattern: direct, four_inject_one_produce (4i1p), one_inject_four_produce (1i4p). */
GD_API gd_status gd_scenario_builtin(const char* pattern, double injection_pressure_mpa, gd_scenario** out);
GD_API void gd_scenario_free(gd_scenario* scenario);

/* Caller releases the string with gd_string_free. */
GD_API gd_status gd_scenario_render(const gd_scenario* scenario, char** text);
GD_API void gd_string_free(char* text);

GD_API const char* gd_scenario_name(const gd_scenario* scenario);
/* Warnings collected while building the scenario, e.g. off-grid pressures. */
GD_API size_t gd_scenario_warning_count(const gd_scenario* scenario);
GD_API const char* gd_scenario_warning(const gd_scenario* scenario, size_t index);
/* Distance between requested and snapped well spacing, m; 0 without a pattern. */
GD_API gd_status gd_scenario_spacing(const gd_scenario* scenario, double* requested_m, double* actual_m);

GD_API gd_status gd_scenario_set_horizon_years(gd_scenario* scenario, double years);
GD_API gd_status gd_scenario_set_gravity(gd_scenario* scenario, int enabled);
/* Enables the deck's aquifer, or a default bottom aquifer when the deck has none. */
GD_API gd_status gd_scenario_set_aquifer(gd_scenario* scenario, int enabled);

GD_API gd_status gd_run(const gd_scenario* scenario, gd_result** out);
GD_API void gd_result_free(gd_result* result);

GD_API gd_status gd_result_write_artifacts(const gd_result* result, const char* dir);
GD_API size_t gd_result_point_count(const gd_result* result);
GD_API size_t gd_result_well_count(const gd_result* result);
GD_API const char* gd_result_well_name(const gd_result* result, size_t well);
GD_API gd_status gd_result_well_kind(const gd_result* result, size_t well, gd_well_kind* kind);
GD_API gd_status gd_result_time_days(const gd_result* result, size_t point, double* days);
GD_API gd_status gd_result_mean_pressure_mpa(const gd_result* result, size_t point, double* mpa);
GD_API gd_status gd_result_sample(const gd_result* result, size_t point, size_t well, gd_sample* sample);
GD_API gd_status gd_result_annual(const gd_result* result, gd_annual* annual);
GD_API gd_status gd_result_balance(const gd_result* result, gd_balance* balance);

/* Writes table2.csv and table3.csv for results of one pattern at the given pressures (MPa). */
GD_API gd_status gd_write_sweep_tables(const gd_result* const* results, const double* pressures_mpa, size_t count,
                                       const char* dir);

/* Overlays completed run directories into rates.svg and heat.svg in out_dir. */
GD_API gd_status gd_report_svg(const char* const* run_dirs, size_t count, const char* out_dir);

GD_API gd_status gd_validate(double conductivity_scale, gd_validation** out);
GD_API size_t gd_validation_count(const gd_validation* validation);
GD_API gd_status gd_validation_check(const gd_validation* validation, size_t index, gd_check* check);
GD_API void gd_validation_free(gd_validation* validation);

/* Default coal, carbon, CO2 and profit chain. */
GD_API gd_status gd_convert_heat(double heat_J, gd_conversion* out);
GD_API gd_status gd_convert_units(double value, const char* from, const char* to, double* out);

#ifdef __cplusplus
}
#endif

#endif
