/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/metrics.hpp"
#include "geoderelict/scenario.hpp"
#include "geoderelict/timeseries.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoderelict {

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, "%.17g".
std::string format_number(double v);

inline constexpr const char* timeseries_header =
    "time_days,well,water_rate_m3_per_day,injection_rate_m3_per_day,produced_temp_C,heat_rate_W,cum_heat_J,"
    "mean_pressure_MPa";

/// One row per (report time, well), report times ascending, wells in deck order.
std::string timeseries_csv(const TimeSeries& series);
std::string summary_json(const ScenarioConfig& config, const TimeSeries& series);

struct SweepRow {
    Pattern pattern = Pattern::custom;
    double pressure_mpa = 0.0;
    double single_well_J = 0.0;   // per producer, annual
    double system_J = 0.0;        // annual
    HeatConversion system;
};

SweepRow sweep_row(const ScenarioConfig& config, const TimeSeries& series, double pressure_mpa);
std::string table2_csv(const std::vector<SweepRow>& rows);
std::string table3_csv(const std::vector<SweepRow>& rows);

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained line chart; identical input gives identical bytes.
std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Curve>& curves);

/// Totals per report time of one completed run directory.
struct RunCurves {
    std::string label;
    std::vector<double> time_days;
    std::vector<double> production_rate;   // m^3/d over producers
    std::vector<double> injection_rate;    // m^3/d over injectors
    std::vector<double> system_cum_heat;   // J over producers
    bool has_injectors = false;
};

RunCurves curves_from_csv(const std::string& label, const std::string& csv, const std::vector<std::string>& producers,
                          const std::vector<std::string>& injectors, const std::string& source_name);

/// Reads timeseries.csv and summary.json. Throws ReportError naming the
/// offending file.
RunCurves read_run_dir(const std::filesystem::path& dir);

std::string rates_svg(const std::vector<RunCurves>& runs);
std::string heat_svg(const std::vector<RunCurves>& runs);

/// Writes timeseries.csv, summary.json, rates.svg and heat.svg into `dir`
/// (created if needed). Each file is written to a temporary name first.
void write_run_artifacts(const std::filesystem::path& dir, const ScenarioConfig& config, const TimeSeries& series);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace geoderelict
