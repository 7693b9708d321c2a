/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/geoderelict.h"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

extern "C" int geoderelict_c_header_check(void);

namespace {

const char* deck = R"(name = tiny
[grid]
nx = 5
ny = 5
nz = 2
dx = 20 m
dy = 20 m
dz = 5 m
top = 1200 m
[rock]
porosity = 0.18
permeability = 20 mD
[init]
pressure = 7 MPa
temperature = 45 C
[well.p1]
kind = producer
i = 2
j = 2
layers = 0-1
bhp = 2 MPa
[time]
horizon = 0.25 year
report_interval = 30 d
)";

} // namespace

TEST_SUITE("c_api") {

TEST_CASE("header compiles as C")
{
    CHECK(geoderelict_c_header_check() == 0);
    CHECK(std::strlen(gd_version()) > 0);
}

TEST_CASE("parse, run and inspect")
{
    gd_scenario* s = nullptr;
    REQUIRE(gd_scenario_parse(deck, &s) == GD_OK);
    CHECK(std::string(gd_scenario_name(s)) == "tiny");
    gd_result* r = nullptr;
    REQUIRE(gd_run(s, &r) == GD_OK);
    CHECK(gd_result_point_count(r) == 4);
    CHECK(gd_result_well_count(r) == 1);
    CHECK(std::string(gd_result_well_name(r, 0)) == "p1");
    gd_well_kind kind = GD_INJECTOR;
    CHECK(gd_result_well_kind(r, 0, &kind) == GD_OK);
    CHECK(kind == GD_PRODUCER);
    double days = 0.0;
    CHECK(gd_result_time_days(r, 3, &days) == GD_OK);
    CHECK(days == doctest::Approx(0.25 * 365.25));
    gd_sample sample{};
    CHECK(gd_result_sample(r, 0, 0, &sample) == GD_OK);
    CHECK(sample.water_rate_m3_per_day > 0.0);
    CHECK(sample.injection_rate_m3_per_day == 0.0);
    gd_annual annual{};
    CHECK(gd_result_annual(r, &annual) == GD_OK);
    CHECK(annual.producer_count == 1);
    CHECK(annual.system.heat_J > 0.0);
    gd_balance b{};
    CHECK(gd_result_balance(r, &b) == GD_OK);
    CHECK(b.mass_error_rel < 1e-4);
    CHECK(b.steps > 0);

    CHECK(gd_result_sample(r, 99, 0, &sample) == GD_ERR_INVALID_ARGUMENT);
    CHECK(gd_result_sample(r, 0, 7, &sample) == GD_ERR_INVALID_ARGUMENT);
    CHECK(std::string(gd_result_well_name(r, 7)).empty());
    gd_result_free(r);
    gd_scenario_free(s);
}

TEST_CASE("deck errors carry kind and location")
{
    std::string bad = deck;
    bad.replace(bad.find("20 mD"), 5, "20 psi");
    gd_scenario* s = nullptr;
    CHECK(gd_scenario_parse(bad.c_str(), &s) == GD_ERR_DECK);
    CHECK(s == nullptr);
    CHECK(std::string(gd_last_error_kind()) == "unit_mismatch");
    CHECK(gd_last_error_line() == 12);
    CHECK(gd_last_error_column() > 0);
    CHECK(std::string(gd_last_error()).find("permeability") != std::string::npos);
}

TEST_CASE("null arguments are rejected")
{
    gd_scenario* s = nullptr;
    CHECK(gd_scenario_parse(nullptr, &s) == GD_ERR_INVALID_ARGUMENT);
    CHECK(gd_scenario_parse(deck, nullptr) == GD_ERR_INVALID_ARGUMENT);
    CHECK(gd_run(nullptr, nullptr) == GD_ERR_INVALID_ARGUMENT);
    CHECK(gd_convert_heat(1.0, nullptr) == GD_ERR_INVALID_ARGUMENT);
    gd_scenario_free(nullptr);
    gd_result_free(nullptr);
    gd_validation_free(nullptr);
    gd_string_free(nullptr);
}

TEST_CASE("builtins, overrides and render")
{
    gd_scenario* s = nullptr;
    CHECK(gd_scenario_builtin("nonsense", 15.0, &s) == GD_ERR_INVALID_ARGUMENT);
    REQUIRE(gd_scenario_builtin("4i1p", 15.0, &s) == GD_OK);
    CHECK(gd_scenario_warning_count(s) == 0);
    double requested = 0.0;
    double actual = 0.0;
    CHECK(gd_scenario_spacing(s, &requested, &actual) == GD_OK);
    CHECK(requested == 200.0);
    CHECK(actual == doctest::Approx(197.99).epsilon(1e-4));
    CHECK(gd_scenario_set_horizon_years(s, -1.0) == GD_ERR_INVALID_ARGUMENT);
    CHECK(gd_scenario_set_horizon_years(s, 2.0) == GD_OK);
    CHECK(gd_scenario_set_gravity(s, 1) == GD_OK);
    CHECK(gd_scenario_set_aquifer(s, 1) == GD_OK);
    char* text = nullptr;
    REQUIRE(gd_scenario_render(s, &text) == GD_OK);
    const std::string rendered = text;
    gd_string_free(text);
    CHECK(rendered.find("horizon = 2 year") != std::string::npos);
    CHECK(rendered.find("gravity = true") != std::string::npos);
    CHECK(rendered.find("[aquifer]") != std::string::npos);
    gd_scenario* again = nullptr;
    REQUIRE(gd_scenario_parse(rendered.c_str(), &again) == GD_OK);
    char* text2 = nullptr;
    REQUIRE(gd_scenario_render(again, &text2) == GD_OK);
    CHECK(rendered == text2);
    gd_string_free(text2);
    gd_scenario_free(again);
    gd_scenario_free(s);

    CHECK(gd_scenario_builtin("one_inject_four_produce", 12.0, &s) == GD_OK);
    CHECK(gd_scenario_warning_count(s) == 1);
    CHECK(std::string(gd_scenario_warning(s, 5)).empty());
    gd_scenario_free(s);
}

TEST_CASE("conversions")
{
    gd_conversion c{};
    REQUIRE(gd_convert_heat(5.68e12, &c) == GD_OK);
    CHECK(c.coal_t == doctest::Approx(193.8).epsilon(3e-4));
    double v = 0.0;
    CHECK(gd_convert_units(20.0, "mD", "m2", &v) == GD_OK);
    CHECK(v == doctest::Approx(1.9738466e-14));
    CHECK(gd_convert_units(20.0, "psi", "m2", &v) == GD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("validation handle")
{
    gd_validation* v = nullptr;
    REQUIRE(gd_validate(1.0, &v) == GD_OK);
    REQUIRE(gd_validation_count(v) == 6);
    gd_check c{};
    CHECK(gd_validation_check(v, 0, &c) == GD_OK);
    CHECK(std::string(c.name) == "darcy_1d");
    CHECK(c.passed);
    CHECK(gd_validation_check(v, 6, &c) == GD_ERR_INVALID_ARGUMENT);
    gd_validation_free(v);
    CHECK(gd_validate(0.0, &v) == GD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("artifacts through the C API")
{
    gd_scenario* s = nullptr;
    REQUIRE(gd_scenario_parse(deck, &s) == GD_OK);
    gd_result* r = nullptr;
    REQUIRE(gd_run(s, &r) == GD_OK);
    const auto dir = std::filesystem::temp_directory_path() / "geoderelict_capi";
    std::filesystem::remove_all(dir);
    CHECK(gd_result_write_artifacts(r, dir.string().c_str()) == GD_OK);
    CHECK(std::filesystem::exists(dir / "timeseries.csv"));
    const std::string d = dir.string();
    const char* dirs[] = {d.c_str()};
    const auto out = dir / "report";
    CHECK(gd_report_svg(dirs, 1, out.string().c_str()) == GD_OK);
    CHECK(std::filesystem::exists(out / "rates.svg"));
    CHECK(gd_report_svg(dirs, 0, out.string().c_str()) == GD_ERR_INVALID_ARGUMENT);
    const gd_result* results[] = {r};
    const double pressures[] = {15.0};
    CHECK(gd_write_sweep_tables(results, pressures, 1, d.c_str()) == GD_OK);
    CHECK(std::filesystem::exists(dir / "table2.csv"));
    std::filesystem::remove_all(dir);
    gd_result_free(r);
    gd_scenario_free(s);
}

}
