/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/engine.hpp"
#include "geoderelict/metrics.hpp"
#include "geoderelict/report.hpp"
#include "geoderelict/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace geoderelict;
using nlohmann::json;

namespace {

const TimeSeries& short_injection()
{
    static const TimeSeries ts = [] {
        auto c = builtin_scenario(Pattern::one_inject_four_produce, 15.0);
        c.horizon_years = 1.0;
        return run(c);
    }();
    return ts;
}

ScenarioConfig short_config()
{
    auto c = builtin_scenario(Pattern::one_inject_four_produce, 15.0);
    c.horizon_years = 1.0;
    return c;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("geoderelict_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("number format round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 2.9307e10, 6.02214076e23, -1e-300, 0.0}) {
        const auto s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("timeseries CSV layout")
{
    const auto& ts = short_injection();
    const auto rows = lines(timeseries_csv(ts));
    REQUIRE(!rows.empty());
    CHECK(rows[0]
          == "time_days,well,water_rate_m3_per_day,injection_rate_m3_per_day,produced_temp_C,heat_rate_W,cum_heat_J,"
             "mean_pressure_MPa");
    const std::size_t reports = static_cast<std::size_t>(std::ceil(365.25 / 30.0));
    CHECK(rows.size() == 1 + reports * ts.well_names.size());
    CHECK(rows[1].rfind("30,i1,", 0) == 0);
    CHECK(rows.back().rfind("365.25,p4,", 0) == 0);
}

TEST_CASE("summary totals equal the last CSV rows")
{
    const auto c = short_config();
    const auto& ts = short_injection();
    const auto j = json::parse(summary_json(c, ts));
    CHECK(j.at("scenario") == c.name);
    CHECK(j.at("pattern") == "one_inject_four_produce");
    const auto& last = ts.points.back();
    double system = 0.0;
    for (std::size_t w = 0; w < ts.well_names.size(); ++w) {
        const auto& jw = j.at("wells").at(w);
        CHECK(jw.at("name") == ts.well_names[w]);
        CHECK(jw.at("cum_heat_J").get<double>() == last.wells[w].cum_heat_J);
        if (ts.well_kinds[w] == WellKind::producer)
            system += last.wells[w].cum_heat_J;
    }
    CHECK(j.at("system").at("cum_heat_J").get<double>() == doctest::Approx(system).epsilon(1e-12));
    const auto a = annualize(ts, c.horizon_years, c.factors, c.accounting);
    CHECK(j.at("system").at("annual").at("annual_heat_J").get<double>()
          == doctest::Approx(a.system.heat_J).epsilon(1e-12));
    CHECK(j.at("system").at("producer_count") == 4);
    CHECK(j.at("system").at("per_producer_annual_heat_J").get<double>() * 4.0
          == doctest::Approx(a.system.heat_J).epsilon(1e-12));
}

TEST_CASE("sweep tables")
{
    const auto c = short_config();
    const auto row = sweep_row(c, short_injection(), 15.0);
    CHECK(row.system_J == doctest::Approx(4.0 * row.single_well_J).epsilon(1e-12));
    const auto t2 = lines(table2_csv({row}));
    CHECK(t2.size() == 2);
    CHECK(t2[0] == "pattern,injection_pressure_MPa,single_well_annual_heat_J,system_annual_heat_J");
    CHECK(t2[1].rfind("one_inject_four_produce,15,", 0) == 0);
    const auto t3 = lines(table3_csv({row}));
    CHECK(t3[0] == "pattern,injection_pressure_MPa,annual_heat_J,coal_t,carbon_t,co2_t,profit_10k_yuan");
}

TEST_CASE("SVG output is deterministic and self-contained")
{
    std::vector<Curve> curves{{"a", {0, 1, 2, 3}, {3, 2, 1.5, 1}}, {"b & c", {0, 1, 2, 3}, {0, 1, 4, 9}}};
    const auto s1 = line_chart_svg("Rates", "t", "q", curves);
    const auto s2 = line_chart_svg("Rates", "t", "q", curves);
    CHECK(s1 == s2);
    CHECK(s1.rfind("<?xml", 0) == 0);
    CHECK(s1.find("<svg") != std::string::npos);
    CHECK(s1.find("</svg>") != std::string::npos);
    CHECK(s1.find("b &amp; c") != std::string::npos);
    CHECK(s1.find("http://www.w3.org/2000/svg") != std::string::npos);
    CHECK(s1.find("href") == std::string::npos);
    std::size_t polylines = 0;
    for (auto p = s1.find("<polyline"); p != std::string::npos; p = s1.find("<polyline", p + 1))
        ++polylines;
    CHECK(polylines == 2);
}

TEST_CASE("CSV reader rejects damage and names the source")
{
    const auto csv = timeseries_csv(short_injection());
    const std::vector<std::string> producers{"p1", "p2", "p3", "p4"};
    const std::vector<std::string> injectors{"i1"};
    const auto curves = curves_from_csv("x", csv, producers, injectors, "t.csv");
    CHECK(curves.time_days.size() == short_injection().points.size());
    CHECK(curves.has_injectors);

    auto expect_error = [&](const std::string& text) {
        try {
            curves_from_csv("x", text, producers, injectors, "damaged.csv");
            FAIL("accepted damaged CSV");
        }
        catch (const ReportError& e) {
            CHECK(std::string(e.what()).find("damaged.csv") != std::string::npos);
        }
    };
    expect_error("");
    expect_error("time,well\n");
    expect_error(std::string(timeseries_header) + "\n");
    expect_error(std::string(timeseries_header) + "\n30,p1,1,0,40,5\n");
    expect_error(std::string(timeseries_header) + "\n30,p1,x,0,40,5,6,7\n");
    expect_error(std::string(timeseries_header) + "\n30,zz,1,0,40,5,6,7\n");
    expect_error(std::string(timeseries_header) + "\n30,p1,1,0,40,5,6,7\n20,p1,1,0,40,5,6,7\n");
}

TEST_CASE("run artifacts")
{
    const auto dir = scratch("artifacts");
    write_run_artifacts(dir, short_config(), short_injection());
    for (const char* f : {"timeseries.csv", "summary.json", "rates.svg", "heat.svg"})
        CHECK(std::filesystem::exists(dir / f));
    for (const auto& e : std::filesystem::directory_iterator(dir))
        CHECK(e.path().extension() != ".tmp");
    CHECK(slurp(dir / "timeseries.csv") == timeseries_csv(short_injection()));
    const auto curves = read_run_dir(dir);
    CHECK(curves.label == short_config().name);
    CHECK(rates_svg({curves}) == slurp(dir / "rates.svg"));
    CHECK(heat_svg({curves}) == slurp(dir / "heat.svg"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("missing run directory names the file")
{
    const auto dir = scratch("missing");
    try {
        read_run_dir(dir);
        FAIL("no error");
    }
    catch (const ReportError& e) {
        CHECK(std::string(e.what()).find("summary.json") != std::string::npos);
    }
}

}
