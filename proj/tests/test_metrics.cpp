/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/metrics.hpp"
#include "geoderelict/units.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace geoderelict;

namespace {

// Constant heat rate sampled every `interval` days up to `years`.
TimeSeries constant_rate(double watts, double years, double interval = 30.0)
{
    TimeSeries s;
    s.well_names = {"p1", "i1"};
    s.well_kinds = {WellKind::producer, WellKind::injector};
    s.horizon_years = years;
    const double end = years * 365.25;
    for (double t = interval;; t += interval) {
        const double day = std::min(t, end);
        ReportPoint p;
        p.time_days = day;
        p.wells.resize(2);
        p.wells[0].heat_rate_W = watts;
        p.wells[0].cum_heat_J = watts * day * 86400.0;
        s.points.push_back(p);
        if (day >= end)
            break;
    }
    return s;
}

// Least-squares slope through the origin.
double fit(const std::vector<double>& x, const std::vector<double>& y)
{
    double xy = 0.0;
    double xx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xy += x[i] * y[i];
        xx += x[i] * x[i];
    }
    return xy / xx;
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("annual heat from a constant rate")
{
    const EmissionFactors f;
    const auto s = constant_rate(2.4435e5, 1.0);
    const auto a = annualize(s, 1.0, f);
    CHECK(a.system.heat_J == doctest::Approx(2.4435e5 * 365.25 * 86400.0).epsilon(1e-12));
    CHECK(a.system.heat_J == doctest::Approx(7.71e12).epsilon(1e-3));
    CHECK(a.producer_count == 1);
    CHECK(a.per_producer_heat_J == a.system.heat_J);
    CHECK(a.wells[1].annual.heat_J == 0.0);

    const auto zero = annualize(constant_rate(0.0, 1.0), 1.0, f);
    CHECK(zero.system.heat_J == 0.0);
    CHECK(zero.system.coal_t == 0.0);
    CHECK(zero.system.emissions.profit_10k_yuan == 0.0);

    const auto two = annualize(constant_rate(2.4435e5, 2.0), 2.0, f);
    CHECK(two.system.heat_J == doctest::Approx(a.system.heat_J).epsilon(1e-12));
}

TEST_CASE("first-year accounting")
{
    const EmissionFactors f;
    const auto s = constant_rate(1e5, 3.0, 7.0);
    const auto a = annualize(s, 3.0, f, Accounting::first_year);
    CHECK(a.system.heat_J == doctest::Approx(1e5 * units::year).epsilon(1e-12));
    CHECK_THROWS(annualize(TimeSeries{}, 1.0, f));
    CHECK_THROWS(annualize(s, 0.0, f));
}

TEST_CASE("standard coal")
{
    const EmissionFactors f;
    CHECK(coal_equivalent(5.68e12, f) == doctest::Approx(193.8).epsilon(0.05 / 193.8));
    CHECK(std::abs(coal_equivalent(9.65e12, f) - 329.2) <= 0.5);
    CHECK(coal_equivalent(0.0, f) == 0.0);
    for (double coal : {0.5, 193.8, 417.0, 1e6})
        CHECK(coal_equivalent(coal * f.coal_energy, f) == doctest::Approx(coal).epsilon(1e-12));
}

TEST_CASE("carbon, CO2 and profit")
{
    const EmissionFactors f;
    const auto e = emissions_and_profit(193.8, f);
    CHECK(e.carbon_t == doctest::Approx(129.8).epsilon(0.05 / 129.8));
    CHECK(e.co2_t == doctest::Approx(476.1).epsilon(0.05 / 476.1));
    CHECK(e.profit_10k_yuan == doctest::Approx(38.8).epsilon(0.05 / 38.8));
    CHECK(emissions_and_profit(417.0, f).co2_t == doctest::Approx(1024.3).epsilon(5e-4));
    const auto z = emissions_and_profit(0.0, f);
    CHECK(z.carbon_t == 0.0);
    CHECK(z.co2_t == 0.0);
    CHECK(z.profit_10k_yuan == 0.0);
}

TEST_CASE("default conversion factors are the least-squares fit")
{
    const std::vector<double> coal{193.8, 263.0, 329.2, 318.2, 368.6, 417.0};
    const std::vector<double> carbon{129.8, 176.2, 220.6, 213.2, 247.0, 279.4};
    const std::vector<double> co2{476.1, 646.2, 808.8, 781.7, 905.5, 1024.3};
    const std::vector<double> profit{38.8, 52.6, 65.8, 63.6, 73.7, 83.4};
    const EmissionFactors f;
    CHECK(fit(coal, carbon) == doctest::Approx(f.carbon_per_coal).epsilon(3e-3));
    CHECK(fit(carbon, co2) == doctest::Approx(f.co2_per_carbon).epsilon(3e-3));
    CHECK(fit(coal, profit) * 1e4 == doctest::Approx(f.profit_per_coal).epsilon(3e-3));
}

TEST_CASE("conversions are linear")
{
    const EmissionFactors f;
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> u(0, 1LL << 40);
    for (int n = 0; n < 100; ++n) {
        const double a = static_cast<double>(u(rng)) * 1024.0;
        const double b = static_cast<double>(u(rng)) * 1024.0;
        const auto ca = convert_heat(a, f);
        const auto cb = convert_heat(b, f);
        const auto cab = convert_heat(a + b, f);
        CHECK(cab.coal_t == doctest::Approx(ca.coal_t + cb.coal_t).epsilon(1e-15));
        CHECK(cab.emissions.co2_t == doctest::Approx(ca.emissions.co2_t + cb.emissions.co2_t).epsilon(1e-15));
        CHECK(cab.emissions.profit_10k_yuan
              == doctest::Approx(ca.emissions.profit_10k_yuan + cb.emissions.profit_10k_yuan).epsilon(1e-15));
    }
}

TEST_CASE("emission factors must be positive")
{
    EmissionFactors f;
    f.coal_energy = 0.0;
    CHECK_THROWS(f.validate());
    f = EmissionFactors{};
    f.profit_per_coal = -1.0;
    CHECK_THROWS(f.validate());
}

}
