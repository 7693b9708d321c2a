/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace geoderelict {

using json = nlohmann::ordered_json;

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timeseries_csv(const TimeSeries& s)
{
    std::string out = timeseries_header;
    out += '\n';
    for (const ReportPoint& p : s.points)
        for (std::size_t w = 0; w < s.well_names.size(); ++w) {
            const WellSample& x = p.wells[w];
            out += format_number(p.time_days) + ',' + s.well_names[w] + ',' + format_number(x.water_rate_m3_per_day)
                   + ',' + format_number(x.injection_rate_m3_per_day) + ',' + format_number(x.produced_temp_C) + ','
                   + format_number(x.heat_rate_W) + ',' + format_number(x.cum_heat_J) + ','
                   + format_number(p.mean_pressure_MPa) + '\n';
        }
    return out;
}

namespace {

json conversion_json(const HeatConversion& c)
{
    return json{{"annual_heat_J", c.heat_J},
                {"coal_t", c.coal_t},
                {"carbon_t", c.emissions.carbon_t},
                {"co2_t", c.emissions.co2_t},
                {"profit_10k_yuan", c.emissions.profit_10k_yuan}};
}

} // namespace

std::string summary_json(const ScenarioConfig& config, const TimeSeries& s)
{
    json j;
    j["scenario"] = config.name;
    j["pattern"] = std::string(to_string(config.pattern));
    j["horizon_years"] = s.horizon_years;
    j["report_interval_days"] = config.report_interval_days;
    j["accounting"] = config.accounting == Accounting::horizon_average ? "horizon_average" : "first_year";
    j["gravity"] = config.gravity;
    j["aquifer"] = config.aquifer.enabled;
    j["report_points"] = s.points.size();

    json wells = json::array();
    const bool any = !s.points.empty();
    const AnnualSummary annual = any && s.horizon_years > 0.0
                                     ? annualize(s, s.horizon_years, config.factors, config.accounting)
                                     : AnnualSummary{};
    double system_cum = 0.0;
    for (std::size_t w = 0; w < s.well_names.size(); ++w) {
        const double cum = any ? s.points.back().wells[w].cum_heat_J : 0.0;
        json e{{"name", s.well_names[w]}, {"kind", std::string(to_string(s.well_kinds[w]))}, {"cum_heat_J", cum}};
        if (any)
            e["annual"] = conversion_json(annual.wells[w].annual);
        wells.push_back(e);
        if (s.well_kinds[w] == WellKind::producer)
            system_cum += cum;
    }
    j["wells"] = wells;

    json system{{"cum_heat_J", system_cum}, {"producer_count", s.producer_count()}};
    if (any) {
        system["annual"] = conversion_json(annual.system);
        system["per_producer_annual_heat_J"] = annual.per_producer_heat_J;
    }
    j["system"] = system;
    j["balance"] = json{{"mass_error_rel", s.cumulative_balance.mass_error_rel},
                        {"energy_error_rel", s.cumulative_balance.energy_error_rel},
                        {"max_step_mass_error", s.max_step_mass_error},
                        {"max_step_energy_error", s.max_step_energy_error}};
    j["steps"] = s.steps;
    j["cuts"] = s.cuts;
    return j.dump(2) + "\n";
}

SweepRow sweep_row(const ScenarioConfig& config, const TimeSeries& series, double pressure_mpa)
{
    const AnnualSummary a = annualize(series, series.horizon_years, config.factors, config.accounting);
    SweepRow r;
    r.pattern = config.pattern;
    r.pressure_mpa = pressure_mpa;
    r.single_well_J = a.per_producer_heat_J;
    r.system_J = a.system.heat_J;
    r.system = a.system;
    return r;
}

std::string table2_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "pattern,injection_pressure_MPa,single_well_annual_heat_J,system_annual_heat_J\n";
    for (const SweepRow& r : rows)
        out += std::string(to_string(r.pattern)) + ',' + format_number(r.pressure_mpa) + ','
               + format_number(r.single_well_J) + ',' + format_number(r.system_J) + '\n';
    return out;
}

std::string table3_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "pattern,injection_pressure_MPa,annual_heat_J,coal_t,carbon_t,co2_t,profit_10k_yuan\n";
    for (const SweepRow& r : rows)
        out += std::string(to_string(r.pattern)) + ',' + format_number(r.pressure_mpa) + ','
               + format_number(r.system.heat_J) + ',' + format_number(r.system.coal_t) + ','
               + format_number(r.system.emissions.carbon_t) + ',' + format_number(r.system.emissions.co2_t) + ','
               + format_number(r.system.emissions.profit_10k_yuan) + '\n';
    return out;
}

namespace {

std::string fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Round step (1, 2 or 5 times a power of ten) giving about five ticks.
double nice_step(double span)
{
    if (!(span > 0.0))
        return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    return (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Curve>& curves)
{
    const double width = 800.0;
    const double height = 500.0;
    const double left = 90.0;
    const double right = 200.0;
    const double top = 40.0;
    const double bottom = 60.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double x0 = 0.0;
    double x1 = 1.0;
    double y0 = 0.0;
    double y1 = 1.0;
    bool first = true;
    for (const Curve& c : curves)
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (first) {
                x0 = x1 = c.x[i];
                y0 = y1 = c.y[i];
                first = false;
            }
            x0 = std::min(x0, c.x[i]);
            x1 = std::max(x1, c.x[i]);
            y0 = std::min(y0, c.y[i]);
            y1 = std::max(y1, c.y[i]);
        }
    x0 = std::min(x0, 0.0);
    y0 = std::min(y0, 0.0);
    if (x1 <= x0)
        x1 = x0 + 1.0;
    if (y1 <= y0)
        y1 = y0 + 1.0;
    const double xs = nice_step(x1 - x0);
    const double ys = nice_step(y1 - y0);
    x0 = std::floor(x0 / xs) * xs;
    x1 = std::ceil(x1 / xs) * xs;
    y0 = std::floor(y0 / ys) * ys;
    y1 = std::ceil(y1 / ys) * ys;

    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + escape(title)
         + "</text>\n";

    for (int i = 0; x0 + i * xs <= x1 + 0.5 * xs; ++i) {
        const double v = x0 + i * xs;
        s += "<line x1=\"" + fixed(px(v)) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(px(v)) + "\" y2=\""
             + fixed(top + ph) + "\" stroke=\"#e0e0e0\"/>\n";
        s += "<text x=\"" + fixed(px(v)) + "\" y=\"" + fixed(top + ph + 18) + "\" text-anchor=\"middle\">"
             + tick_label(v) + "</text>\n";
    }
    for (int i = 0; y0 + i * ys <= y1 + 0.5 * ys; ++i) {
        const double v = y0 + i * ys;
        s += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(py(v)) + "\" x2=\"" + fixed(left + pw) + "\" y2=\""
             + fixed(py(v)) + "\" stroke=\"#e0e0e0\"/>\n";
        s += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(py(v) + 4) + "\" text-anchor=\"end\">"
             + tick_label(v) + "</text>\n";
    }
    s += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) + "\" height=\"" + fixed(ph)
         + "\" fill=\"none\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(height - 15) + "\" text-anchor=\"middle\">"
         + escape(x_label) + "</text>\n";
    s += "<text x=\"20\" y=\"" + fixed(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
         + fixed(top + ph / 2) + ")\">" + escape(y_label) + "</text>\n";

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const Curve& c = curves[k];
        const std::string colour = palette[k % std::size(palette)];
        s += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i)
            s += (i ? " " : "") + fixed(px(c.x[i])) + "," + fixed(py(c.y[i]));
        s += "\"/>\n";
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        s += "<line x1=\"" + fixed(left + pw + 12) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(left + pw + 32)
             + "\" y2=\"" + fixed(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fixed(left + pw + 38) + "\" y=\"" + fixed(ly + 4) + "\">" + escape(c.label) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        }
        else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ReportError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

RunCurves curves_from_csv(const std::string& label, const std::string& csv, const std::vector<std::string>& producers,
                          const std::vector<std::string>& injectors, const std::string& source_name)
{
    RunCurves r;
    r.label = label;
    r.has_injectors = !injectors.empty();
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != split(timeseries_header, ','))
        throw ReportError("corrupt CSV '" + source_name + "': unexpected header");
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        const auto f = split(line, ',');
        auto bad = [&](const std::string& why) {
            return ReportError("corrupt CSV '" + source_name + "' line " + std::to_string(line_no) + ": " + why);
        };
        if (f.size() != 8)
            throw bad("expected 8 fields");
        double v[8] = {};
        for (int i : {0, 2, 3, 4, 5, 6, 7}) {
            const auto [p, ec] = std::from_chars(f[i].data(), f[i].data() + f[i].size(), v[i]);
            if (ec != std::errc() || p != f[i].data() + f[i].size())
                throw bad("field " + std::to_string(i + 1) + " is not a number");
        }
        if (r.time_days.empty() || v[0] != r.time_days.back()) {
            if (!r.time_days.empty() && v[0] < r.time_days.back())
                throw bad("time goes backwards");
            r.time_days.push_back(v[0]);
            r.production_rate.push_back(0.0);
            r.injection_rate.push_back(0.0);
            r.system_cum_heat.push_back(0.0);
        }
        const bool producer = std::find(producers.begin(), producers.end(), f[1]) != producers.end();
        const bool injector = std::find(injectors.begin(), injectors.end(), f[1]) != injectors.end();
        if (!producer && !injector)
            throw bad("unknown well '" + f[1] + "'");
        r.production_rate.back() += v[2];
        r.injection_rate.back() += v[3];
        if (producer)
            r.system_cum_heat.back() += v[6];
    }
    if (r.time_days.empty())
        throw ReportError("corrupt CSV '" + source_name + "': no data rows");
    return r;
}

RunCurves read_run_dir(const std::filesystem::path& dir)
{
    const auto summary_path = dir / "summary.json";
    const auto csv_path = dir / "timeseries.csv";
    json summary;
    try {
        summary = json::parse(read_text(summary_path));
    }
    catch (const json::exception& e) {
        throw ReportError("corrupt JSON '" + summary_path.string() + "': " + e.what());
    }
    std::vector<std::string> producers;
    std::vector<std::string> injectors;
    std::string label;
    try {
        label = summary.at("scenario").get<std::string>();
        for (const auto& w : summary.at("wells"))
            (w.at("kind").get<std::string>() == "injector" ? injectors : producers)
                .push_back(w.at("name").get<std::string>());
    }
    catch (const json::exception& e) {
        throw ReportError("corrupt JSON '" + summary_path.string() + "': " + e.what());
    }
    return curves_from_csv(label, read_text(csv_path), producers, injectors, csv_path.string());
}

std::string rates_svg(const std::vector<RunCurves>& runs)
{
    std::vector<Curve> curves;
    for (const RunCurves& r : runs) {
        curves.push_back(Curve{r.label + " production", r.time_days, r.production_rate});
        if (r.has_injectors)
            curves.push_back(Curve{r.label + " injection", r.time_days, r.injection_rate});
    }
    return line_chart_svg("Water rate", "time (days)", "rate (m3/d)", curves);
}

std::string heat_svg(const std::vector<RunCurves>& runs)
{
    std::vector<Curve> curves;
    for (const RunCurves& r : runs) {
        std::vector<double> gj(r.system_cum_heat.size());
        std::transform(r.system_cum_heat.begin(), r.system_cum_heat.end(), gj.begin(),
                       [](double j) { return j / 1e9; });
        curves.push_back(Curve{r.label, r.time_days, gj});
    }
    return line_chart_svg("Cumulative heat recovered", "time (days)", "heat (GJ)", curves);
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ReportError("cannot write '" + tmp + "'");
        out << content;
        if (!out)
            throw ReportError("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw ReportError("cannot rename '" + tmp + "': " + ec.message());
}

void write_run_artifacts(const std::filesystem::path& dir, const ScenarioConfig& config, const TimeSeries& series)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ReportError("cannot create '" + dir.string() + "': " + ec.message());
    const std::string csv = timeseries_csv(series);
    write_file(dir / "timeseries.csv", csv);
    write_file(dir / "summary.json", summary_json(config, series));
    if (!series.points.empty()) {
        std::vector<std::string> producers;
        std::vector<std::string> injectors;
        for (std::size_t w = 0; w < series.well_names.size(); ++w)
            (series.well_kinds[w] == WellKind::injector ? injectors : producers).push_back(series.well_names[w]);
        const RunCurves r = curves_from_csv(config.name, csv, producers, injectors, "timeseries.csv");
        write_file(dir / "rates.svg", rates_svg({r}));
        write_file(dir / "heat.svg", heat_svg({r}));
    }
}

} // namespace geoderelict
