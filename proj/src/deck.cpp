/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "geoderelict/deck.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

namespace geoderelict {

std::string_view to_string(DeckErrorKind kind)
{
    switch (kind) {
    case DeckErrorKind::syntax: return "syntax";
    case DeckErrorKind::unknown_key: return "unknown_key";
    case DeckErrorKind::missing_key: return "missing_key";
    case DeckErrorKind::unit_mismatch: return "unit_mismatch";
    case DeckErrorKind::duplicate: return "duplicate";
    case DeckErrorKind::invariant: return "invariant";
    case DeckErrorKind::io: return "io";
    }
    return "syntax";
}

namespace {

std::string located(DeckErrorKind kind, int line, int column, const std::string& message)
{
    std::string s = std::string(to_string(kind)) + " error";
    if (line > 0)
        s += " at " + std::to_string(line) + ":" + std::to_string(column);
    return s + ": " + message;
}

} // namespace

DeckError::DeckError(DeckErrorKind kind, int line, int column, const std::string& message)
    : std::runtime_error(located(kind, line, column, message)), kind_(kind), line_(line), column_(column),
      message_(message)
{
}

namespace {

using K = DeckErrorKind;

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
    int key_column = 0;
    int value_column = 0;
};

struct Section {
    std::string name;
    int line = 0;
    int column = 0;
    std::vector<Entry> entries;
};

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\r';
}

bool is_key_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.'
           || c == '-';
}

// First pass: sections, key/value pairs, duplicates. The unnamed leading
// section holds top-level keys.
std::vector<Section> tokenize(std::string_view text)
{
    std::vector<Section> sections(1);
    std::set<std::string> section_names;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::size_t b = 0;
        while (b < line.size() && is_space(line[b]))
            ++b;
        std::size_t e = line.size();
        while (e > b && is_space(line[e - 1]))
            --e;
        if (b == e)
            continue;
        const std::string_view body = line.substr(b, e - b);
        const int col = static_cast<int>(b) + 1;

        if (body.front() == '[') {
            if (body.back() != ']')
                throw DeckError(K::syntax, line_no, col, "unterminated section header");
            std::string name(body.substr(1, body.size() - 2));
            if (name.empty())
                throw DeckError(K::syntax, line_no, col, "empty section name");
            for (char c : name)
                if (!is_key_char(c))
                    throw DeckError(K::syntax, line_no, col, "invalid section name '" + name + "'");
            if (!section_names.insert(name).second)
                throw DeckError(K::duplicate, line_no, col, "duplicate section [" + name + "]");
            sections.push_back(Section{name, line_no, col, {}});
            continue;
        }

        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw DeckError(K::syntax, line_no, col, "expected 'key = value' or '[section]'");
        std::string_view key = body.substr(0, eq);
        while (!key.empty() && is_space(key.back()))
            key.remove_suffix(1);
        if (key.empty())
            throw DeckError(K::syntax, line_no, col, "missing key before '='");
        for (char c : key)
            if (!is_key_char(c))
                throw DeckError(K::syntax, line_no, col, "invalid key '" + std::string(key) + "'");
        std::size_t vb = eq + 1;
        while (vb < body.size() && is_space(body[vb]))
            ++vb;
        if (vb == body.size())
            throw DeckError(K::syntax, line_no, col, "missing value for '" + std::string(key) + "'");

        Section& s = sections.back();
        for (const Entry& prior : s.entries)
            if (prior.key == key)
                throw DeckError(K::duplicate, line_no, col,
                                "duplicate key '" + std::string(key) + "' (first at line " + std::to_string(prior.line)
                                    + ")");
        s.entries.push_back(Entry{std::string(key), std::string(body.substr(vb)), line_no, col,
                                  col + static_cast<int>(vb)});
    }
    return sections;
}

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i]))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j]))
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<double> to_double(std::string_view s)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<long long> to_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

class Reader {
public:
    explicit Reader(const Section& s) : section_(s) {}

    const Section& section() const { return section_; }

    const Entry* find(std::string_view key)
    {
        for (const Entry& e : section_.entries)
            if (e.key == key) {
                used_.insert(e.key);
                return &e;
            }
        return nullptr;
    }

    const Entry& require(std::string_view key)
    {
        if (const Entry* e = find(key))
            return *e;
        throw DeckError(K::missing_key, section_.line, section_.column,
                        "[" + section_.name + "] requires key '" + std::string(key) + "'");
    }

    // Value converted into `target` units; the unit is mandatory unless the
    // dimension is dimensionless.
    double quantity(const Entry& e, std::string_view target)
    {
        const auto parts = split_ws(e.value);
        const auto v = to_double(parts.front());
        if (!v)
            throw DeckError(K::syntax, e.line, e.value_column, "'" + e.key + "' expects a number, got '" + parts.front() + "'");
        std::string unit;
        for (std::size_t i = 1; i < parts.size(); ++i)
            unit += parts[i];
        const UnitDef want = *find_unit(target);
        const auto have = find_unit(unit);
        if (!have)
            throw DeckError(K::unit_mismatch, e.line, e.value_column,
                            "'" + e.key + "': unknown unit '" + unit + "'");
        if (have->dimension != want.dimension) {
            const std::string got = unit.empty() ? "no unit" : "'" + unit + "' (" + std::string(dimension_name(have->dimension)) + ")";
            throw DeckError(K::unit_mismatch, e.line, e.value_column,
                            "'" + e.key + "' expects " + std::string(dimension_name(want.dimension)) + ", got " + got);
        }
        if (have->factor == want.factor && have->offset == want.offset)
            return *v;
        return convert_units(*v, unit, target);
    }

    double quantity(std::string_view key, std::string_view target, double fallback)
    {
        const Entry* e = find(key);
        return e ? quantity(*e, target) : fallback;
    }

    double required_quantity(std::string_view key, std::string_view target)
    {
        return quantity(require(key), target);
    }

    long long integer(const Entry& e)
    {
        const auto v = to_integer(single_word(e));
        if (!v)
            throw DeckError(K::syntax, e.line, e.value_column, "'" + e.key + "' expects an integer");
        return *v;
    }

    std::string single_word(const Entry& e)
    {
        const auto parts = split_ws(e.value);
        if (parts.size() != 1)
            throw DeckError(K::syntax, e.line, e.value_column, "'" + e.key + "' expects a single word");
        return parts.front();
    }

    bool boolean(const Entry& e)
    {
        const std::string w = single_word(e);
        if (w == "true")
            return true;
        if (w == "false")
            return false;
        throw DeckError(K::syntax, e.line, e.value_column, "'" + e.key + "' expects true or false");
    }

    void finish() const
    {
        for (const Entry& e : section_.entries)
            if (!used_.count(e.key))
                throw DeckError(K::unknown_key, e.line, e.key_column,
                                "unknown key '" + e.key + "' in "
                                    + (section_.name.empty() ? std::string("top level") : "[" + section_.name + "]"));
    }

private:
    const Section& section_;
    std::set<std::string> used_;
};

std::pair<int, int> parse_layers(Reader& r, const Entry& e)
{
    const std::string w = r.single_word(e);
    const auto dash = w.find('-', 1);
    const auto top = to_integer(w.substr(0, dash));
    const auto bottom = dash == std::string::npos ? top : to_integer(w.substr(dash + 1));
    if (!top || !bottom)
        throw DeckError(K::syntax, e.line, e.value_column, "'" + e.key + "' expects 'top-bottom' layer indices");
    return {static_cast<int>(*top), static_cast<int>(*bottom)};
}

int as_int(Reader& r, const Entry& e)
{
    const long long v = r.integer(e);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw DeckError(K::syntax, e.line, e.value_column, "'" + e.key + "' is out of range");
    return static_cast<int>(v);
}

void read_grid(Reader& r, GridSpec& g)
{
    g.nx = as_int(r, r.require("nx"));
    g.ny = as_int(r, r.require("ny"));
    g.nz = as_int(r, r.require("nz"));
    g.dx = r.required_quantity("dx", "m");
    g.dy = r.required_quantity("dy", "m");
    g.dz = r.required_quantity("dz", "m");
    g.top_depth = r.required_quantity("top", "m");
}

void read_rock(Reader& r, RockModel& m)
{
    m.phi = r.required_quantity("porosity", "");
    m.k = r.required_quantity("permeability", "m2");
    m.c_r = r.quantity("compressibility", "1/Pa", m.c_r);
    m.rock_vol_heat = r.quantity("heat_capacity", "J/m3/C", m.rock_vol_heat);
    m.lambda_bulk = r.quantity("conductivity", "W/m/C", m.lambda_bulk);
}

void read_fluid(Reader& r, FluidModel& f)
{
    f.rho_ref = r.quantity("density", "kg/m3", f.rho_ref);
    f.p_ref = r.quantity("reference_pressure", "Pa", f.p_ref);
    f.T_ref = r.quantity("reference_temperature", "C", f.T_ref);
    f.c_f = r.quantity("compressibility", "1/Pa", f.c_f);
    f.beta = r.quantity("expansivity", "1/C", f.beta);
    f.cw = r.quantity("heat_capacity", "J/kg/C", f.cw);
    f.salinity = r.quantity("salinity", "mg/L", f.salinity);
}

void read_init(Reader& r, ScenarioConfig& c)
{
    c.initial_pressure = r.required_quantity("pressure", "Pa");
    const Entry* t = r.find("temperature");
    const Entry* g = r.find("gradient");
    if (t && g)
        throw DeckError(K::invariant, g->line, g->key_column,
                        "'temperature' and 'gradient' are mutually exclusive");
    if (!t && !g)
        throw DeckError(K::missing_key, r.section().line, r.section().column,
                        "[init] requires 'temperature' or 'gradient'");
    if (t)
        c.initial_temperature = r.quantity(*t, "C");
    else
        c.temperature_gradient = r.quantity(*g, "C/m");
    const Entry* surface = r.find("surface_temperature");
    if (surface && t)
        throw DeckError(K::invariant, surface->line, surface->key_column,
                        "'surface_temperature' applies only with 'gradient'");
    if (surface)
        c.surface_temperature = r.quantity(*surface, "C");
    if (const Entry* e = r.find("gravity"))
        c.gravity = r.boolean(*e);
}

WellSpec read_well(Reader& r, const std::string& name)
{
    WellSpec w;
    w.name = name;
    const Entry& kind = r.require("kind");
    const std::string k = r.single_word(kind);
    if (k == "producer")
        w.kind = WellKind::producer;
    else if (k == "injector")
        w.kind = WellKind::injector;
    else
        throw DeckError(K::syntax, kind.line, kind.value_column, "'kind' expects producer or injector");
    w.i = as_int(r, r.require("i"));
    w.j = as_int(r, r.require("j"));
    std::tie(w.layer_top, w.layer_bottom) = parse_layers(r, r.require("layers"));
    w.radius = r.quantity("radius", "m", w.radius);
    w.bhp = r.required_quantity("bhp", "Pa");
    if (const Entry* t = r.find("injection_temperature")) {
        if (w.kind != WellKind::injector)
            throw DeckError(K::invariant, t->line, t->key_column, "'injection_temperature' applies to injectors only");
        w.inj_temperature = r.quantity(*t, "C");
    }
    return w;
}

void read_pattern(Reader& r, ScenarioConfig& c, PatternWells& tmpl)
{
    const Entry& type = r.require("type");
    const auto p = pattern_from_string(r.single_word(type));
    if (!p)
        throw DeckError(K::syntax, type.line, type.value_column,
                        "'type' expects direct, four_inject_one_produce, one_inject_four_produce or custom");
    c.pattern = *p;
    c.spacing = r.quantity("spacing", "m", c.spacing);
    tmpl.injector_bhp = r.quantity("injector_bhp", "Pa", tmpl.injector_bhp);
    tmpl.producer_bhp = r.quantity("producer_bhp", "Pa", tmpl.producer_bhp);
    if (const Entry* e = r.find("layers"))
        std::tie(tmpl.layer_top, tmpl.layer_bottom) = parse_layers(r, *e);
    tmpl.radius = r.quantity("radius", "m", tmpl.radius);
    tmpl.injection_temperature = r.quantity("injection_temperature", "C", tmpl.injection_temperature);
}

void read_aquifer(Reader& r, AquiferModel& a)
{
    a.enabled = true;
    if (const Entry* e = r.find("enabled"))
        a.enabled = r.boolean(*e);
    const bool strict = a.enabled;
    auto value = [&](std::string_view key, std::string_view unit, double fallback) {
        return strict ? r.required_quantity(key, unit) : r.quantity(key, unit, fallback);
    };
    a.productivity = value("productivity", "m3/s/Pa", a.productivity);
    a.initial_pressure = value("pressure", "Pa", a.initial_pressure);
    a.water_volume = value("volume", "m3", a.water_volume);
    if (const Entry* e = r.find("compressibility"))
        a.compressibility = r.quantity(*e, "1/Pa");
    if (const Entry* e = r.find("attachment")) {
        const std::string w = r.single_word(*e);
        if (w == "bottom")
            a.attachment = AquiferAttachment::bottom;
        else if (w == "edge")
            a.attachment = AquiferAttachment::edge;
        else if (w == "cells")
            a.attachment = AquiferAttachment::cells;
        else
            throw DeckError(K::syntax, e->line, e->value_column, "'attachment' expects bottom, edge or cells");
    }
    if (const Entry* e = r.find("cells")) {
        std::string list = e->value;
        for (char& ch : list)
            if (ch == ',')
                ch = ' ';
        for (const std::string& w : split_ws(list)) {
            const auto v = to_integer(w);
            if (!v || *v < 0)
                throw DeckError(K::syntax, e->line, e->value_column, "'cells' expects non-negative cell indices");
            a.cells.push_back(static_cast<std::size_t>(*v));
        }
        if (a.attachment != AquiferAttachment::cells)
            throw DeckError(K::invariant, e->line, e->key_column, "'cells' requires 'attachment = cells'");
    }
}

void read_time(Reader& r, ScenarioConfig& c)
{
    c.horizon_years = r.required_quantity("horizon", "year");
    c.report_interval_days = r.required_quantity("report_interval", "d");
    TimestepControl& t = c.timestep;
    t.dt_init = r.quantity("dt_init", "s", t.dt_init);
    t.dt_max = r.quantity("dt_max", "s", t.dt_max);
    t.growth = r.quantity("growth", "", t.growth);
    t.cut = r.quantity("cut", "", t.cut);
    t.cfl_target = r.quantity("cfl_target", "", t.cfl_target);
    c.solver.pressure_tolerance = r.quantity("pressure_tolerance", "", c.solver.pressure_tolerance);
    c.solver.conduction_tolerance = r.quantity("conduction_tolerance", "", c.solver.conduction_tolerance);
    if (const Entry* e = r.find("max_iterations"))
        c.solver.max_iterations = as_int(r, *e);
}

void read_factors(Reader& r, ScenarioConfig& c)
{
    EmissionFactors& f = c.factors;
    f.coal_energy = r.quantity("coal_energy", "J/t", f.coal_energy);
    f.carbon_per_coal = r.quantity("carbon_per_coal", "t/t", f.carbon_per_coal);
    f.co2_per_carbon = r.quantity("co2_per_carbon", "t/t", f.co2_per_carbon);
    f.profit_per_coal = r.quantity("profit_per_coal", "yuan/t", f.profit_per_coal);
    c.heat_datum = r.quantity("heat_datum", "C", c.heat_datum);
    if (const Entry* e = r.find("accounting")) {
        const std::string w = r.single_word(*e);
        if (w == "horizon_average")
            c.accounting = Accounting::horizon_average;
        else if (w == "first_year")
            c.accounting = Accounting::first_year;
        else
            throw DeckError(K::syntax, e->line, e->value_column, "'accounting' expects horizon_average or first_year");
    }
}

// Points an invariant failure at the section its message names.
DeckError invariant_error(const std::vector<Section>& sections, const std::string& message)
{
    auto at = [&](const std::string& name) -> const Section* {
        for (const Section& s : sections)
            if (s.name == name)
                return &s;
        return nullptr;
    };
    const Section* s = nullptr;
    if (message.rfind("well '", 0) == 0) {
        const auto end = message.find('\'', 6);
        s = at("well." + message.substr(6, end - 6));
    }
    else {
        static const std::pair<const char*, const char*> prefixes[] = {
            {"grid", "grid"},       {"rock", "rock"},       {"fluid", "fluid"}, {"init", "init"},
            {"pattern", "pattern"}, {"aquifer", "aquifer"}, {"time", "time"},   {"factors", "factors"},
            {"emission", "factors"}};
        for (const auto& [prefix, name] : prefixes)
            if (message.rfind(prefix, 0) == 0) {
                s = at(name);
                break;
            }
        if (!s && message.rfind("wells", 0) == 0)
            for (const Section& sec : sections)
                if (sec.name.rfind("well.", 0) == 0) {
                    s = &sec;
                    break;
                }
    }
    return s ? DeckError(K::invariant, s->line, s->column, message) : DeckError(K::invariant, 0, 0, message);
}

} // namespace

ScenarioConfig parse_deck(std::string_view text)
{
    const std::vector<Section> sections = tokenize(text);
    ScenarioConfig c;
    c.name = "scenario";

    {
        Reader top(sections.front());
        if (const Entry* e = top.find("name"))
            c.name = top.single_word(*e);
        top.finish();
    }

    static const std::set<std::string> known = {"grid", "rock", "fluid", "init", "pattern", "aquifer", "time",
                                                "factors"};
    std::map<std::string, const Section*> by_name;
    std::vector<const Section*> well_sections;
    for (std::size_t i = 1; i < sections.size(); ++i) {
        const Section& s = sections[i];
        if (s.name.rfind("well.", 0) == 0 && s.name.size() > 5)
            well_sections.push_back(&s);
        else if (known.count(s.name))
            by_name[s.name] = &s;
        else
            throw DeckError(K::unknown_key, s.line, s.column, "unknown section [" + s.name + "]");
    }
    auto required = [&](const std::string& name) -> const Section& {
        const auto it = by_name.find(name);
        if (it == by_name.end())
            throw DeckError(K::missing_key, 0, 0, "missing required section [" + name + "]");
        return *it->second;
    };

    Reader grid(required("grid"));
    read_grid(grid, c.grid);
    grid.finish();

    Reader rock(required("rock"));
    read_rock(rock, c.rock);
    rock.finish();

    if (by_name.count("fluid")) {
        Reader fluid(*by_name["fluid"]);
        read_fluid(fluid, c.fluid);
        fluid.finish();
    }

    Reader init(required("init"));
    read_init(init, c);
    init.finish();

    for (const Section* s : well_sections) {
        Reader r(*s);
        c.wells.push_back(read_well(r, s->name.substr(5)));
        r.finish();
    }

    PatternWells tmpl;
    if (by_name.count("pattern")) {
        Reader r(*by_name["pattern"]);
        read_pattern(r, c, tmpl);
        r.finish();
    }

    if (by_name.count("aquifer")) {
        Reader r(*by_name["aquifer"]);
        read_aquifer(r, c.aquifer);
        r.finish();
    }

    Reader time(required("time"));
    read_time(time, c);
    time.finish();

    if (by_name.count("factors")) {
        Reader r(*by_name["factors"]);
        read_factors(r, c);
        r.finish();
    }

    try {
        if (c.wells.empty()) {
            if (c.pattern == Pattern::custom)
                throw DeckError(K::missing_key, 0, 0, "deck defines no [well.*] sections and no pattern to expand");
            c.grid.validate();
            c.wells = expand_pattern(c.pattern, c.spacing, c.grid, tmpl);
        }
        c.validate();
    }
    catch (const std::invalid_argument& e) {
        throw invariant_error(sections, e.what());
    }
    return c;
}

ScenarioConfig load_deck(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DeckError(K::io, 0, 0, "cannot read deck '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_deck(ss.str());
}

namespace {

std::string number(double v)
{
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

class Writer {
public:
    void section(const std::string& name)
    {
        if (!out_.empty())
            out_ += "\n";
        out_ += "[" + name + "]\n";
    }
    void raw(const std::string& key, const std::string& value) { out_ += key + " = " + value + "\n"; }
    void quantity(const std::string& key, double v, std::string_view unit)
    {
        raw(key, unit.empty() ? number(v) : number(v) + " " + std::string(unit));
    }
    std::string str() const { return out_; }

private:
    std::string out_;
};

std::string layers(int top, int bottom)
{
    return std::to_string(top) + "-" + std::to_string(bottom);
}

} // namespace

std::string render_deck(const ScenarioConfig& c)
{
    Writer w;
    w.raw("name", c.name);

    w.section("grid");
    w.raw("nx", std::to_string(c.grid.nx));
    w.raw("ny", std::to_string(c.grid.ny));
    w.raw("nz", std::to_string(c.grid.nz));
    w.quantity("dx", c.grid.dx, "m");
    w.quantity("dy", c.grid.dy, "m");
    w.quantity("dz", c.grid.dz, "m");
    w.quantity("top", c.grid.top_depth, "m");

    w.section("rock");
    w.quantity("porosity", c.rock.phi, "");
    w.quantity("permeability", c.rock.k, "m2");
    w.quantity("compressibility", c.rock.c_r, "1/Pa");
    w.quantity("heat_capacity", c.rock.rock_vol_heat, "J/m3/C");
    w.quantity("conductivity", c.rock.lambda_bulk, "W/m/C");

    w.section("fluid");
    w.quantity("density", c.fluid.rho_ref, "kg/m3");
    w.quantity("reference_pressure", c.fluid.p_ref, "Pa");
    w.quantity("reference_temperature", c.fluid.T_ref, "C");
    w.quantity("compressibility", c.fluid.c_f, "1/Pa");
    w.quantity("expansivity", c.fluid.beta, "1/C");
    w.quantity("heat_capacity", c.fluid.cw, "J/kg/C");
    w.quantity("salinity", c.fluid.salinity, "mg/L");

    w.section("init");
    w.quantity("pressure", c.initial_pressure, "Pa");
    if (c.initial_temperature)
        w.quantity("temperature", *c.initial_temperature, "C");
    if (c.temperature_gradient) {
        w.quantity("gradient", *c.temperature_gradient, "C/m");
        w.quantity("surface_temperature", c.surface_temperature, "C");
    }
    w.raw("gravity", c.gravity ? "true" : "false");

    w.section("pattern");
    w.raw("type", std::string(to_string(c.pattern)));
    w.quantity("spacing", c.spacing, "m");

    for (const WellSpec& well : c.wells) {
        w.section("well." + well.name);
        w.raw("kind", std::string(to_string(well.kind)));
        w.raw("i", std::to_string(well.i));
        w.raw("j", std::to_string(well.j));
        w.raw("layers", layers(well.layer_top, well.layer_bottom));
        w.quantity("radius", well.radius, "m");
        w.quantity("bhp", well.bhp, "Pa");
        if (well.kind == WellKind::injector)
            w.quantity("injection_temperature", well.inj_temperature, "C");
    }

    if (c.aquifer != AquiferModel{}) {
        const AquiferModel& a = c.aquifer;
        w.section("aquifer");
        w.raw("enabled", a.enabled ? "true" : "false");
        w.quantity("productivity", a.productivity, "m3/s/Pa");
        w.quantity("pressure", a.initial_pressure, "Pa");
        w.quantity("volume", a.water_volume, "m3");
        if (a.compressibility)
            w.quantity("compressibility", *a.compressibility, "1/Pa");
        w.raw("attachment", a.attachment == AquiferAttachment::bottom ? "bottom"
                            : a.attachment == AquiferAttachment::edge ? "edge"
                                                                      : "cells");
        if (!a.cells.empty()) {
            std::string list;
            for (std::size_t i = 0; i < a.cells.size(); ++i)
                list += (i ? ", " : "") + std::to_string(a.cells[i]);
            w.raw("cells", list);
        }
    }

    w.section("time");
    w.quantity("horizon", c.horizon_years, "year");
    w.quantity("report_interval", c.report_interval_days, "d");
    w.quantity("dt_init", c.timestep.dt_init, "s");
    w.quantity("dt_max", c.timestep.dt_max, "s");
    w.quantity("growth", c.timestep.growth, "");
    w.quantity("cut", c.timestep.cut, "");
    w.quantity("cfl_target", c.timestep.cfl_target, "");
    w.quantity("pressure_tolerance", c.solver.pressure_tolerance, "");
    w.quantity("conduction_tolerance", c.solver.conduction_tolerance, "");
    w.raw("max_iterations", std::to_string(c.solver.max_iterations));

    w.section("factors");
    w.quantity("coal_energy", c.factors.coal_energy, "J/t");
    w.quantity("carbon_per_coal", c.factors.carbon_per_coal, "t/t");
    w.quantity("co2_per_carbon", c.factors.co2_per_carbon, "t/t");
    w.quantity("profit_per_coal", c.factors.profit_per_coal, "yuan/t");
    w.quantity("heat_datum", c.heat_datum, "C");
    w.raw("accounting", c.accounting == Accounting::horizon_average ? "horizon_average" : "first_year");
    return w.str();
}

} // namespace geoderelict
