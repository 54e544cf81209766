#pragma once

// Scenario catalogs are plain structured text: [section] headers over
// key = value lines, '#' or ';' comments.  Scenarios live in
// [scenario <name>] sections with their expected bounds in
// [scenario <name>.bounds]; a [defaults] section seeds every scenario's
// config.  The parser reports line and column on every syntax error.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "twoslit/config.hpp"
#include "twoslit/errors.hpp"
#include "twoslit/scenario.hpp"

namespace twoslit {

namespace detail {

struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
    int key_col = 0;
    int value_col = 0;
};

struct KvSection {
    std::string name;
    int line = 0;
    std::vector<KvEntry> entries;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<KvSection> parse_kv(const std::string& text) {
    std::vector<KvSection> sections;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (std::size_t pos = line.find_first_of("#;"); pos != std::string::npos)
            line = line.substr(0, pos);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const int first_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;

        if (body.front() == '[') {
            if (body.back() != ']')
                throw parse_error(line_no, static_cast<int>(line.size()) + 1,
                                  "unterminated section header (missing ']')");
            const std::string name = trim(body.substr(1, body.size() - 2));
            if (name.empty()) throw parse_error(line_no, first_col + 1, "empty section name");
            sections.push_back({name, line_no, {}});
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(line_no, static_cast<int>(line.size()) + 1,
                              "expected 'key = value' (missing '=')");
        KvEntry entry;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = line_no;
        entry.key_col = first_col;
        const std::size_t vpos = line.find_first_not_of(" \t", eq + 1);
        entry.value_col = vpos == std::string::npos ? static_cast<int>(eq) + 2
                                                    : static_cast<int>(vpos) + 1;
        if (entry.key.empty()) throw parse_error(line_no, first_col, "empty key");
        if (sections.empty())
            throw parse_error(line_no, first_col, "key outside of any [section]");
        // Repeated keys are allowed: config keys apply in order (last wins),
        // bounds sections may constrain one metric twice.
        sections.back().entries.push_back(std::move(entry));
    }
    return sections;
}

inline double parse_double(const KvEntry& e) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw parse_error(e.line, e.value_col, "expected a number, got '" + e.value + "'");
    return v;
}

inline long long parse_int(const KvEntry& e) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw parse_error(e.line, e.value_col, "expected an integer, got '" + e.value + "'");
    return v;
}

inline bool parse_bool(const KvEntry& e) {
    if (e.value == "on" || e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "off" || e.value == "false" || e.value == "no" || e.value == "0") return false;
    throw parse_error(e.line, e.value_col, "expected on/off, got '" + e.value + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, sep)) out.push_back(trim(token));
    return out;
}

}  // namespace detail

/// Applies one geometry/apparatus key to a config.  Returns false for keys
/// it does not know (the caller decides whether that is an error).
inline bool apply_config_key(ExperimentConfig& cfg, const std::string& key,
                             const detail::KvEntry& e) {
    if (key == "wavelength") cfg.wavelength = detail::parse_double(e);
    else if (key == "slit_width") cfg.slit_width = detail::parse_double(e);
    else if (key == "slit_separation") cfg.slit_separation = detail::parse_double(e);
    else if (key == "z_lens") cfg.z_lens = detail::parse_double(e);
    else if (key == "focal_length") cfg.focal_length = detail::parse_double(e);
    else if (key == "z_image") cfg.z_image = detail::parse_double(e);
    else if (key == "allow_defocus") cfg.allow_defocus = detail::parse_bool(e);
    else if (key == "grid_halfwidth") cfg.grid_halfwidth = detail::parse_double(e);
    else if (key == "grid_points") cfg.grid_points = static_cast<int>(detail::parse_int(e));
    else if (key == "markers") cfg.markers = detail::parse_bool(e);
    else if (key == "detector_window_factor") cfg.detector_window_factor = detail::parse_double(e);
    else if (key == "wire_loss_budget") cfg.wire_loss_budget = detail::parse_double(e);
    else if (key == "analyzer") {
        const std::string& v = e.value;
        if (v == "none") cfg.analyzer = Analyzer::None;
        else if (v == "H") cfg.analyzer = Analyzer::H;
        else if (v == "V") cfg.analyzer = Analyzer::V;
        else if (v == "L") cfg.analyzer = Analyzer::L;
        else if (v == "R") cfg.analyzer = Analyzer::R;
        else throw parse_error(e.line, e.value_col, "analyzer must be none/H/V/L/R");
    } else if (key == "open_slits") {
        const std::string& v = e.value;
        if (v == "A") cfg.open_slits = OpenSlits::A;
        else if (v == "B") cfg.open_slits = OpenSlits::B;
        else if (v == "both") cfg.open_slits = OpenSlits::Both;
        else throw parse_error(e.line, e.value_col, "open_slits must be A/B/both");
    } else return false;
    return true;
}

struct Catalog {
    std::string name;
    ExperimentConfig defaults;
    std::vector<Scenario> scenarios;

    const Scenario* find(const std::string& scenario_name) const {
        for (const auto& s : scenarios)
            if (s.name == scenario_name) return &s;
        return nullptr;
    }
};

namespace detail {

inline Bound parse_bound(const KvEntry& e) {
    Bound b;
    b.metric = e.key;
    const std::size_t bar = e.value.find('|');
    if (bar == std::string::npos)
        throw parse_error(e.line, e.value_col,
                          "bound needs a rationale: '<op> <value> [tol] | why'");
    b.rationale = trim(e.value.substr(bar + 1));
    if (b.rationale.empty())
        throw parse_error(e.line, e.value_col + static_cast<int>(bar) + 1,
                          "bound rationale must not be empty");
    std::istringstream spec(e.value.substr(0, bar));
    std::string op;
    spec >> op;
    if (op == "lt") b.kind = Bound::Kind::Less;
    else if (op == "gt") b.kind = Bound::Kind::Greater;
    else if (op == "within") b.kind = Bound::Kind::Within;
    else throw parse_error(e.line, e.value_col, "bound op must be lt/gt/within, got '" + op + "'");
    if (!(spec >> b.value))
        throw parse_error(e.line, e.value_col, "bound is missing its threshold value");
    if (b.kind == Bound::Kind::Within && !(spec >> b.tolerance))
        throw parse_error(e.line, e.value_col, "'within' bound needs a center and a tolerance");
    std::string excess;
    if (spec >> excess)
        throw parse_error(e.line, e.value_col, "unexpected token '" + excess + "' in bound");
    return b;
}

inline void apply_scenario_key(Scenario& s, const KvEntry& e) {
    if (e.key == "title") s.title = e.value;
    else if (e.key == "note") s.note = e.value;
    else if (e.key == "cross_validate") s.cross_validate = parse_bool(e);
    else if (e.key == "photons") s.photon_count = parse_int(e);
    else if (e.key == "photon_source") {
        if (e.value == "exact") s.photon_source = Scenario::PhotonSource::Exact;
        else if (e.value == "wave") s.photon_source = Scenario::PhotonSource::Wave;
        else throw parse_error(e.line, e.value_col, "photon_source must be exact/wave");
    } else if (e.key == "wires") {
        std::istringstream in(e.value);
        std::string mode;
        in >> mode;
        if (mode == "none") s.wire_mode = Scenario::WireMode::None;
        else if (mode == "auto") {
            s.wire_mode = Scenario::WireMode::AutoDarkFringes;
            if (!(in >> s.wire_count) || s.wire_count < 1)
                throw parse_error(e.line, e.value_col, "'wires = auto <count>' needs a count >= 1");
        } else throw parse_error(e.line, e.value_col,
                                 "wires must be 'none', 'auto <count>', or set wire_centers");
    } else if (e.key == "wire_centers") {
        s.wire_mode = Scenario::WireMode::Explicit;
        for (const std::string& token : split(e.value, ',')) {
            KvEntry fake = e;
            fake.value = token;
            s.wire_centers.push_back(parse_double(fake));
        }
    } else if (e.key == "wire_width") {
        if (e.value.rfind("fringe/", 0) == 0) {
            KvEntry fake = e;
            fake.value = e.value.substr(7);
            s.wire_fringe_fraction = parse_double(fake);
            if (s.wire_fringe_fraction <= 0)
                throw parse_error(e.line, e.value_col, "fringe fraction must be positive");
        } else {
            s.wire_width = parse_double(e);
        }
    } else if (!apply_config_key(s.config, e.key, e)) {
        throw parse_error(e.line, e.key_col, "unknown scenario key '" + e.key + "'");
    }
}

}  // namespace detail

inline Catalog load_catalog_text(const std::string& text) {
    Catalog catalog;
    const auto sections = detail::parse_kv(text);
    // defaults first, wherever the section appears
    for (const auto& sec : sections) {
        if (sec.name == "catalog") {
            for (const auto& e : sec.entries) {
                if (e.key == "name") catalog.name = e.value;
                else throw parse_error(e.line, e.key_col, "unknown catalog key '" + e.key + "'");
            }
        } else if (sec.name == "defaults") {
            for (const auto& e : sec.entries)
                if (!apply_config_key(catalog.defaults, e.key, e))
                    throw parse_error(e.line, e.key_col, "unknown config key '" + e.key + "'");
        }
    }
    for (const auto& sec : sections) {
        if (sec.name == "catalog" || sec.name == "defaults") continue;
        if (sec.name.rfind("scenario ", 0) != 0)
            throw parse_error(sec.line, 1, "unknown section [" + sec.name + "]");
        const std::string rest = detail::trim(sec.name.substr(9));
        const bool is_bounds = rest.size() > 7 && rest.rfind(".bounds") == rest.size() - 7;
        const std::string name = is_bounds ? rest.substr(0, rest.size() - 7) : rest;
        if (name.empty()) throw parse_error(sec.line, 1, "scenario section needs a name");

        Scenario* scenario = nullptr;
        for (auto& s : catalog.scenarios)
            if (s.name == name) scenario = &s;
        if (!scenario) {
            if (is_bounds)
                throw parse_error(sec.line, 1,
                                  "bounds for unknown scenario '" + name + "' (define it first)");
            catalog.scenarios.push_back({});
            scenario = &catalog.scenarios.back();
            scenario->name = name;
            scenario->config = catalog.defaults;
        } else if (!is_bounds) {
            throw parse_error(sec.line, 1, "duplicate scenario '" + name + "'");
        }

        for (const auto& e : sec.entries) {
            if (is_bounds)
                scenario->bounds.push_back(detail::parse_bound(e));
            else
                detail::apply_scenario_key(*scenario, e);
        }
    }
    return catalog;
}

inline Catalog load_catalog_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_catalog_text(buf.str());
    } catch (const parse_error& e) {
        throw parse_error(e.line, e.column, path + ": " + e.message);
    }
}

/// key=value override strings from the command line, applied on top of a
/// scenario's config.  Unknown keys are config errors.
inline void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides) {
    for (const std::string& item : overrides) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw config_error("override must look like key=value: '" + item + "'");
        detail::KvEntry e;
        e.key = detail::trim(item.substr(0, eq));
        e.value = detail::trim(item.substr(eq + 1));
        e.line = 0;
        e.key_col = 1;
        e.value_col = 1;
        try {
            if (!apply_config_key(cfg, e.key, e))
                throw config_error("unknown override key '" + e.key + "'");
        } catch (const parse_error& pe) {
            throw config_error("override '" + item + "': " + pe.what());
        }
    }
}

}  // namespace twoslit
