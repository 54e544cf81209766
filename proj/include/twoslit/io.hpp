#pragma once

// File outputs: intensity-profile and photon-event CSVs with a
// self-describing comment header, JSON run summaries, and the run manifest
// that ties every output to one config hash and seed.  All numeric
// formatting goes through fixed printf patterns so identical runs produce
// byte-identical files.  The manifest timestamp honors SOURCE_DATE_EPOCH so
// reproducible runs can pin it.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twoslit/catalog.hpp"
#include "twoslit/config.hpp"
#include "twoslit/detect.hpp"
#include "twoslit/field.hpp"
#include "twoslit/photons.hpp"
#include "twoslit/scenario.hpp"
#include "twoslit/version.hpp"

namespace twoslit {

namespace detail {

inline std::string format_e12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

}  // namespace detail

/// CSV columns x_m, I_H, I_V, I_total preceded by '#' metadata lines.
inline void write_intensity_csv(std::ostream& out, const PolarizedField& field,
                                const std::string& hash) {
    out << "# twoslit intensity profile\n";
    out << "# plane: " << field.plane_tag << "\n";
    out << "# config: " << hash << "\n";
    out << "# columns: x_m,I_H,I_V,I_total\n";
    const std::vector<double> ih = intensity(field, FieldProjection::H);
    const std::vector<double> iv = intensity(field, FieldProjection::V);
    for (int i = 0; i < field.n; ++i) {
        out << detail::format_e12(field.x(i)) << ',' << detail::format_e12(ih[i]) << ','
            << detail::format_e12(iv[i]) << ',' << detail::format_e12(ih[i] + iv[i]) << '\n';
    }
}

inline void write_events_csv(std::ostream& out, const PhotonRecord& record,
                             const std::string& hash) {
    out << "# twoslit photon events\n";
    out << "# config: " << hash << "\n";
    out << "# columns: sequence_index,detector,pol_outcome\n";
    for (const PhotonEvent& e : record.events) {
        out << e.sequence_index << ',' << record.table.detector[e.outcome] << ','
            << record.table.pol_outcome[e.outcome] << '\n';
    }
}

inline nlohmann::ordered_json summary_to_json(const DetectionSummary& s) {
    nlohmann::ordered_json j;
    j["analysis_basis"] = s.analysis_basis == PolBasis::Linear ? "linear" : "circular";
    const char* k0 = s.analysis_basis == PolBasis::Linear ? "H" : "L";
    const char* k1 = s.analysis_basis == PolBasis::Linear ? "V" : "R";
    j["joint"] = {{std::string("D_A,") + k0, s.joint[0][0]},
                  {std::string("D_A,") + k1, s.joint[0][1]},
                  {std::string("D_B,") + k0, s.joint[1][0]},
                  {std::string("D_B,") + k1, s.joint[1][1]}};
    j["detected"] = {{"D_A", s.detected[0]}, {"D_B", s.detected[1]}};
    j["absorbed_fraction"] = s.absorbed_fraction;
    j["spill_fraction"] = s.spill_fraction;
    j["visibility"] = {{"H", s.visibility_h}, {"V", s.visibility_v}, {"total", s.visibility_total}};
    if (s.fill_factor > 0.0) {
        j["fill_factor"] = s.fill_factor;
        j["wire_absorbed_fraction"] = s.wire_absorbed_fraction;
    }
    j["window_centers_m"] = {s.window_centers[0], s.window_centers[1]};
    j["window_halfwidth_m"] = s.window_halfwidth;
    return j;
}

inline nlohmann::ordered_json result_to_json(const ScenarioResult& r, const std::string& hash) {
    nlohmann::ordered_json j;
    j["scenario"] = r.name;
    j["config"] = hash;
    j["summary"] = summary_to_json(r.summary);
    if (r.summary_without_wires)
        j["summary_without_wires"] = summary_to_json(*r.summary_without_wires);
    nlohmann::ordered_json metrics;
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    j["metrics"] = metrics;
    nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
    for (const auto& br : r.bounds) {
        bounds.push_back({{"metric", br.bound.metric},
                          {"measured", br.available ? br.measured : 0.0},
                          {"available", br.available},
                          {"passed", br.passed},
                          {"description", br.describe()},
                          {"rationale", br.bound.rationale}});
    }
    j["bounds"] = bounds;
    if (!r.cross.empty()) {
        nlohmann::ordered_json cross = nlohmann::ordered_json::array();
        for (const auto& row : r.cross)
            cross.push_back({{"quantity", row.quantity},
                             {"exact", row.exact},
                             {"wave", row.wave},
                             {"delta", row.delta}});
        j["cross_validation"] = cross;
    }
    j["passed"] = r.passed;
    return j;
}

inline nlohmann::ordered_json photons_to_json(const PhotonRecord& record) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::uint64_t n = 0;
    for (auto c : record.counts) n += c;
    for (int i = 0; i < record.table.size(); ++i) {
        rows.push_back({{"detector", record.table.detector[i]},
                        {"pol_outcome", record.table.pol_outcome[i]},
                        {"probability", record.table.p[i]},
                        {"count", record.counts[i]},
                        {"frequency", n ? static_cast<double>(record.counts[i]) / n : 0.0}});
    }
    j["outcomes"] = rows;
    j["events"] = n;
    j["chi_square"] = {{"statistic", record.chi_square.statistic},
                       {"dof", record.chi_square.dof},
                       {"p_value", record.chi_square.p_value},
                       {"impossible_outcome", record.chi_square.impossible_outcome}};
    return j;
}

/// UTC timestamp; SOURCE_DATE_EPOCH (reproducible-builds convention)
/// overrides the wall clock when set.
inline std::string manifest_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* pinned = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(pinned, nullptr, 10));
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunManifest {
    std::string catalog_path;
    std::string catalog_hash;  ///< hash of the catalog text
    std::uint64_t seed = 0;
    std::vector<std::string> scenario_names;
    std::vector<std::string> output_files;
    std::vector<std::string> overrides;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["tool"] = "twoslit";
        j["version"] = kVersion;
        j["catalog"] = catalog_path;
        j["catalog_hash"] = catalog_hash;
        j["seed"] = seed;
        j["overrides"] = overrides;
        j["scenarios"] = scenario_names;
        j["outputs"] = output_files;
        j["generated_at"] = manifest_timestamp();
        return j;
    }
};

inline std::string text_hash(const std::string& text) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a64(text)));
    return buf;
}

}  // namespace twoslit
