// twoslit: simulate a modified two-slit experiment (slits imaged onto two
// detectors through a converging lens) with optional polarization path
// markers, absorbing wires at the dark fringes, and polarization analyzers.
//
//   twoslit run --catalog catalogs/default.ini --out results --seed 7
//   twoslit state --markers --stage lens --basis linear
//   twoslit profile --scenario eraser-visibility --plane lens-entry --projection H
//
// Exit codes: 0 all expected bounds pass, 1 a bound failed, 2 usage or
// parse or configuration error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twoslit/twoslit.hpp"

namespace fs = std::filesystem;
using namespace twoslit;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitUsage = 2;

std::string default_catalog_path() {
    if (const char* env = std::getenv("TWOSLIT_CATALOG")) return env;
    return "catalogs/default.ini";
}

std::string format_amp(const Complex& a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.12g%+.12gi", a.real(), a.imag());
    return buf;
}

const char* path_label(PathBasis basis, int row) {
    switch (basis) {
        case PathBasis::SlitAB: return row == 0 ? "psi_A" : "psi_B";
        case PathBasis::PlusMinus: return row == 0 ? "phi_+" : "phi_-";
        default: return row == 0 ? "D_A  " : "D_B  ";
    }
}

// ---------------------------------------------------------------- state ---

struct StateOptions {
    bool markers = false;
    std::vector<std::string> stages;
    std::string basis = "linear";
    std::string path_basis;
};

int cmd_state(const StateOptions& opt) {
    PathPolState state = make_initial_state(opt.markers);
    bool lens_used = false;
    double last_projection_probability = -1.0;
    for (const std::string& stage : opt.stages) {
        if (stage == "lens") {
            if (lens_used) {
                std::cerr << "error: the lens can appear at most once in the stage list\n";
                return kExitUsage;
            }
            lens_used = true;
            state = apply_lens(state);
        } else if (stage == "project-H" || stage == "project-V" || stage == "project-L" ||
                   stage == "project-R") {
            const char axis_char = stage.back();
            const PolAxis axis = axis_char == 'H'   ? PolAxis::H
                                 : axis_char == 'V' ? PolAxis::V
                                 : axis_char == 'L' ? PolAxis::L
                                                    : PolAxis::R;
            Projection p = project_polarization(state, axis);
            last_projection_probability = p.probability;
            state = p.collapsed;
            if (!state.renormalizable) {
                std::printf("projection on %c: probability 0 (state not renormalizable)\n",
                            axis_char);
                return kExitPass;
            }
        } else {
            std::cerr << "error: unknown stage '" << stage
                      << "' (expected lens or project-H/V/L/R)\n";
            return kExitUsage;
        }
    }

    const PolBasis pol_display = opt.basis == "circular" ? PolBasis::Circular : PolBasis::Linear;
    state = pol_basis_change(state, pol_display);
    if (!opt.path_basis.empty() && state.path_basis != PathBasis::Detector) {
        state = path_basis_change(
            state, opt.path_basis == "plusminus" ? PathBasis::PlusMinus : PathBasis::SlitAB);
    }

    const char* k0 = pol_display == PolBasis::Linear ? "H" : "L";
    const char* k1 = pol_display == PolBasis::Linear ? "V" : "R";
    std::printf("markers: %s\n", opt.markers ? "on" : "off");
    if (last_projection_probability >= 0.0)
        std::printf("projection probability: %.12g (state renormalized)\n",
                    last_projection_probability);
    std::printf("amplitudes (rows: path, columns: %s, %s):\n", k0, k1);
    for (int row = 0; row < 2; ++row)
        std::printf("  %s  %s  %s\n", path_label(state.path_basis, row),
                    format_amp(state.amp[row][0]).c_str(), format_amp(state.amp[row][1]).c_str());

    if (state.path_basis == PathBasis::Detector) {
        const DetectorTable table = detector_statistics(state, pol_display);
        std::printf("detector statistics:\n");
        for (int d = 0; d < 2; ++d)
            for (int k = 0; k < 2; ++k)
                std::printf("  P(%s,%s) = %.12g\n", d == 0 ? "D_A" : "D_B", k == 0 ? k0 : k1,
                            table.p[d][k]);
    } else {
        std::printf("probabilities |amplitude|^2:\n");
        for (int row = 0; row < 2; ++row)
            for (int k = 0; k < 2; ++k)
                std::printf("  P(%s,%s) = %.12g\n", path_label(state.path_basis, row),
                            k == 0 ? k0 : k1, std::norm(state.amp[row][k]));
    }
    return kExitPass;
}

// -------------------------------------------------------------- profile ---

int cmd_profile(const std::string& catalog_path, const std::string& scenario_name,
                const std::string& plane, const std::string& projection_name,
                const std::string& out_path, const std::vector<std::string>& overrides) {
    const Catalog catalog = load_catalog_file(catalog_path);
    const Scenario* found = catalog.find(scenario_name);
    if (!found) {
        std::cerr << "error: no scenario named '" << scenario_name << "' in " << catalog_path
                  << "\n";
        return kExitUsage;
    }
    Scenario scenario = *found;
    apply_overrides(scenario.config, overrides);

    FieldProjection projection;
    if (projection_name == "H") projection = FieldProjection::H;
    else if (projection_name == "V") projection = FieldProjection::V;
    else if (projection_name == "L") projection = FieldProjection::L;
    else if (projection_name == "R") projection = FieldProjection::R;
    else if (projection_name == "total") projection = FieldProjection::Total;
    else {
        std::cerr << "error: unknown projection '" << projection_name << "'\n";
        return kExitUsage;
    }

    ExperimentConfig cfg = scenario.config;
    if (scenario.wire_mode != Scenario::WireMode::None) cfg.wires = detail::place_wires(scenario);
    cfg.validate();

    PolarizedField field;
    if (plane == "aperture") {
        field = make_aperture_field(cfg);
    } else if (plane == "lens-entry") {
        field = propagate(make_aperture_field(cfg), cfg.z_lens, "lens-entry");
    } else if (plane == "image") {
        field = detail::run_pipeline(cfg).image;
    } else {
        std::cerr << "error: unknown plane '" << plane << "' (aperture/lens-entry/image)\n";
        return kExitUsage;
    }
    field = project_field(field, projection);

    const std::string hash = config_hash(cfg);
    if (out_path.empty() || out_path == "-") {
        write_intensity_csv(std::cout, field, hash);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        write_intensity_csv(out, field, hash);
    }
    return kExitPass;
}

// ------------------------------------------------------------------ run ---

int cmd_run(const std::string& catalog_path, const std::string& out_dir, std::uint64_t seed,
            const std::vector<std::string>& overrides) {
    std::ifstream catalog_stream(catalog_path, std::ios::binary);
    if (!catalog_stream) {
        std::cerr << "error: cannot read catalog file: " << catalog_path << "\n";
        return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << catalog_stream.rdbuf();
    const std::string catalog_text = buffer.str();
    Catalog catalog = load_catalog_text(catalog_text);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << out_dir << ": " << ec.message()
                  << "\n";
        return kExitUsage;
    }

    RunManifest manifest;
    manifest.catalog_path = catalog_path;
    manifest.catalog_hash = text_hash(catalog_text);
    manifest.seed = seed;
    manifest.overrides = overrides;

    bool all_passed = true;
    std::vector<std::string> failures;
    for (Scenario scenario : catalog.scenarios) {
        apply_overrides(scenario.config, overrides);
        manifest.scenario_names.push_back(scenario.name);

        ScenarioResult result = run_scenario(scenario);
        const std::string hash = config_hash(result.config);
        nlohmann::ordered_json summary = result_to_json(result, hash);
        summary["manifest_catalog_hash"] = manifest.catalog_hash;
        summary["seed"] = seed;
        if (!scenario.note.empty()) summary["note"] = scenario.note;

        if (scenario.photon_count > 0) {
            const OutcomeTable table = build_outcome_table(result, scenario.photon_source);
            const PhotonRecord record =
                sample_photons(table, static_cast<std::uint64_t>(scenario.photon_count), seed,
                               photon_stream_id(scenario.name));
            summary["photons"] = photons_to_json(record);
            const std::string events_name = scenario.name + ".events.csv";
            std::ofstream events(fs::path(out_dir) / events_name, std::ios::binary);
            write_events_csv(events, record, hash);
            manifest.output_files.push_back(events_name);
        }

        auto write_profile = [&](const PolarizedField& field, const std::string& suffix) {
            const std::string file_name = scenario.name + "." + suffix + ".csv";
            std::ofstream out(fs::path(out_dir) / file_name, std::ios::binary);
            write_intensity_csv(out, field, hash);
            manifest.output_files.push_back(file_name);
        };
        write_profile(result.lens_entry, "lens-entry");
        write_profile(result.image, "image");

        const std::string summary_name = scenario.name + ".summary.json";
        std::ofstream summary_out(fs::path(out_dir) / summary_name, std::ios::binary);
        summary_out << summary.dump(2) << "\n";
        manifest.output_files.push_back(summary_name);

        std::printf("%-32s %s\n", scenario.name.c_str(), result.passed ? "pass" : "FAIL");
        for (const BoundResult& br : result.bounds) {
            if (!br.passed) failures.push_back(scenario.name + ": " + br.describe());
            std::printf("    [%s] %s\n", br.passed ? "ok" : "FAIL", br.describe().c_str());
        }
        all_passed = all_passed && result.passed;
    }

    std::ofstream manifest_out(fs::path(out_dir) / "run_manifest.json", std::ios::binary);
    manifest_out << manifest.to_json().dump(2) << "\n";

    if (!all_passed) {
        std::cerr << "failed bounds:\n";
        for (const std::string& f : failures) std::cerr << "  " << f << "\n";
        return kExitBoundFailure;
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modified two-slit experiment simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario catalog and write summaries");
    std::string run_catalog = default_catalog_path();
    std::string run_out = "twoslit-out";
    std::uint64_t seed = 1;
    std::vector<std::string> overrides;
    run->add_option("--catalog", run_catalog, "scenario catalog file");
    run->add_option("--out", run_out, "output directory");
    run->add_option("--seed", seed, "photon stream seed");
    run->add_option("--set", overrides, "config override key=value (repeatable)");

    auto* state = app.add_subcommand("state", "exact path-polarization state calculator");
    StateOptions state_opt;
    state->add_flag("--markers,!--no-markers", state_opt.markers,
                    "quarter-wave-plate path markers on the slits");
    state->add_option("--stage", state_opt.stages,
                      "pipeline stage: lens, project-H/V/L/R (repeatable, in order)");
    state->add_option("--basis", state_opt.basis, "polarization display basis: linear|circular")
        ->check(CLI::IsMember({"linear", "circular"}));
    state->add_option("--path-basis", state_opt.path_basis,
                      "path display basis before the lens: slit|plusminus")
        ->check(CLI::IsMember({"slit", "plusminus"}));

    auto* profile = app.add_subcommand("profile", "export an intensity profile as CSV");
    std::string prof_catalog = default_catalog_path();
    std::string prof_scenario, prof_plane = "lens-entry", prof_projection = "total",
                prof_out;
    profile->add_option("--catalog", prof_catalog, "scenario catalog file");
    profile->add_option("--scenario", prof_scenario, "scenario name")->required();
    profile->add_option("--plane", prof_plane, "aperture|lens-entry|image");
    profile->add_option("--projection", prof_projection, "H|V|L|R|total");
    profile->add_option("--out", prof_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_catalog, run_out, seed, overrides);
        if (state->parsed()) return cmd_state(state_opt);
        if (profile->parsed())
            return cmd_profile(prof_catalog, prof_scenario, prof_plane, prof_projection, prof_out,
                               overrides);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
