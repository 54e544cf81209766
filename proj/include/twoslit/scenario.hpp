#pragma once

// Named, data-driven experiment runs.  A Scenario is an ExperimentConfig
// plus wire-placement instructions and a list of expected bounds; running
// it executes the wave-optics pipeline end to end, measures a catalog of
// named metrics, evaluates every bound, and (for both-slit scenarios)
// cross-validates the detection table against the exact path-polarization
// algebra.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twoslit/algebra.hpp"
#include "twoslit/aperture.hpp"
#include "twoslit/config.hpp"
#include "twoslit/detect.hpp"
#include "twoslit/fringes.hpp"
#include "twoslit/propagation.hpp"
#include "twoslit/wires.hpp"

namespace twoslit {

struct Bound {
    enum class Kind { Less, Greater, Within };
    std::string metric;
    Kind kind = Kind::Less;
    double value = 0.0;      ///< threshold, or center for Within
    double tolerance = 0.0;  ///< Within only
    std::string rationale;   ///< provenance note, mandatory in catalogs
};

struct BoundResult {
    Bound bound;
    double measured = 0.0;
    bool available = false;
    bool passed = false;

    std::string describe() const {
        char buf[160];
        const char* op = bound.kind == Bound::Kind::Less      ? "<"
                         : bound.kind == Bound::Kind::Greater ? ">"
                                                              : "within";
        if (!available)
            std::snprintf(buf, sizeof buf, "%s %s %g: metric unavailable", bound.metric.c_str(), op,
                          bound.value);
        else if (bound.kind == Bound::Kind::Within)
            std::snprintf(buf, sizeof buf, "%s = %.6g (expected %g +/- %g)", bound.metric.c_str(),
                          measured, bound.value, bound.tolerance);
        else
            std::snprintf(buf, sizeof buf, "%s = %.6g (expected %s %g)", bound.metric.c_str(),
                          measured, op, bound.value);
        return buf;
    }
};

struct Scenario {
    std::string name;
    std::string title;
    std::string note;  ///< flags catalog-chosen values that have no external reference
    ExperimentConfig config;

    enum class WireMode { None, AutoDarkFringes, Explicit };
    WireMode wire_mode = WireMode::None;
    int wire_count = 6;
    double wire_width = 0.0;            ///< meters; used when wire_fringe_fraction == 0
    double wire_fringe_fraction = 0.0;  ///< width = fringe_spacing / fraction when > 0
    std::vector<double> wire_centers;   ///< Explicit mode

    bool cross_validate = false;
    long long photon_count = 0;
    enum class PhotonSource { Exact, Wave } photon_source = PhotonSource::Exact;

    std::vector<Bound> bounds;

    double resolved_wire_width() const {
        return wire_fringe_fraction > 0.0 ? config.fringe_spacing() / wire_fringe_fraction
                                          : wire_width;
    }
};

struct CrossRow {
    std::string quantity;
    double exact = 0.0;
    double wave = 0.0;
    double delta = 0.0;
};

struct ScenarioResult {
    std::string name;
    ExperimentConfig config;  ///< with wires resolved to explicit centers
    DetectionSummary summary;
    std::optional<DetectionSummary> summary_without_wires;
    std::vector<CrossRow> cross;
    std::map<std::string, double> metrics;
    std::vector<BoundResult> bounds;
    bool passed = true;
    PolarizedField lens_entry;  ///< pre-wire pattern at the lens plane
    PolarizedField image;       ///< field at the detector plane
};

namespace detail {

/// Wires go where a calibration run with a screen would find the dark
/// fringes: both slits open, no markers, same geometry.
inline WireSpec place_wires(const Scenario& s) {
    WireSpec wires;
    wires.width = s.resolved_wire_width();
    if (s.wire_mode == Scenario::WireMode::Explicit) {
        wires.centers = s.wire_centers;
        return wires;
    }
    ExperimentConfig reference = s.config;
    reference.markers = false;
    reference.open_slits = OpenSlits::Both;
    reference.wires.reset();
    PolarizedField field = propagate(make_aperture_field(reference), reference.z_lens, "lens-entry");
    wires.centers = find_dark_fringes(field, s.wire_count);
    return wires;
}

struct PipelineRun {
    DetectionSummary summary;
    PolarizedField lens_entry;  ///< pre-wire interference pattern
    PolarizedField image;
    double wire_h_loss = 0.0;  ///< fraction of H power removed by the wires
    double wire_v_loss = 0.0;
};

inline PipelineRun run_pipeline(const ExperimentConfig& cfg) {
    PipelineRun run;
    const PolarizedField at_lens = propagate(make_aperture_field(cfg), cfg.z_lens, "lens-entry");
    run.lens_entry = at_lens;

    PolarizedField masked = at_lens;
    double wire_absorbed = 0.0;
    if (cfg.wires && !cfg.wires->centers.empty()) {
        auto component_power = [](const PolarizedField& f, FieldProjection p) {
            const auto profile = intensity(f, p);
            double acc = 0.0;
            for (double v : profile) acc += v;
            return acc * f.dx;
        };
        const double h_before = component_power(at_lens, FieldProjection::H);
        const double v_before = component_power(at_lens, FieldProjection::V);
        WireMaskResult m = apply_wire_mask(at_lens, *cfg.wires);
        masked = std::move(m.field);
        wire_absorbed = m.absorbed_fraction;
        if (h_before > 0.0)
            run.wire_h_loss = 1.0 - component_power(masked, FieldProjection::H) / h_before;
        if (v_before > 0.0)
            run.wire_v_loss = 1.0 - component_power(masked, FieldProjection::V) / v_before;
    }

    run.image = propagate(apply_thin_lens(masked, cfg.focal_length), cfg.z_image_effective(), "image");
    run.summary = detect(run.image, cfg);

    const double vis_window = 0.51 * cfg.fringe_spacing();
    run.summary.visibility_h = fringe_visibility(at_lens, FieldProjection::H, vis_window);
    run.summary.visibility_v = fringe_visibility(at_lens, FieldProjection::V, vis_window);
    run.summary.visibility_total = fringe_visibility(at_lens, FieldProjection::Total, vis_window);
    run.summary.wire_absorbed_fraction = wire_absorbed;
    if (cfg.wires) run.summary.fill_factor = wire_fill_factor(*cfg.wires, at_lens);
    return run;
}

inline const char* outcome_label(PolBasis basis, int k) {
    if (basis == PolBasis::Linear) return k == 0 ? "H" : "V";
    return k == 0 ? "L" : "R";
}

}  // namespace detail

/// Exact-algebra prediction for a config: prepared state through the lens,
/// analyzed in the basis the config's analyzer implies.
inline DetectorTable exact_prediction(const ExperimentConfig& cfg) {
    const PathPolState at_detectors = apply_lens(make_initial_state(cfg.markers));
    return detector_statistics(at_detectors, analysis_basis_for(cfg.analyzer));
}

/// Quantity-by-quantity comparison of the exact algebra against a measured
/// wave-optics summary: the four joint cells as absolute probabilities and
/// conditioned on detection (the conditioned rows cancel the capture loss a
/// finite aperture necessarily has and converge to the algebra with grid
/// resolution).
inline std::vector<CrossRow> cross_validate_table(const DetectionSummary& wave,
                                                  const ExperimentConfig& cfg) {
    const DetectorTable exact = exact_prediction(cfg);
    std::vector<CrossRow> rows;
    const char* det[2] = {"D_A", "D_B"};
    for (int d = 0; d < 2; ++d)
        for (int k = 0; k < 2; ++k) {
            CrossRow abs_row;
            abs_row.quantity = std::string("P(") + det[d] + "," +
                               detail::outcome_label(wave.analysis_basis, k) + ")";
            abs_row.exact = exact.p[d][k];
            abs_row.wave = wave.joint[d][k];
            abs_row.delta = std::abs(abs_row.exact - abs_row.wave);
            rows.push_back(abs_row);
        }
    for (int d = 0; d < 2; ++d)
        for (int k = 0; k < 2; ++k) {
            CrossRow cond_row;
            cond_row.quantity = std::string("P(") + det[d] + "," +
                                detail::outcome_label(wave.analysis_basis, k) + " | detected)";
            cond_row.exact = exact.p[d][k];  // the algebra has no loss channel
            cond_row.wave = wave.conditional(d, k);
            cond_row.delta = std::abs(cond_row.exact - cond_row.wave);
            rows.push_back(cond_row);
        }
    return rows;
}

/// Convenience form of the spec'd operation: run the pipeline, compare.
inline std::vector<CrossRow> cross_validate(const Scenario& s) {
    if (s.config.open_slits != OpenSlits::Both)
        throw config_error("cross-validation requires both slits open");
    ExperimentConfig cfg = s.config;
    cfg.wires.reset();
    return cross_validate_table(detail::run_pipeline(cfg).summary, cfg);
}

inline ScenarioResult run_scenario(const Scenario& s) {
    ScenarioResult result;
    result.name = s.name;
    try {
        ExperimentConfig cfg = s.config;
        if (s.wire_mode != Scenario::WireMode::None) cfg.wires = detail::place_wires(s);
        cfg.validate();
        result.config = cfg;

        detail::PipelineRun run = detail::run_pipeline(cfg);
        result.summary = run.summary;
        result.lens_entry = run.lens_entry;
        result.image = run.image;

        auto& m = result.metrics;
        const DetectionSummary& sum = run.summary;
        m["p_da"] = sum.detected[0];
        m["p_db"] = sum.detected[1];
        m["p_detected"] = sum.detected_total();
        m["balance"] = std::abs(sum.detected[0] - sum.detected[1]);
        m["absorbed_fraction"] = sum.absorbed_fraction;
        m["spill_fraction"] = sum.spill_fraction;
        m["vis_h"] = sum.visibility_h;
        m["vis_v"] = sum.visibility_v;
        m["vis_total"] = sum.visibility_total;
        const bool linear = sum.analysis_basis == PolBasis::Linear;
        m[linear ? "p_da_h" : "p_da_l"] = sum.joint[0][0];
        m[linear ? "p_da_v" : "p_da_r"] = sum.joint[0][1];
        m[linear ? "p_db_h" : "p_db_l"] = sum.joint[1][0];
        m[linear ? "p_db_v" : "p_db_r"] = sum.joint[1][1];

        const int selected = analyzer_column(cfg.analyzer);
        if (selected >= 0 && sum.outcome_total[selected] > 0.0) {
            m["analyzer_pass_da_fraction"] = sum.joint[0][selected] / sum.outcome_total[selected];
            m["analyzer_pass_db_fraction"] = sum.joint[1][selected] / sum.outcome_total[selected];
        }

        if (cfg.wires) {
            m["fill_factor"] = sum.fill_factor;
            m["wire_absorbed_fraction"] = sum.wire_absorbed_fraction;
            if (sum.fill_factor > 0.0)
                m["absorbed_over_fill"] = sum.wire_absorbed_fraction / sum.fill_factor;
            m["wire_h_loss"] = run.wire_h_loss;
            m["wire_v_loss"] = run.wire_v_loss;

            ExperimentConfig bare = cfg;
            bare.wires.reset();
            detail::PipelineRun reference = detail::run_pipeline(bare);
            result.summary_without_wires = reference.summary;
            m["delta_detected_vs_nowires"] =
                std::abs(sum.detected_total() - reference.summary.detected_total());
        }

        if (cfg.markers && cfg.open_slits == OpenSlits::Both) {
            try {
                const double search = 3.2 * cfg.fringe_spacing();
                const auto h_minima = normalized_fringe_extrema(run.lens_entry, FieldProjection::H,
                                                                6, false, search);
                const auto v_maxima = normalized_fringe_extrema(run.lens_entry, FieldProjection::V,
                                                                6, true, search);
                double worst = 0.0;
                for (std::size_t i = 0; i < h_minima.size(); ++i)
                    worst = std::max(worst, std::abs(h_minima[i] - v_maxima[i]));
                m["anticorr_offset_cells"] = worst / cfg.dx();
            } catch (const no_fringes_error&) {
                // leave the metric unavailable; a bound on it will fail loudly
            }
        }

        if (s.cross_validate && cfg.open_slits == OpenSlits::Both) {
            ExperimentConfig bare = cfg;
            bare.wires.reset();
            const DetectionSummary& wave =
                result.summary_without_wires ? *result.summary_without_wires : run.summary;
            result.cross = cross_validate_table(wave, bare);
            double worst_abs = 0.0, worst_cond = 0.0;
            for (const auto& row : result.cross) {
                if (row.quantity.find("| detected") != std::string::npos)
                    worst_cond = std::max(worst_cond, row.delta);
                else
                    worst_abs = std::max(worst_abs, row.delta);
            }
            m["crossval_max_delta"] = worst_abs;
            m["crossval_max_delta_conditional"] = worst_cond;
        }
    } catch (const error& e) {
        throw config_error("scenario '" + s.name + "': " + e.what());
    }

    for (const Bound& b : s.bounds) {
        BoundResult br;
        br.bound = b;
        auto it = result.metrics.find(b.metric);
        if (it != result.metrics.end()) {
            br.available = true;
            br.measured = it->second;
            switch (b.kind) {
                case Bound::Kind::Less: br.passed = br.measured < b.value; break;
                case Bound::Kind::Greater: br.passed = br.measured > b.value; break;
                case Bound::Kind::Within:
                    br.passed = std::abs(br.measured - b.value) <= b.tolerance;
                    break;
            }
        }
        result.passed = result.passed && br.passed;
        result.bounds.push_back(br);
    }
    return result;
}

}  // namespace twoslit
