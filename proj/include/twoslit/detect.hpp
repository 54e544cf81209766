#pragma once

// Detection at the image plane.  Two windows sit on the geometric images of
// the slits (slit A at -d/2 images to +M*d/2 through the inverting lens),
// each detector_window_factor times the magnified slit width wide.  The
// joint table resolves each window's power into the two outcomes of the
// analysis basis; a single-outcome analyzer additionally books the blocked
// in-window component as absorbed.  probabilities + absorbed + spill = 1.

#include <array>
#include <cmath>
#include <vector>

#include "twoslit/algebra.hpp"
#include "twoslit/config.hpp"
#include "twoslit/field.hpp"

namespace twoslit {

struct DetectionSummary {
    PolBasis analysis_basis = PolBasis::Linear;
    /// joint[detector][outcome]; detector 0 = D_A, 1 = D_B;
    /// outcome order (H,V) or (L,R) per analysis_basis.
    std::array<std::array<double, 2>, 2> joint{};
    /// Whole-plane power per outcome (denominator for "fraction of the
    /// analyzer-passing light" metrics).
    std::array<double, 2> outcome_total{};
    /// Per-detector probability respecting the analyzer setting.
    std::array<double, 2> detected{};
    double absorbed_fraction = 0.0;  ///< wires + analyzer-blocked window power
    double spill_fraction = 0.0;     ///< outside both windows, incl. band-limit clip
    std::array<double, 2> window_centers{};
    double window_halfwidth = 0.0;

    /// Lens-entry diagnostics, filled by the scenario pipeline.
    double visibility_h = 0.0;
    double visibility_v = 0.0;
    double visibility_total = 0.0;
    double fill_factor = 0.0;
    double wire_absorbed_fraction = 0.0;  ///< power removed / power incident at the wires

    double detected_total() const { return detected[0] + detected[1]; }
    /// joint cell conditioned on the photon landing in either window.
    double conditional(int detector, int outcome) const {
        const double t = joint[0][0] + joint[0][1] + joint[1][0] + joint[1][1];
        return t > 0.0 ? joint[detector][outcome] / t : 0.0;
    }
};

inline PolBasis analysis_basis_for(Analyzer a) {
    return (a == Analyzer::L || a == Analyzer::R) ? PolBasis::Circular : PolBasis::Linear;
}

/// Column selected by a single-outcome analyzer, -1 for none.
inline int analyzer_column(Analyzer a) {
    switch (a) {
        case Analyzer::H:
        case Analyzer::L: return 0;
        case Analyzer::V:
        case Analyzer::R: return 1;
        default: return -1;
    }
}

inline DetectionSummary detect(const PolarizedField& image, const ExperimentConfig& cfg) {
    const double mag = cfg.magnification();
    const double center = 0.5 * mag * cfg.slit_separation;
    const double window_halfwidth = 0.5 * cfg.detector_window_factor * mag * cfg.slit_width;
    if (window_halfwidth <= 0.0) throw geometry_error("detector window has zero width");
    if (2.0 * window_halfwidth > 2.0 * center)
        throw geometry_error("detector windows overlap: window width exceeds image separation");
    if (center + window_halfwidth > image.halfwidth())
        throw geometry_error("detector window extends outside the grid");

    DetectionSummary s;
    s.analysis_basis = analysis_basis_for(cfg.analyzer);
    s.window_centers = {+center, -center};  // images of slit A, slit B
    s.window_halfwidth = window_halfwidth;

    const FieldProjection proj0 =
        s.analysis_basis == PolBasis::Linear ? FieldProjection::H : FieldProjection::L;
    const FieldProjection proj1 =
        s.analysis_basis == PolBasis::Linear ? FieldProjection::V : FieldProjection::R;
    const std::vector<double> comp0 = intensity(image, proj0);
    const std::vector<double> comp1 = intensity(image, proj1);

    double window_power = 0.0;
    for (int k = 0; k < 2; ++k) {
        const std::vector<double>& comp = k == 0 ? comp0 : comp1;
        double total = 0.0;
        for (int i = 0; i < image.n; ++i) total += comp[i];
        s.outcome_total[k] = total * image.dx;
        for (int d = 0; d < 2; ++d) {
            const double lo = s.window_centers[d] - window_halfwidth;
            const double hi = s.window_centers[d] + window_halfwidth;
            double acc = 0.0;
            for (int i = 0; i < image.n; ++i) {
                const double cov = cell_coverage(image.x(i), image.dx, lo, hi);
                if (cov > 0.0) acc += comp[i] * cov;
            }
            s.joint[d][k] = acc * image.dx;
            window_power += s.joint[d][k];
        }
    }

    const int selected = analyzer_column(cfg.analyzer);
    double analyzer_blocked = 0.0;
    for (int d = 0; d < 2; ++d) {
        if (selected < 0) {
            s.detected[d] = s.joint[d][0] + s.joint[d][1];
        } else {
            s.detected[d] = s.joint[d][selected];
            analyzer_blocked += s.joint[d][1 - selected];
        }
    }

    s.absorbed_fraction = image.absorbed_power + analyzer_blocked;
    s.spill_fraction = (image.power() - window_power) + image.clipped_power;
    return s;
}

}  // namespace twoslit
