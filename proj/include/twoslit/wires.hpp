#pragma once

// Absorbing wires at the lens-entry plane.  Fully absorptive, no
// reflection: the amplitude on the wire support is removed and booked as
// absorbed power; diffraction by the resulting mask emerges from the
// subsequent propagation.  Edge cells are coverage-weighted like the
// aperture's.

#include <algorithm>
#include <cmath>

#include "twoslit/config.hpp"
#include "twoslit/field.hpp"

namespace twoslit {

struct WireMaskResult {
    PolarizedField field;
    double absorbed_fraction = 0.0;  ///< power removed / power incident
};

inline WireMaskResult apply_wire_mask(const PolarizedField& f, const WireSpec& wires) {
    if (wires.width < 0) throw geometry_error("wire width must be >= 0");
    std::vector<double> centers = wires.centers;
    std::sort(centers.begin(), centers.end());
    for (std::size_t i = 0; i + 1 < centers.size(); ++i)
        if (centers[i + 1] - centers[i] < wires.width) throw geometry_error("wires overlap");
    for (double c : centers)
        if (std::abs(c) + 0.5 * wires.width > f.halfwidth())
            throw geometry_error("wire extends outside the grid");

    WireMaskResult result{f, 0.0};
    if (centers.empty() || wires.width == 0.0) return result;

    const double before = f.power();
    PolarizedField& out = result.field;
    for (double c : centers) {
        const double lo = c - 0.5 * wires.width;
        const double hi = c + 0.5 * wires.width;
        for (int i = 0; i < f.n; ++i) {
            const double cov = cell_coverage(f.x(i), f.dx, lo, hi);
            if (cov == 0.0) continue;
            const double keep = std::sqrt(1.0 - cov);
            out.e_h[i] *= keep;
            out.e_v[i] *= keep;
        }
    }
    const double removed = before - out.power();
    out.absorbed_power += removed;
    result.absorbed_fraction = before > 0.0 ? removed / before : 0.0;
    return result;
}

/// Covered fraction of the illumination: count*width over the equivalent
/// width of the total-intensity envelope (power / peak intensity).
inline double wire_fill_factor(const WireSpec& wires, const PolarizedField& f) {
    if (wires.centers.empty() || wires.width == 0.0) return 0.0;
    const std::vector<double> total = intensity(f, FieldProjection::Total);
    const double peak = *std::max_element(total.begin(), total.end());
    if (peak <= 0.0) return 0.0;
    const double equivalent_width = f.power() / peak;
    return static_cast<double>(wires.centers.size()) * wires.width / equivalent_width;
}

}  // namespace twoslit
