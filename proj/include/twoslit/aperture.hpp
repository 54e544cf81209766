#pragma once

// The slit plane: top-hat amplitude of width a at each open slit center
// (slit A at -d/2, slit B at +d/2).  Edge cells are weighted by their
// geometric coverage so the effective slit width does not quantize to the
// grid.  With markers on, idealized quarter-wave plates give slit A the
// Jones vector of |L> = (1, -i)/sqrt2 and slit B that of |R> = (1, +i)/sqrt2
// (H/V components); without them both slits carry |H>.  The returned field
// is normalized to unit power.

#include <cmath>

#include "twoslit/config.hpp"
#include "twoslit/field.hpp"

namespace twoslit {

inline PolarizedField make_aperture_field(const ExperimentConfig& cfg) {
    cfg.validate();
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    const Complex i1{0.0, 1.0};

    PolarizedField f(cfg.grid_points, cfg.dx(), cfg.wavelength, "aperture");
    auto add_slit = [&f](double center, double width, Complex jones_h, Complex jones_v) {
        const double lo = center - 0.5 * width;
        const double hi = center + 0.5 * width;
        for (int i = 0; i < f.n; ++i) {
            const double cov = cell_coverage(f.x(i), f.dx, lo, hi);
            if (cov == 0.0) continue;
            const double amp = std::sqrt(cov);
            f.e_h[i] += amp * jones_h;
            f.e_v[i] += amp * jones_v;
        }
    };

    const double half_sep = 0.5 * cfg.slit_separation;
    if (cfg.open_slits != OpenSlits::B) {
        if (cfg.markers)
            add_slit(-half_sep, cfg.slit_width, inv_sqrt2, -i1 * inv_sqrt2);  // |L>
        else
            add_slit(-half_sep, cfg.slit_width, 1.0, 0.0);  // |H>
    }
    if (cfg.open_slits != OpenSlits::A) {
        if (cfg.markers)
            add_slit(+half_sep, cfg.slit_width, inv_sqrt2, +i1 * inv_sqrt2);  // |R>
        else
            add_slit(+half_sep, cfg.slit_width, 1.0, 0.0);  // |H>
    }

    const double p = f.power();
    if (p <= 0.0) throw geometry_error("aperture field carries no power");
    const double scale = 1.0 / std::sqrt(p);
    for (int i = 0; i < f.n; ++i) {
        f.e_h[i] *= scale;
        f.e_v[i] *= scale;
    }
    return f;
}

}  // namespace twoslit
