#pragma once

// Shared test fixtures.  The "fast" geometry keeps every config invariant
// of the default apparatus but shrinks the grid to 4096 points so
// wave-optics unit tests run in milliseconds: 160 um slits 1.28 mm apart,
// 16 mm half-grid (about 4 envelope zeros, ~97.5% capture).

#include "twoslit/config.hpp"

namespace twoslit::testing {

inline ExperimentConfig fast_config() {
    ExperimentConfig cfg;
    cfg.wavelength = 650e-9;
    cfg.slit_width = 160e-6;
    cfg.slit_separation = 1280e-6;
    cfg.z_lens = 1.0;
    cfg.focal_length = 0.5;
    cfg.grid_halfwidth = 0.016;
    cfg.grid_points = 4096;
    return cfg;
}

}  // namespace twoslit::testing
