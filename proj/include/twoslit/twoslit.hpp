#pragma once

// Umbrella header: the exact path-polarization algebra, the polarized
// Fresnel wave-optics pipeline, the scenario harness, and the I/O helpers.

#include "twoslit/algebra.hpp"
#include "twoslit/aperture.hpp"
#include "twoslit/catalog.hpp"
#include "twoslit/config.hpp"
#include "twoslit/detect.hpp"
#include "twoslit/errors.hpp"
#include "twoslit/field.hpp"
#include "twoslit/fringes.hpp"
#include "twoslit/io.hpp"
#include "twoslit/photons.hpp"
#include "twoslit/propagation.hpp"
#include "twoslit/rng.hpp"
#include "twoslit/scenario.hpp"
#include "twoslit/stats.hpp"
#include "twoslit/version.hpp"
#include "twoslit/wires.hpp"
