#pragma once

// Fringe analysis at the lens-entry plane: local extrema with parabolic
// sub-cell refinement, dark-fringe location for wire placement, and
// max/min fringe visibility over a window.

#include <algorithm>
#include <cmath>
#include <vector>

#include "twoslit/errors.hpp"
#include "twoslit/field.hpp"

namespace twoslit {

struct Extremum {
    double position = 0.0;  ///< parabolically refined
    double value = 0.0;     ///< sample value at the grid minimum/maximum
    double contrast = 0.0;  ///< (neighbor extreme - this) / (neighbor extreme + this), in [0,1]
    double wall = 0.0;      ///< smaller of the two adjacent opposing extremes (profile units)
};

namespace detail {

/// Interior local minima of `profile` (pass maxima=true to negate), with
/// positions refined by the parabola through the three samples around each
/// minimum and contrast measured against the adjacent local maxima.
inline std::vector<Extremum> local_minima(const std::vector<double>& profile, double x0, double dx,
                                          double search_halfwidth, bool maxima = false) {
    const int n = static_cast<int>(profile.size());
    auto sample = [&](int i) { return maxima ? -profile[i] : profile[i]; };
    auto x_of = [&](int i) { return x0 + i * dx; };

    int lo = 1, hi = n - 1;
    if (search_halfwidth > 0) {
        lo = std::max(1, static_cast<int>(std::ceil((-search_halfwidth - x0) / dx)));
        hi = std::min(n - 1, static_cast<int>(std::floor((search_halfwidth - x0) / dx)) + 1);
    }

    std::vector<Extremum> out;
    for (int i = lo; i < hi; ++i) {
        if (!(sample(i) < sample(i - 1) && sample(i) <= sample(i + 1))) continue;
        Extremum e;
        const double a = sample(i - 1), b = sample(i), c = sample(i + 1);
        const double denom = a - 2.0 * b + c;
        const double offset = denom > 0.0 ? 0.5 * (a - c) / denom : 0.0;
        e.position = x_of(i) + offset * dx;
        e.value = profile[i];

        // Nearest enclosing local maxima give the local fringe contrast.
        auto wall = [&](int step) {
            int j = i;
            while (j + step > 0 && j + step < n - 1 && sample(j + step) >= sample(j)) j += step;
            return sample(j);
        };
        const double peak = std::min(wall(-1), wall(+1));
        const double span = std::abs(peak) + std::abs(b);
        e.contrast = span > 0.0 ? std::abs(peak - b) / span : 0.0;
        e.wall = maxima ? -peak : peak;
        out.push_back(e);
    }
    return out;
}

}  // namespace detail

/// The `count` dark fringes of the total intensity nearest the axis,
/// sorted by position.  Minima whose local contrast is below the 0.05
/// visibility threshold are discarded; if too few genuine minima remain
/// the pattern has no usable fringes and no_fringes_error is thrown.
inline std::vector<double> find_dark_fringes(const PolarizedField& field, int count,
                                             double search_halfwidth = 0.0) {
    if (count < 1) throw config_error("dark fringe count must be >= 1");
    constexpr double kMinContrast = 0.05;
    const std::vector<double> total = intensity(field, FieldProjection::Total);
    auto minima = detail::local_minima(total, field.x(0), field.dx, search_halfwidth);
    // A genuine dark fringe sits between genuinely bright neighbors; this
    // keeps numerical ripples in the unlit wings out of the candidate set.
    const double illuminated = 0.01 * *std::max_element(total.begin(), total.end());
    std::erase_if(minima, [&](const Extremum& e) {
        return e.contrast < kMinContrast || e.wall < illuminated;
    });
    if (static_cast<int>(minima.size()) < count)
        throw no_fringes_error("fringe visibility below 0.05: found " +
                               std::to_string(minima.size()) + " usable minima, need " +
                               std::to_string(count));
    std::sort(minima.begin(), minima.end(), [](const Extremum& a, const Extremum& b) {
        return std::abs(a.position) < std::abs(b.position);
    });
    minima.resize(count);
    std::vector<double> centers;
    centers.reserve(minima.size());
    for (const auto& e : minima) centers.push_back(e.position);
    std::sort(centers.begin(), centers.end());
    return centers;
}

/// (Imax - Imin)/(Imax + Imin) over |x| <= window_halfwidth.
inline double fringe_visibility(const PolarizedField& field, FieldProjection projection,
                                double window_halfwidth) {
    const std::vector<double> profile = intensity(field, projection);
    double vmin = 0.0, vmax = 0.0;
    bool seen = false;
    for (int i = 0; i < field.n; ++i) {
        if (std::abs(field.x(i)) > window_halfwidth) continue;
        if (!seen) {
            vmin = vmax = profile[i];
            seen = true;
        } else {
            vmin = std::min(vmin, profile[i]);
            vmax = std::max(vmax, profile[i]);
        }
    }
    if (!seen || vmax + vmin <= 0.0) return 0.0;
    return (vmax - vmin) / (vmax + vmin);
}

/// Extremum positions of one polarization component with the smooth
/// envelope divided out (profile I_comp / I_total).  Raw component maxima
/// ride the envelope slope and shift by (E'/E) * spacing^2 / (2 pi^2) --
/// several grid cells here -- while the normalized profile pins every
/// extremum to the fringe phase.  Used for the H/V anti-correlation check.
inline std::vector<double> normalized_fringe_extrema(const PolarizedField& field,
                                                     FieldProjection projection, int count,
                                                     bool maxima, double search_halfwidth) {
    const std::vector<double> comp = intensity(field, projection);
    const std::vector<double> total = intensity(field, FieldProjection::Total);
    const double floor = *std::max_element(total.begin(), total.end()) * 1e-9;
    std::vector<double> ratio(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
        ratio[i] = total[i] > floor ? comp[i] / total[i] : 0.0;
    auto extrema = detail::local_minima(ratio, field.x(0), field.dx, search_halfwidth, maxima);
    if (static_cast<int>(extrema.size()) < count)
        throw no_fringes_error("component pattern has fewer than the requested extrema");
    std::sort(extrema.begin(), extrema.end(), [](const Extremum& a, const Extremum& b) {
        return std::abs(a.position) < std::abs(b.position);
    });
    extrema.resize(count);
    std::vector<double> positions;
    positions.reserve(extrema.size());
    for (const auto& e : extrema) positions.push_back(e.position);
    std::sort(positions.begin(), positions.end());
    return positions;
}

}  // namespace twoslit
