#pragma once

// Scalar polarized field on a uniform 1-D transverse grid: one complex
// profile per Jones component (H and V).  Fields are immutable values; the
// two power ledgers (clipped, absorbed) accumulate everything removed from
// the field so energy accounting closes exactly.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "twoslit/algebra.hpp"
#include "twoslit/errors.hpp"

namespace twoslit {

struct PolarizedField {
    int n = 0;
    double dx = 0.0;
    double wavelength = 0.0;
    std::vector<Complex> e_h, e_v;
    std::string plane_tag;
    double clipped_power = 0.0;   ///< removed by band limiting, cumulative
    double absorbed_power = 0.0;  ///< removed by wires / analyzers, cumulative

    PolarizedField() = default;
    PolarizedField(int n_, double dx_, double wavelength_, std::string tag)
        : n(n_), dx(dx_), wavelength(wavelength_), e_h(n_), e_v(n_), plane_tag(std::move(tag)) {
        if (n_ < 2) throw config_error("field grid needs at least 2 points");
        if (dx_ <= 0 || wavelength_ <= 0) throw config_error("dx and wavelength must be positive");
    }

    double x(int i) const { return (i - n / 2) * dx; }
    double halfwidth() const { return 0.5 * n * dx; }

    double power() const {
        double p = 0.0;
        for (int i = 0; i < n; ++i) p += std::norm(e_h[i]) + std::norm(e_v[i]);
        return p * dx;
    }
};

enum class FieldProjection { H, V, L, R, Total };

inline const char* to_string(FieldProjection p) {
    switch (p) {
        case FieldProjection::H: return "H";
        case FieldProjection::V: return "V";
        case FieldProjection::L: return "L";
        case FieldProjection::R: return "R";
        default: return "total";
    }
}

/// Intensity profile of one Jones projection (or the total).
inline std::vector<double> intensity(const PolarizedField& f, FieldProjection p) {
    constexpr double half = 0.5;
    std::vector<double> out(f.n);
    const Complex i1{0.0, 1.0};
    for (int i = 0; i < f.n; ++i) {
        switch (p) {
            case FieldProjection::H: out[i] = std::norm(f.e_h[i]); break;
            case FieldProjection::V: out[i] = std::norm(f.e_v[i]); break;
            case FieldProjection::L: out[i] = half * std::norm(f.e_h[i] + i1 * f.e_v[i]); break;
            case FieldProjection::R: out[i] = half * std::norm(f.e_h[i] - i1 * f.e_v[i]); break;
            case FieldProjection::Total: out[i] = std::norm(f.e_h[i]) + std::norm(f.e_v[i]); break;
        }
    }
    return out;
}

/// The field passed by an ideal polarizer along the given projection
/// (Total returns a copy).  Blocked power is added to the absorbed ledger.
inline PolarizedField project_field(const PolarizedField& f, FieldProjection p) {
    PolarizedField out = f;
    if (p == FieldProjection::Total) return out;
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    const Complex i1{0.0, 1.0};
    const double before = f.power();
    for (int i = 0; i < f.n; ++i) {
        switch (p) {
            case FieldProjection::H: out.e_v[i] = 0.0; break;
            case FieldProjection::V: out.e_h[i] = 0.0; break;
            case FieldProjection::L: {
                const Complex amp_l = (f.e_h[i] + i1 * f.e_v[i]) * inv_sqrt2;
                out.e_h[i] = amp_l * inv_sqrt2;
                out.e_v[i] = -i1 * amp_l * inv_sqrt2;
                break;
            }
            case FieldProjection::R: {
                const Complex amp_r = (f.e_h[i] - i1 * f.e_v[i]) * inv_sqrt2;
                out.e_h[i] = amp_r * inv_sqrt2;
                out.e_v[i] = i1 * amp_r * inv_sqrt2;
                break;
            }
            case FieldProjection::Total: break;
        }
    }
    out.absorbed_power += before - out.power();
    return out;
}

/// Fraction of the cell centered at x_center covered by [lo, hi].
inline double cell_coverage(double x_center, double dx, double lo, double hi) {
    const double a = std::max(lo, x_center - 0.5 * dx);
    const double b = std::min(hi, x_center + 0.5 * dx);
    return b > a ? (b - a) / dx : 0.0;
}

/// Normalized complex overlap |<f|g>| / (|f| |g|) over both components.
inline double field_overlap(const PolarizedField& f, const PolarizedField& g) {
    if (f.n != g.n) throw config_error("field overlap requires equal grids");
    Complex ip = 0.0;
    double nf = 0.0, ng = 0.0;
    for (int i = 0; i < f.n; ++i) {
        ip += std::conj(f.e_h[i]) * g.e_h[i] + std::conj(f.e_v[i]) * g.e_v[i];
        nf += std::norm(f.e_h[i]) + std::norm(f.e_v[i]);
        ng += std::norm(g.e_h[i]) + std::norm(g.e_v[i]);
    }
    if (nf <= 0 || ng <= 0) return 0.0;
    return std::abs(ip) / std::sqrt(nf * ng);
}

}  // namespace twoslit
