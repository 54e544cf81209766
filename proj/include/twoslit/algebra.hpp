#pragma once

// Exact engine for the 4-dimensional path (x) polarization Hilbert space of a
// two-slit apparatus with polarization path markers.  States are 2x2 complex
// amplitude matrices (row = path, column = polarization) tagged with the
// basis each axis is currently expressed in.  Every operation is a pure
// function; basis changes are explicit and recorded in the tags.

#include <array>
#include <cmath>
#include <complex>

#include "twoslit/errors.hpp"

namespace twoslit {

using Complex = std::complex<double>;
using Amp2x2 = std::array<std::array<Complex, 2>, 2>;

/// Which pair of kets the path axis currently means.
enum class PathBasis {
    SlitAB,     ///< |psi_A>, |psi_B>: amplitude emerging from each slit
    PlusMinus,  ///< |phi_+>, |phi_->: symmetric (bright) / antisymmetric (dark) combinations
    Detector,   ///< |D_A>, |D_B>: reachable only through apply_lens
};

/// Which pair of kets the polarization axis currently means.
enum class PolBasis {
    Circular,  ///< |L>, |R>
    Linear,    ///< |H>, |V>
};

enum class PolAxis { H, V, L, R };

inline PolBasis basis_of(PolAxis axis) {
    return (axis == PolAxis::H || axis == PolAxis::V) ? PolBasis::Linear : PolBasis::Circular;
}

/// Column index of an axis within its own basis.
inline int column_of(PolAxis axis) {
    return (axis == PolAxis::H || axis == PolAxis::L) ? 0 : 1;
}

struct PathPolState {
    Amp2x2 amp{};  ///< amp[path][pol]
    PathBasis path_basis = PathBasis::SlitAB;
    PolBasis pol_basis = PolBasis::Circular;
    /// Squared norm of the projected component for post-projection states;
    /// 1 for freshly prepared states.  The amplitudes themselves stay
    /// normalized whenever renormalizable is true.
    double norm2 = 1.0;
    bool renormalizable = true;
};

inline double norm_squared(const PathPolState& s) {
    double n = 0.0;
    for (const auto& row : s.amp)
        for (const auto& a : row) n += std::norm(a);
    return n;
}

/// <a|b>.  Both states must carry identical basis tags.
inline Complex overlap(const PathPolState& a, const PathPolState& b) {
    if (a.path_basis != b.path_basis || a.pol_basis != b.pol_basis)
        throw invalid_state_error("overlap requires matching basis tags");
    Complex v = 0.0;
    for (int p = 0; p < 2; ++p)
        for (int k = 0; k < 2; ++k) v += std::conj(a.amp[p][k]) * b.amp[p][k];
    return v;
}

/// Equality of normalized states up to a global phase: |<a|b>| = 1 within tol.
inline bool equal_up_to_phase(const PathPolState& a, const PathPolState& b, double tol = 1e-12) {
    return std::abs(std::abs(overlap(a, b)) - 1.0) <= tol;
}

/// Initial state just behind the slits.  With markers, quarter-wave plates
/// tag slit A with |L> and slit B with |R>; without them both slit
/// amplitudes carry the fixed linear input polarization |H>.
inline PathPolState make_initial_state(bool markers) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    PathPolState s;
    s.path_basis = PathBasis::SlitAB;
    if (markers) {
        s.pol_basis = PolBasis::Circular;
        s.amp[0][0] = inv_sqrt2;  // |A>|L>
        s.amp[1][1] = inv_sqrt2;  // |B>|R>
    } else {
        s.pol_basis = PolBasis::Linear;
        s.amp[0][0] = inv_sqrt2;  // |A>|H>
        s.amp[1][0] = inv_sqrt2;  // |B>|H>
    }
    return s;
}

namespace detail {

// Hadamard-type map shared by SlitAB<->PlusMinus (self-inverse):
// column vector (c0, c1) -> ((c0+c1)/sqrt2, (c0-c1)/sqrt2), applied per
// polarization column.
inline Amp2x2 path_hadamard(const Amp2x2& a) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    Amp2x2 out{};
    for (int k = 0; k < 2; ++k) {
        out[0][k] = (a[0][k] + a[1][k]) * inv_sqrt2;
        out[1][k] = (a[0][k] - a[1][k]) * inv_sqrt2;
    }
    return out;
}

}  // namespace detail

/// Rewrite the path axis between SlitAB and PlusMinus using
/// |psi_A> = (|phi_+> + |phi_->)/sqrt2, |psi_B> = (|phi_+> - |phi_->)/sqrt2.
/// The detector basis is reachable only via apply_lens.
inline PathPolState path_basis_change(const PathPolState& s, PathBasis target) {
    if (target == PathBasis::Detector)
        throw invalid_target_error("detector path basis is reachable only through apply_lens");
    if (s.path_basis == PathBasis::Detector)
        throw invalid_target_error("no path basis change is defined after the lens");
    PathPolState out = s;
    if (target == s.path_basis) return out;
    out.amp = detail::path_hadamard(s.amp);
    out.path_basis = target;
    return out;
}

/// Rewrite the polarization axis using |R> = (|H> + i|V>)/sqrt2,
/// |L> = (|H> - i|V>)/sqrt2, column-wise per path.
inline PathPolState pol_basis_change(const PathPolState& s, PolBasis target) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    PathPolState out = s;
    if (target == s.pol_basis) return out;
    const Complex i{0.0, 1.0};
    for (int p = 0; p < 2; ++p) {
        const Complex c0 = s.amp[p][0];
        const Complex c1 = s.amp[p][1];
        if (target == PolBasis::Linear) {
            // (cL, cR) -> (cH, cV)
            out.amp[p][0] = (c0 + c1) * inv_sqrt2;
            out.amp[p][1] = i * (c1 - c0) * inv_sqrt2;
        } else {
            // (cH, cV) -> (cL, cR)
            out.amp[p][0] = (c0 + i * c1) * inv_sqrt2;
            out.amp[p][1] = (c0 - i * c1) * inv_sqrt2;
        }
    }
    out.pol_basis = target;
    return out;
}

/// The lens as a unitary: U|psi_A> = |D_A>, U|psi_B> = |D_B> (equivalently
/// U|phi_+> = (|D_A>+|D_B>)/sqrt2).  Polarization untouched.
inline PathPolState apply_lens(const PathPolState& s) {
    if (s.path_basis == PathBasis::Detector)
        throw invalid_state_error("lens already applied: state is in the detector basis");
    PathPolState out = s;
    if (s.path_basis == PathBasis::PlusMinus) out.amp = detail::path_hadamard(s.amp);
    out.path_basis = PathBasis::Detector;
    return out;
}

struct Projection {
    double probability = 0.0;
    PathPolState collapsed;
};

/// Project onto one polarization outcome (an ideal polarizer).  The
/// collapsed state is renormalized unless the probability is numerically
/// zero (< 1e-15), in which case probability 0 and a flagged
/// non-renormalizable state are returned.
inline Projection project_polarization(const PathPolState& s, PolAxis outcome) {
    PathPolState work = pol_basis_change(s, basis_of(outcome));
    const int keep = column_of(outcome);
    double p = 0.0;
    for (int path = 0; path < 2; ++path) {
        work.amp[path][1 - keep] = 0.0;
        p += std::norm(work.amp[path][keep]);
    }
    Projection result;
    if (p < 1e-15) {
        work.amp = Amp2x2{};
        work.norm2 = 0.0;
        work.renormalizable = false;
        result.probability = 0.0;
    } else {
        const double scale = 1.0 / std::sqrt(p);
        for (int path = 0; path < 2; ++path) work.amp[path][keep] *= scale;
        work.norm2 = p;
        result.probability = p;
    }
    result.collapsed = work;
    return result;
}

/// Joint click statistics at the two detectors, polarization analyzed in
/// the requested basis.  p[detector][outcome]; outcome order (L,R) or (H,V).
struct DetectorTable {
    PolBasis basis = PolBasis::Linear;
    std::array<std::array<double, 2>, 2> p{};

    double detector_marginal(int d) const { return p[d][0] + p[d][1]; }
    double outcome_marginal(int k) const { return p[0][k] + p[1][k]; }
    /// P(detector | outcome).
    double conditional(int d, int k) const {
        const double m = outcome_marginal(k);
        return m > 0.0 ? p[d][k] / m : 0.0;
    }
};

inline DetectorTable detector_statistics(const PathPolState& s, PolBasis basis) {
    if (s.path_basis != PathBasis::Detector)
        throw invalid_state_error("detector statistics require the detector path basis (apply the lens first)");
    const PathPolState analyzed = pol_basis_change(s, basis);
    DetectorTable table;
    table.basis = basis;
    for (int d = 0; d < 2; ++d)
        for (int k = 0; k < 2; ++k) table.p[d][k] = std::norm(analyzed.amp[d][k]);
    return table;
}

/// Standard which-path diagnostic at the lens plane.  The row of the
/// amplitude matrix attached to each path is read as that path's marker
/// state: D = sqrt(1 - |<m_A|m_B>|^2) with normalized markers, V = twice
/// the off-diagonal magnitude of the path-reduced matrix.  For any pure
/// state these satisfy D^2 + V^2 <= 1.
struct DualityReport {
    double distinguishability = 0.0;
    double visibility = 0.0;
    Amp2x2 path_reduced{};  ///< positive, unit trace
};

inline DualityReport duality_report(const PathPolState& s) {
    if (s.path_basis != PathBasis::SlitAB)
        throw invalid_state_error("duality report is defined in the slit path basis");
    DualityReport report;
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
            Complex rho = 0.0;
            for (int k = 0; k < 2; ++k) rho += s.amp[p][k] * std::conj(s.amp[q][k]);
            report.path_reduced[p][q] = rho;
        }
    report.visibility = 2.0 * std::abs(report.path_reduced[0][1]);

    const double ra2 = std::real(report.path_reduced[0][0]);
    const double rb2 = std::real(report.path_reduced[1][1]);
    if (ra2 < 1e-15 || rb2 < 1e-15) {
        // One path carries no amplitude: trivially distinguishable.
        report.distinguishability = 1.0;
        return report;
    }
    Complex m = 0.0;  // <m_A|m_B>
    for (int k = 0; k < 2; ++k) m += std::conj(s.amp[0][k]) * s.amp[1][k];
    const double overlap2 = std::norm(m) / (ra2 * rb2);
    report.distinguishability = std::sqrt(std::max(0.0, 1.0 - overlap2));
    return report;
}

}  // namespace twoslit
