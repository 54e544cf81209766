#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "twoslit/errors.hpp"

namespace twoslit {

enum class OpenSlits { A, B, Both };

/// Polarizer in front of the detectors: none, or one outcome of a basis.
enum class Analyzer { None, H, V, L, R };

inline const char* to_string(OpenSlits s) {
    switch (s) {
        case OpenSlits::A: return "A";
        case OpenSlits::B: return "B";
        default: return "both";
    }
}

inline const char* to_string(Analyzer a) {
    switch (a) {
        case Analyzer::None: return "none";
        case Analyzer::H: return "H";
        case Analyzer::V: return "V";
        case Analyzer::L: return "L";
        default: return "R";
    }
}

/// Absorbing wires: center positions and one common width, all in meters.
struct WireSpec {
    std::vector<double> centers;
    double width = 0.0;
};

/// Full description of one apparatus configuration.  All quantities SI.
struct ExperimentConfig {
    double slit_width = 30e-6;        ///< a
    double slit_separation = 250e-6;  ///< d, center to center
    double z_lens = 1.0;              ///< slits -> lens
    double focal_length = 0.5;        ///< f
    double z_image = 0.0;             ///< lens -> detectors; 0 derives the thin-lens conjugate
    bool allow_defocus = false;       ///< permit an explicit z_image off the imaging condition
    double wavelength = 650e-9;
    double grid_halfwidth = 0.130;
    int grid_points = 262144;
    bool markers = false;
    Analyzer analyzer = Analyzer::None;
    OpenSlits open_slits = OpenSlits::Both;
    std::optional<WireSpec> wires;
    double detector_window_factor = 3.0;  ///< window width as a multiple of the magnified slit width
    double wire_loss_budget = 0.01;       ///< allowed detector-sum change from dark-fringe wires

    double dx() const { return 2.0 * grid_halfwidth / grid_points; }
    double z_image_effective() const {
        if (z_image > 0.0) return z_image;
        return 1.0 / (1.0 / focal_length - 1.0 / z_lens);
    }
    double magnification() const { return z_image_effective() / z_lens; }
    double fringe_spacing() const { return wavelength * z_lens / slit_separation; }

    /// Throws geometry_error / config_error naming the violated constraint.
    void validate() const {
        if (wavelength <= 0 || slit_width <= 0 || slit_separation <= 0 || z_lens <= 0 ||
            focal_length <= 0 || grid_halfwidth <= 0)
            throw config_error("all lengths must be positive");
        if (slit_separation < slit_width)
            throw geometry_error("slits overlap: slit_separation < slit_width");
        if (z_lens <= focal_length)
            throw config_error("no real image: z_lens <= focal_length");
        if (z_image > 0.0 && !allow_defocus) {
            const double lhs = 1.0 / z_lens + 1.0 / z_image;
            const double rhs = 1.0 / focal_length;
            if (std::abs(lhs - rhs) > 1e-9 * rhs)
                throw config_error("imaging condition violated: 1/z_lens + 1/z_image != 1/focal_length");
        }
        if (grid_points < 2048 || (grid_points & (grid_points - 1)) != 0)
            throw config_error("grid_points must be a power of two >= 2048");
        if (grid_halfwidth < 4.0 * (slit_separation + slit_width))
            throw config_error("grid_halfwidth < 4*(slit_separation + slit_width)");
        if (dx() > wavelength * z_lens / (4.0 * grid_halfwidth))
            throw config_error("sampling criterion violated: dx > wavelength*z_lens/(4*grid_halfwidth)");
        if (wires) {
            if (wires->width < 0) throw geometry_error("wire width must be >= 0");
            for (double c : wires->centers)
                if (std::abs(c) + wires->width / 2 > grid_halfwidth)
                    throw geometry_error("wire extends outside the grid");
            for (std::size_t i = 0; i + 1 < wires->centers.size(); ++i)
                for (std::size_t j = i + 1; j < wires->centers.size(); ++j)
                    if (std::abs(wires->centers[i] - wires->centers[j]) < wires->width)
                        throw geometry_error("wires overlap");
        }
    }
};

namespace detail {

inline std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Canonical text form of a config; basis of the config hash.
inline std::string canonical_text(const ExperimentConfig& c) {
    std::string t;
    auto kv = [&t](const char* k, const std::string& v) {
        t += k;
        t += '=';
        t += v;
        t += '\n';
    };
    kv("slit_width", detail::format_g17(c.slit_width));
    kv("slit_separation", detail::format_g17(c.slit_separation));
    kv("z_lens", detail::format_g17(c.z_lens));
    kv("focal_length", detail::format_g17(c.focal_length));
    kv("z_image", detail::format_g17(c.z_image_effective()));
    kv("wavelength", detail::format_g17(c.wavelength));
    kv("grid_halfwidth", detail::format_g17(c.grid_halfwidth));
    kv("grid_points", std::to_string(c.grid_points));
    kv("markers", c.markers ? "on" : "off");
    kv("analyzer", to_string(c.analyzer));
    kv("open_slits", to_string(c.open_slits));
    kv("detector_window_factor", detail::format_g17(c.detector_window_factor));
    if (c.wires) {
        kv("wire_width", detail::format_g17(c.wires->width));
        std::string centers;
        for (double x : c.wires->centers) {
            if (!centers.empty()) centers += ',';
            centers += detail::format_g17(x);
        }
        kv("wire_centers", centers);
    }
    return t;
}

inline std::string config_hash(const ExperimentConfig& c) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a64(canonical_text(c))));
    return buf;
}

}  // namespace twoslit
