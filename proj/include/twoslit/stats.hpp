#pragma once

#include <cstdint>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "twoslit/errors.hpp"

namespace twoslit {

/// Upper-tail probability of a chi-square variate: P(X >= statistic | dof).
inline double chi_square_pvalue(double statistic, int dof) {
    if (dof < 1) throw config_error("chi-square requires dof >= 1");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    /// True when a count landed in a zero-probability bin (statistic is
    /// meaningless then; the hypothesis is simply refuted).
    bool impossible_outcome = false;
};

/// Pearson chi-square of observed counts against a probability table.
/// Zero-probability bins are excluded from the statistic but refute the
/// hypothesis outright if they hold any counts.
inline ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& observed,
                                       const std::vector<double>& expected_p) {
    if (observed.size() != expected_p.size())
        throw config_error("chi-square: observed and expected sizes differ");
    std::uint64_t n = 0;
    for (auto c : observed) n += c;
    ChiSquareResult r;
    int bins = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected_p[i] <= 0.0) {
            if (observed[i] > 0) r.impossible_outcome = true;
            continue;
        }
        const double e = expected_p[i] * static_cast<double>(n);
        const double d = static_cast<double>(observed[i]) - e;
        r.statistic += d * d / e;
        ++bins;
    }
    r.dof = bins > 1 ? bins - 1 : 1;
    r.p_value = r.impossible_outcome ? 0.0 : chi_square_pvalue(r.statistic, r.dof);
    return r;
}

}  // namespace twoslit
