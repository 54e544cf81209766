#pragma once

// Monte Carlo photon streams.  Each event is drawn independently from the
// scenario's outcome table by a counter-based generator keyed on
// (seed, stream, index), so streams are reproducible from the seed alone
// and independent of generation order.  Absorbed and spilled photons are
// first-class outcomes, which keeps wire-loss claims testable from the
// event record by itself.

#include <cstdint>
#include <string>
#include <vector>

#include "twoslit/config.hpp"
#include "twoslit/detect.hpp"
#include "twoslit/rng.hpp"
#include "twoslit/scenario.hpp"
#include "twoslit/stats.hpp"

namespace twoslit {

struct OutcomeTable {
    /// Parallel arrays; probabilities sum to 1 (up to roundoff).
    std::vector<std::string> detector;     ///< D_A, D_B, absorbed, spilled
    std::vector<std::string> pol_outcome;  ///< H/V/L/R or none
    std::vector<double> p;

    int size() const { return static_cast<int>(p.size()); }
};

/// Table for sampling: either the exact-algebra prediction (ideal
/// apparatus, zero cells exactly zero) or the measured wave-optics summary
/// (absorbed and spilled channels populated).
inline OutcomeTable build_outcome_table(const ScenarioResult& result,
                                        Scenario::PhotonSource source) {
    const ExperimentConfig& cfg = result.config;
    const PolBasis basis = analysis_basis_for(cfg.analyzer);
    const int selected = analyzer_column(cfg.analyzer);
    OutcomeTable table;
    auto add = [&table](const std::string& det, const std::string& pol, double p) {
        table.detector.push_back(det);
        table.pol_outcome.push_back(pol);
        table.p.push_back(p);
    };
    auto label = [basis](int k) {
        return std::string(basis == PolBasis::Linear ? (k == 0 ? "H" : "V")
                                                     : (k == 0 ? "L" : "R"));
    };

    if (source == Scenario::PhotonSource::Exact) {
        const DetectorTable exact = exact_prediction(cfg);
        double blocked = 0.0;
        for (int d = 0; d < 2; ++d)
            for (int k = 0; k < 2; ++k) {
                if (selected >= 0 && k != selected) {
                    blocked += exact.p[d][k];
                    continue;
                }
                add(d == 0 ? "D_A" : "D_B", label(k), exact.p[d][k]);
            }
        add("absorbed", "none", blocked);
        add("spilled", "none", 0.0);
        return table;
    }

    const DetectionSummary& sum = result.summary;
    for (int d = 0; d < 2; ++d)
        for (int k = 0; k < 2; ++k) {
            if (selected >= 0 && k != selected) continue;
            add(d == 0 ? "D_A" : "D_B", label(k), sum.joint[d][k]);
        }
    // absorbed_fraction already contains the analyzer-blocked window power,
    // which is not a separate outcome row here.
    add("absorbed", "none", sum.absorbed_fraction);
    add("spilled", "none", sum.spill_fraction);
    return table;
}

struct PhotonEvent {
    std::uint64_t sequence_index = 0;
    int outcome = 0;  ///< row of the OutcomeTable
};

struct PhotonRecord {
    OutcomeTable table;
    std::vector<PhotonEvent> events;
    std::vector<std::uint64_t> counts;  ///< per table row
    ChiSquareResult chi_square;
};

/// Deterministic stream id so different scenarios draw from disjoint
/// Philox streams under one seed.
inline std::uint64_t photon_stream_id(const std::string& scenario_name) {
    return detail::fnv1a64(scenario_name);
}

inline PhotonRecord sample_photons(const OutcomeTable& table, std::uint64_t n, std::uint64_t seed,
                                   std::uint64_t stream) {
    if (table.size() == 0) throw config_error("outcome table is empty");
    std::vector<double> cumulative(table.p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < table.p.size(); ++i) {
        acc += table.p[i];
        cumulative[i] = acc;
    }
    // Guard the last edge so u < 1 always lands in a bin even when the
    // probabilities sum to slightly under 1.
    cumulative.back() = std::max(cumulative.back(), 1.0);

    PhotonRecord record;
    record.table = table;
    record.counts.assign(table.p.size(), 0);
    record.events.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double u = philox_uniform(seed, stream, i);
        int outcome = 0;
        while (u >= cumulative[outcome]) ++outcome;
        record.events.push_back({i, outcome});
        ++record.counts[outcome];
    }
    record.chi_square = chi_square_test(record.counts, table.p);
    return record;
}

}  // namespace twoslit
