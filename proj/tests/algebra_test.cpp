#include "twoslit/algebra.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using namespace twoslit;

namespace {

constexpr double kTol = 1e-12;
constexpr double kInvSqrt2 = 0.70710678118654752440;

PathPolState marked_lens_plane_state() {  // (|A>|L> + |B>|R>)/sqrt2
    return make_initial_state(true);
}

PathPolState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    PathPolState s;
    s.path_basis = PathBasis::SlitAB;
    s.pol_basis = PolBasis::Circular;
    double n2 = 0.0;
    for (auto& row : s.amp)
        for (auto& a : row) {
            a = {gauss(rng), gauss(rng)};
            n2 += std::norm(a);
        }
    for (auto& row : s.amp)
        for (auto& a : row) a /= std::sqrt(n2);
    return s;
}

/// c_A |A>|m_A> + c_B |B>|m_B> with random weights and random pure markers.
PathPolState random_product_marker_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double theta = std::acos(2.0 * uniform(rng) - 1.0);
    const double weight_phase = 2.0 * M_PI * uniform(rng);
    const Complex c_a = std::cos(theta / 2.0);
    const Complex c_b = std::sin(theta / 2.0) * Complex{std::cos(weight_phase), std::sin(weight_phase)};
    auto random_marker = [&]() {
        const double t = std::acos(2.0 * uniform(rng) - 1.0);
        const double p = 2.0 * M_PI * uniform(rng);
        return std::array<Complex, 2>{std::cos(t / 2.0),
                                      std::sin(t / 2.0) * Complex{std::cos(p), std::sin(p)}};
    };
    const auto m_a = random_marker();
    const auto m_b = random_marker();
    PathPolState s;
    s.path_basis = PathBasis::SlitAB;
    s.pol_basis = PolBasis::Circular;
    for (int k = 0; k < 2; ++k) {
        s.amp[0][k] = c_a * m_a[k];
        s.amp[1][k] = c_b * m_b[k];
    }
    return s;
}

}  // namespace

TEST(MakeInitialState, MarkedStateTagsEachSlitWithOppositeCircularPolarization) {
    const PathPolState s = make_initial_state(true);
    EXPECT_EQ(s.path_basis, PathBasis::SlitAB);
    EXPECT_EQ(s.pol_basis, PolBasis::Circular);
    EXPECT_NEAR(s.amp[0][0].real(), kInvSqrt2, kTol);  // A,L
    EXPECT_NEAR(s.amp[1][1].real(), kInvSqrt2, kTol);  // B,R
    EXPECT_EQ(s.amp[0][1], Complex(0.0));
    EXPECT_EQ(s.amp[1][0], Complex(0.0));
    EXPECT_NEAR(norm_squared(s), 1.0, kTol);
}

TEST(MakeInitialState, UnmarkedStateIsSymmetricWithHorizontalPolarization) {
    const PathPolState s = make_initial_state(false);
    EXPECT_EQ(s.pol_basis, PolBasis::Linear);
    EXPECT_NEAR(s.amp[0][0].real(), kInvSqrt2, kTol);  // A,H
    EXPECT_NEAR(s.amp[1][0].real(), kInvSqrt2, kTol);  // B,H
    EXPECT_EQ(s.amp[0][1], Complex(0.0));
    EXPECT_EQ(s.amp[1][1], Complex(0.0));
    EXPECT_NEAR(norm_squared(s), 1.0, kTol);
}

TEST(PathBasisChange, SymmetricStateBecomesPurePlus) {
    const PathPolState plus = path_basis_change(make_initial_state(false), PathBasis::PlusMinus);
    EXPECT_NEAR(plus.amp[0][0].real(), 1.0, kTol);  // phi_+, H
    EXPECT_NEAR(std::abs(plus.amp[1][0]), 0.0, kTol);
    EXPECT_NEAR(norm_squared(plus), 1.0, kTol);
}

TEST(PathBasisChange, MarkedStateInPlusMinusLinearFormCarriesMinusIOnPhiMinusV) {
    // (|A>|L> + |B>|R>)/sqrt2  ->  (|phi_+>|H> - i |phi_->|V>)/sqrt2
    PathPolState s = pol_basis_change(marked_lens_plane_state(), PolBasis::Linear);
    s = path_basis_change(s, PathBasis::PlusMinus);
    EXPECT_NEAR(s.amp[0][0].real(), kInvSqrt2, kTol);   // phi_+, H
    EXPECT_NEAR(s.amp[0][0].imag(), 0.0, kTol);
    EXPECT_NEAR(s.amp[1][1].real(), 0.0, kTol);         // phi_-, V = -i/sqrt2
    EXPECT_NEAR(s.amp[1][1].imag(), -kInvSqrt2, kTol);
    EXPECT_NEAR(std::abs(s.amp[0][1]), 0.0, kTol);
    EXPECT_NEAR(std::abs(s.amp[1][0]), 0.0, kTol);
}

TEST(PathBasisChange, RoundTripIsIdentity) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 1000; ++i) {
        const PathPolState s = random_state(rng);
        const PathPolState back =
            path_basis_change(path_basis_change(s, PathBasis::PlusMinus), PathBasis::SlitAB);
        for (int p = 0; p < 2; ++p)
            for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::abs(back.amp[p][k] - s.amp[p][k]), 0.0, kTol);
    }
}

TEST(PathBasisChange, DetectorTargetIsInvalid) {
    EXPECT_THROW(path_basis_change(make_initial_state(true), PathBasis::Detector),
                 invalid_target_error);
    const PathPolState after_lens = apply_lens(make_initial_state(true));
    EXPECT_THROW(path_basis_change(after_lens, PathBasis::SlitAB), invalid_target_error);
}

TEST(PolBasisChange, MarkedStateInLinearBasisShowsBothHoleCorrelations) {
    // Each polarization outcome correlates with both slits:
    // H column (|A>+|B>)/2, V column -i(|A>-|B>)/2.
    const PathPolState s = pol_basis_change(marked_lens_plane_state(), PolBasis::Linear);
    EXPECT_NEAR(s.amp[0][0].real(), 0.5, kTol);   // A,H
    EXPECT_NEAR(s.amp[1][0].real(), 0.5, kTol);   // B,H
    EXPECT_NEAR(s.amp[0][1].imag(), -0.5, kTol);  // A,V
    EXPECT_NEAR(s.amp[1][1].imag(), +0.5, kTol);  // B,V
    EXPECT_NEAR(norm_squared(s), 1.0, kTol);
}

TEST(PolBasisChange, HorizontalSplitsEvenlyIntoCircularComponents) {
    PathPolState s;
    s.pol_basis = PolBasis::Linear;
    s.amp[0][0] = 1.0;  // |A>|H>
    const PathPolState c = pol_basis_change(s, PolBasis::Circular);
    EXPECT_NEAR(c.amp[0][0].real(), kInvSqrt2, kTol);  // L
    EXPECT_NEAR(c.amp[0][1].real(), kInvSqrt2, kTol);  // R
}

TEST(PolBasisChange, PreservesNormAndRoundTrips) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        const PathPolState s = random_state(rng);
        const PathPolState t = pol_basis_change(s, PolBasis::Linear);
        EXPECT_NEAR(norm_squared(t), norm_squared(s), kTol);
        const PathPolState back = pol_basis_change(t, PolBasis::Circular);
        for (int p = 0; p < 2; ++p)
            for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::abs(back.amp[p][k] - s.amp[p][k]), 0.0, kTol);
    }
}

TEST(ApplyLens, MarkedStateMapsSlitsOntoDetectors) {
    const PathPolState s = apply_lens(marked_lens_plane_state());
    EXPECT_EQ(s.path_basis, PathBasis::Detector);
    EXPECT_NEAR(s.amp[0][0].real(), kInvSqrt2, kTol);  // D_A,L
    EXPECT_NEAR(s.amp[1][1].real(), kInvSqrt2, kTol);  // D_B,R
    EXPECT_EQ(s.amp[0][1], Complex(0.0));
    EXPECT_EQ(s.amp[1][0], Complex(0.0));
}

TEST(ApplyLens, PhiPlusSpreadsOverBothDetectors) {
    PathPolState s;
    s.path_basis = PathBasis::PlusMinus;
    s.pol_basis = PolBasis::Linear;
    s.amp[0][0] = 1.0;  // |phi_+>|H>
    const PathPolState out = apply_lens(s);
    EXPECT_NEAR(out.amp[0][0].real(), kInvSqrt2, kTol);
    EXPECT_NEAR(out.amp[1][0].real(), kInvSqrt2, kTol);
}

TEST(ApplyLens, PlusMinusFormArrivesAtTheLinearDetectorState) {
    // (|phi_+>|H> - i|phi_->|V>)/sqrt2 through the lens equals
    // (|D_A>+|D_B>)|H>/2 - i(|D_A>-|D_B>)|V>/2.
    PathPolState s = pol_basis_change(marked_lens_plane_state(), PolBasis::Linear);
    s = path_basis_change(s, PathBasis::PlusMinus);
    const PathPolState out = apply_lens(s);
    EXPECT_NEAR(out.amp[0][0].real(), 0.5, kTol);   // D_A,H
    EXPECT_NEAR(out.amp[1][0].real(), 0.5, kTol);   // D_B,H
    EXPECT_NEAR(out.amp[0][1].imag(), -0.5, kTol);  // D_A,V
    EXPECT_NEAR(out.amp[1][1].imag(), +0.5, kTol);  // D_B,V

    // Same arrival state as lensing the slit-basis form directly.
    const PathPolState direct =
        pol_basis_change(apply_lens(marked_lens_plane_state()), PolBasis::Linear);
    EXPECT_TRUE(equal_up_to_phase(out, direct, kTol));
}

TEST(ApplyLens, SecondApplicationIsInvalid) {
    const PathPolState once = apply_lens(make_initial_state(true));
    EXPECT_THROW(apply_lens(once), invalid_state_error);
}

TEST(ProjectPolarization, HorizontalOutcomeAfterLensIsTheSymmetricDetectorState) {
    const PathPolState arrived = apply_lens(marked_lens_plane_state());
    const Projection proj = project_polarization(arrived, PolAxis::H);
    EXPECT_NEAR(proj.probability, 0.5, kTol);
    EXPECT_NEAR(proj.collapsed.norm2, 0.5, kTol);
    EXPECT_NEAR(proj.collapsed.amp[0][0].real(), kInvSqrt2, kTol);  // D_A,H
    EXPECT_NEAR(proj.collapsed.amp[1][0].real(), kInvSqrt2, kTol);  // D_B,H
    EXPECT_NEAR(norm_squared(proj.collapsed), 1.0, kTol);
}

TEST(ProjectPolarization, LeftCircularOutcomeCollapsesOntoDetectorA) {
    const PathPolState arrived = apply_lens(marked_lens_plane_state());
    const Projection proj = project_polarization(arrived, PolAxis::L);
    EXPECT_NEAR(proj.probability, 0.5, kTol);
    EXPECT_NEAR(std::abs(proj.collapsed.amp[0][0]), 1.0, kTol);  // |D_A>|L>
    EXPECT_NEAR(std::abs(proj.collapsed.amp[1][0]), 0.0, kTol);
}

TEST(ProjectPolarization, OutcomeProbabilitiesAreComplete) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const PathPolState s = random_state(rng);
        const double ph = project_polarization(s, PolAxis::H).probability;
        const double pv = project_polarization(s, PolAxis::V).probability;
        EXPECT_NEAR(ph + pv, 1.0, kTol);
        const double pl = project_polarization(s, PolAxis::L).probability;
        const double pr = project_polarization(s, PolAxis::R).probability;
        EXPECT_NEAR(pl + pr, 1.0, kTol);
    }
}

TEST(ProjectPolarization, VanishingOutcomeIsFlaggedInsteadOfRenormalized) {
    PathPolState s;  // pure |A>|H>, no V component at all
    s.pol_basis = PolBasis::Linear;
    s.amp[0][0] = 1.0;
    const Projection proj = project_polarization(s, PolAxis::V);
    EXPECT_EQ(proj.probability, 0.0);
    EXPECT_FALSE(proj.collapsed.renormalizable);
    EXPECT_EQ(proj.collapsed.norm2, 0.0);
}

TEST(DetectorStatistics, MarkedStateInCircularBasisHasExactZeroCrossCells) {
    const DetectorTable t =
        detector_statistics(apply_lens(marked_lens_plane_state()), PolBasis::Circular);
    EXPECT_NEAR(t.p[0][0], 0.5, kTol);  // D_A,L
    EXPECT_NEAR(t.p[1][1], 0.5, kTol);  // D_B,R
    EXPECT_EQ(t.p[0][1], 0.0);          // D_A,R: exactly zero
    EXPECT_EQ(t.p[1][0], 0.0);          // D_B,L: exactly zero
}

TEST(DetectorStatistics, MarkedStateInLinearBasisIsUniform) {
    const DetectorTable t =
        detector_statistics(apply_lens(marked_lens_plane_state()), PolBasis::Linear);
    for (int d = 0; d < 2; ++d)
        for (int k = 0; k < 2; ++k) EXPECT_NEAR(t.p[d][k], 0.25, kTol);
    // Conditioned on either linear outcome, both detectors are equally likely.
    EXPECT_NEAR(t.conditional(0, 0), 0.5, kTol);
    EXPECT_NEAR(t.conditional(1, 0), 0.5, kTol);
    EXPECT_NEAR(t.conditional(0, 1), 0.5, kTol);
    EXPECT_NEAR(t.conditional(1, 1), 0.5, kTol);
}

TEST(DetectorStatistics, ProbabilitiesSumToOneAndRequireTheDetectorBasis) {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 200; ++i) {
        const PathPolState s = random_state(rng);
        EXPECT_THROW(detector_statistics(s, PolBasis::Linear), invalid_state_error);
        const DetectorTable t = detector_statistics(apply_lens(s), PolBasis::Linear);
        EXPECT_NEAR(t.p[0][0] + t.p[0][1] + t.p[1][0] + t.p[1][1], 1.0, kTol);
    }
}

TEST(DualityReport, OrthogonalMarkersGiveFullDistinguishabilityAndNoVisibility) {
    const DualityReport r = duality_report(marked_lens_plane_state());
    EXPECT_NEAR(r.distinguishability, 1.0, kTol);
    EXPECT_NEAR(r.visibility, 0.0, kTol);
}

TEST(DualityReport, UnmarkedStateGivesFullVisibility) {
    const DualityReport r = duality_report(make_initial_state(false));
    EXPECT_NEAR(r.distinguishability, 0.0, kTol);
    EXPECT_NEAR(r.visibility, 1.0, kTol);
}

TEST(DualityReport, IdenticalMarkersCarryNoPathInformation) {
    PathPolState s;  // (|A>|L> + |B>|L>)/sqrt2
    s.pol_basis = PolBasis::Circular;
    s.amp[0][0] = kInvSqrt2;
    s.amp[1][0] = kInvSqrt2;
    const DualityReport r = duality_report(s);
    EXPECT_NEAR(r.distinguishability, 0.0, kTol);
    EXPECT_NEAR(r.visibility, 1.0, kTol);
}

TEST(DualityReport, MatchesDirectFourDimensionalArithmetic) {
    // Independent oracle: flatten to a 4-vector and evaluate both formulas
    // by explicit loops, then compare against the library.
    std::mt19937_64 rng(45);
    for (int i = 0; i < 500; ++i) {
        const PathPolState s = random_product_marker_state(rng);

        Complex rho01 = 0.0;
        for (int k = 0; k < 2; ++k) rho01 += s.amp[0][k] * std::conj(s.amp[1][k]);
        const double oracle_visibility = 2.0 * std::abs(rho01);

        double na = 0.0, nb = 0.0;
        Complex cross = 0.0;
        for (int k = 0; k < 2; ++k) {
            na += std::norm(s.amp[0][k]);
            nb += std::norm(s.amp[1][k]);
            cross += std::conj(s.amp[0][k]) * s.amp[1][k];
        }
        const double oracle_distinguishability =
            std::sqrt(std::max(0.0, 1.0 - std::norm(cross) / (na * nb)));

        const DualityReport r = duality_report(s);
        EXPECT_NEAR(r.visibility, oracle_visibility, kTol);
        EXPECT_NEAR(r.distinguishability, oracle_distinguishability, kTol);

        // Path-reduced matrix: positive diagonal, unit trace, hermitian.
        EXPECT_NEAR(std::real(r.path_reduced[0][0]) + std::real(r.path_reduced[1][1]), 1.0, kTol);
        EXPECT_NEAR(std::abs(r.path_reduced[0][1] - std::conj(r.path_reduced[1][0])), 0.0, kTol);
    }
}

TEST(DualityReport, BoundHoldsOverRandomProductMarkerPreparations) {
    std::mt19937_64 rng(46);
    for (int i = 0; i < 1000; ++i) {
        const DualityReport r = duality_report(random_product_marker_state(rng));
        const double d2v2 = r.distinguishability * r.distinguishability + r.visibility * r.visibility;
        EXPECT_LE(d2v2, 1.0 + 1e-9);
    }
}

TEST(Invariants, EveryUnitaryOperationPreservesNormOverRandomStates) {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 1000; ++i) {
        const PathPolState s = random_state(rng);
        EXPECT_NEAR(norm_squared(path_basis_change(s, PathBasis::PlusMinus)), 1.0, kTol);
        EXPECT_NEAR(norm_squared(pol_basis_change(s, PolBasis::Linear)), 1.0, kTol);
        EXPECT_NEAR(norm_squared(apply_lens(s)), 1.0, kTol);
    }
}

TEST(Invariants, LensPreservesOrthogonality) {
    std::mt19937_64 rng(48);
    for (int i = 0; i < 200; ++i) {
        PathPolState a = random_state(rng);
        PathPolState b = random_state(rng);
        // Gram-Schmidt so <a|b> = 0 going in.
        const Complex ab = overlap(a, b);
        double n2 = 0.0;
        for (int p = 0; p < 2; ++p)
            for (int k = 0; k < 2; ++k) {
                b.amp[p][k] -= ab * a.amp[p][k];
                n2 += std::norm(b.amp[p][k]);
            }
        if (n2 < 1e-12) continue;
        for (auto& row : b.amp)
            for (auto& v : row) v /= std::sqrt(n2);
        EXPECT_NEAR(std::abs(overlap(apply_lens(a), apply_lens(b))), 0.0, 1e-10);
    }
}

TEST(Invariants, MarkerTheoremCrossCellsVanishExactly) {
    const DetectorTable t =
        detector_statistics(apply_lens(make_initial_state(true)), PolBasis::Circular);
    EXPECT_EQ(t.p[0][1], 0.0);
    EXPECT_EQ(t.p[1][0], 0.0);
}

TEST(Invariants, EraserTheoremConditionalsAreEven) {
    const DetectorTable t =
        detector_statistics(apply_lens(make_initial_state(true)), PolBasis::Linear);
    for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(t.conditional(0, k), 0.5, kTol);
        EXPECT_NEAR(t.conditional(1, k), 0.5, kTol);
    }
}

TEST(Invariants, DarkPortTheoremUnmarkedStateHasNoPhiMinus) {
    const PathPolState plus = path_basis_change(make_initial_state(false), PathBasis::PlusMinus);
    EXPECT_EQ(std::abs(plus.amp[1][0]), 0.0);
    EXPECT_EQ(std::abs(plus.amp[1][1]), 0.0);
    const DetectorTable t =
        detector_statistics(apply_lens(make_initial_state(false)), PolBasis::Linear);
    EXPECT_NEAR(t.detector_marginal(0), 0.5, kTol);
    EXPECT_NEAR(t.detector_marginal(1), 0.5, kTol);
    EXPECT_NEAR(duality_report(make_initial_state(false)).visibility, 1.0, kTol);
}
