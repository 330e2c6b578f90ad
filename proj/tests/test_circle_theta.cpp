#include <gtest/gtest.h>

#include <random>

#include "sector_kit/circle_theta.hpp"

using namespace sector_kit;

namespace {

const double kPi = std::numbers::pi;

// Central differences act on e^{i p x} by sin(p h) / h.
double central_symbol(double p, int n) { return std::sin(p / n) * n; }

} // namespace

TEST(ThetaSector, ReducesModTwoPi) {
    EXPECT_DOUBLE_EQ(ThetaSector(0.0).theta(), 0.0);
    EXPECT_NEAR(ThetaSector(kTwoPi + 1.0).theta(), 1.0, 1e-14);
    EXPECT_NEAR(ThetaSector(-1.0).theta(), kTwoPi - 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(ThetaSector(kTwoPi).theta(), 0.0);
    EXPECT_THROW(ThetaSector(std::nan("")), DomainError);
}

TEST(MomentumOperator, HermitianAndTwistedBoundary) {
    for (auto d : {Discretization::spectral, Discretization::central_difference}) {
        const auto op = momentum_operator(ThetaSector(1.3), 32, d);
        EXPECT_LT(linalg::hermiticity_residual(op.matrix), 1e-12);
    }
    EXPECT_THROW(momentum_operator(ThetaSector(0.0), 4, Discretization::spectral), DomainError);
}

TEST(MomentumSpectrum, PeriodicAndAntiperiodic) {
    for (const auto &e : momentum_spectrum(ThetaSector(0.0), 64, 8))
        EXPECT_NEAR(e.eigenvalue, kTwoPi * e.k, 1e-10);
    for (const auto &e : momentum_spectrum(ThetaSector(kPi), 64, 8))
        EXPECT_NEAR(e.eigenvalue, kTwoPi * (e.k + 0.5), 1e-10);
}

TEST(MomentumSpectrum, SpectralReproducesThetaPlusTwoPiK) {
    for (double theta : {0.0, kPi / 2, kPi, 3.0})
        for (int n : {64, 128}) {
            const auto s = momentum_spectrum(ThetaSector(theta), n, n / 4);
            EXPECT_EQ(s.size(), static_cast<std::size_t>(2 * (n / 4) + 1));
            EXPECT_LT(max_error(s), 1e-9) << theta << " " << n;
        }
}

TEST(MomentumSpectrum, CentralDifferenceMatchesSymbol) {
    // eigenvalue of mode k is sin((theta + 2 pi k) h) / h
    for (double theta : {0.0, 1.0, 3.0})
        for (const auto &e : momentum_spectrum(ThetaSector(theta), 128, 16, Discretization::central_difference))
            EXPECT_NEAR(e.eigenvalue, central_symbol(theta + kTwoPi * e.k, 128), 1e-9);
}

TEST(MomentumSpectrum, ShiftByTheta) {
    const auto zero = momentum_spectrum(ThetaSector(0.0), 128, 10);
    const auto t = momentum_spectrum(ThetaSector(2.2), 128, 10);
    for (std::size_t i = 0; i < zero.size(); ++i)
        EXPECT_NEAR(t[i].eigenvalue, zero[i].eigenvalue + 2.2, 1e-9);
}

TEST(MomentumSpectrum, SectorPeriodicity) {
    for (double theta : {0.5, 2.0, 3.0}) {
        const auto a = momentum_spectrum(ThetaSector(theta), 64, 8, Discretization::central_difference);
        const auto b = momentum_spectrum(ThetaSector(theta + kTwoPi), 64, 8, Discretization::central_difference);
        for (std::size_t i = 0; i < a.size(); ++i)
            EXPECT_NEAR(a[i].eigenvalue, b[i].eigenvalue, 1e-12);
    }
}

TEST(MomentumSpectrum, RejectsLargeKMax) {
    EXPECT_THROW(momentum_spectrum(ThetaSector(0.0), 64, 17), DomainError);
    EXPECT_NO_THROW(momentum_spectrum(ThetaSector(0.0), 64, 16));
    EXPECT_THROW(momentum_spectrum(ThetaSector(0.0), 64, -1), DomainError);
}

TEST(Convergence, CentralDifferencesAreSecondOrder) {
    for (double theta : {0.0, kPi / 2, kPi, 3.0}) {
        const auto r = convergence_order(ThetaSector(theta), {64, 128, 256}, 4);
        EXPECT_GE(r.order, 1.9) << theta;
        EXPECT_LT(r.order, 2.1) << theta;
        // error bound C (2 pi (|k|+1))^3 / n^2 with C = 1/6 from the sine series
        for (std::size_t i = 0; i < r.grids.size(); ++i)
            EXPECT_LE(r.errors[i], std::pow(kTwoPi * 5, 3) / 6.0 / (r.grids[i] * r.grids[i]));
    }
}

TEST(Gauge, SpectralConjugationIsExact) {
    const auto zero = gauge_equivalence_check(ThetaSector(0.0), 64);
    EXPECT_LT(zero.residual, 1e-12);
    EXPECT_NEAR(zero.measured_constant, 0.0, 1e-12);
    for (double theta : {kPi / 2, kPi, 3.0}) {
        const auto r = gauge_equivalence_check(ThetaSector(theta), 256);
        EXPECT_LT(r.residual, 1e-8);
        EXPECT_LT(r.spectral_mismatch, 1e-8);
        // the constant that makes the conjugation work is theta itself
        EXPECT_NEAR(r.measured_constant, theta, 1e-9);
        EXPECT_NEAR(r.stated_constant, theta / kTwoPi, 1e-15);
    }
}

TEST(Gauge, CentralDifferenceResidualShrinksWithGrid) {
    double previous = 1e9;
    for (int n : {64, 128, 256}) {
        const auto r = gauge_equivalence_check(ThetaSector(1.0), n, Discretization::central_difference);
        EXPECT_LT(r.residual, previous / 3.5);
        previous = r.residual;
        EXPECT_NEAR(r.measured_constant, central_symbol(1.0, n), 1e-12);
    }
}

TEST(Translation, UnitaryIdentityAndGroupLaw) {
    const ThetaSector s(1.7);
    const int n = 32;
    EXPECT_LT(linalg::max_abs(translation_unitary(0.0, s, n).matrix - linalg::identity(n)), 1e-15);
    const auto a = translation_unitary(5.0 / n, s, n).matrix;
    const auto b = translation_unitary(30.0 / n, s, n).matrix;
    EXPECT_LT(linalg::unitarity_residual(a), 1e-12);
    // 35/32 wraps: U_a U_b = e^{i theta / 2 pi} U_{3/32}
    const auto ab = translation_unitary(3.0 / n, s, n).matrix;
    EXPECT_LT(linalg::max_abs(a * b - std::polar(1.0, 1.7 / kTwoPi) * ab), 1e-12);
    const auto c = translation_unitary(7.0 / n, s, n).matrix;
    EXPECT_LT(linalg::max_abs(a * translation_unitary(2.0 / n, s, n).matrix - c), 1e-12);
    EXPECT_THROW(translation_unitary(0.3, s, n), DomainError);
    EXPECT_THROW(translation_unitary(1.0, s, n), DomainError);
}

TEST(Translation, SpectralInterpolationAgreesOnGridShifts) {
    const ThetaSector s(0.4);
    const int n = 16;
    const auto grid = translation_unitary(3.0 / n, s, n).matrix;
    const auto spec = translation_unitary(3.0 / n, s, n, ShiftMode::spectral).matrix;
    EXPECT_LT(linalg::max_abs(grid - spec), 1e-12);
    const auto off = translation_unitary(0.3, s, n, ShiftMode::spectral).matrix;
    EXPECT_LT(linalg::unitarity_residual(off), 1e-12);
}

TEST(Translation, NStepsGiveLinearPhase) {
    for (double theta : {0.0, 1.0, 2.0}) {
        const auto r = translation_report(ThetaSector(theta), 16);
        EXPECT_LT(r.scalar_residual, 1e-12);
        EXPECT_NEAR(r.phase_per_turn, theta / kTwoPi, 1e-12);
        EXPECT_NEAR(r.gauge_phase, std::remainder(theta, kTwoPi), 1e-9);
    }
    EXPECT_TRUE(translation_report(ThetaSector(0.0), 16).phases_agree());
    EXPECT_FALSE(translation_report(ThetaSector(1.0), 16).phases_agree());
}

TEST(Position, DiagonalCommutingAndCovariant) {
    const int n = 32;
    EXPECT_LT(linalg::max_abs(position_operator([](double) { return Complex(1.0); }, n).matrix - linalg::identity(n)),
              1e-15);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<Complex> f(n), h(n);
    for (int j = 0; j < n; ++j) {
        f[static_cast<std::size_t>(j)] = Complex(g(rng), g(rng));
        h[static_cast<std::size_t>(j)] = Complex(g(rng), g(rng));
    }
    EXPECT_LT(linalg::commutator_residual(position_operator(f).matrix, position_operator(h).matrix), 1e-15);
    auto wave = [](double x) { return std::polar(1.0, kTwoPi * x); };
    for (double theta : {0.0, 2.5}) {
        const double a = 6.0 / n;
        const auto u = translation_unitary(a, ThetaSector(theta), n).matrix;
        const Matrix lhs = u * position_operator(wave, n).matrix * u.adjoint();
        const Matrix rhs = position_operator([&](double x) { return wave(x + a); }, n).matrix;
        EXPECT_LT(linalg::max_abs(lhs - rhs), 1e-12);
    }
}
