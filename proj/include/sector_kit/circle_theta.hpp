#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace sector_kit {

using linalg::Complex;
using linalg::Index;
using linalg::Matrix;
using linalg::Vector;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr int kMinGrid = 8;
inline constexpr int kDefaultGridCap = 1024;

// theta reduced to [0, 2 pi).
class ThetaSector {
  public:
    explicit ThetaSector(double theta) {
        if (!std::isfinite(theta))
            throw DomainError("ThetaSector: theta must be finite");
        theta_ = std::fmod(theta, kTwoPi);
        if (theta_ < 0.0)
            theta_ += kTwoPi;
        if (theta_ >= kTwoPi)
            theta_ = 0.0;
    }
    double theta() const { return theta_; }

  private:
    double theta_ = 0.0;
};

enum class Discretization { spectral, central_difference };

inline std::string to_string(Discretization d) {
    return d == Discretization::spectral ? "spectral" : "central_difference";
}

// Operator on n samples psi_j = psi(j/n) of a function on [0, 1).
struct GridOperator {
    int n = 0;
    Matrix matrix;
};

namespace detail {

inline void require_grid(int n) {
    if (n < kMinGrid)
        throw DomainError("grid needs at least " + std::to_string(kMinGrid) + " points, got " + std::to_string(n));
    if (n > kDefaultGridCap)
        throw ResourceError("grid of " + std::to_string(n) + " points exceeds the cap " +
                            std::to_string(kDefaultGridCap));
}

// Mode labels k = -n/2 .. n/2 - 1.
inline int mode_label(int column, int n) { return column - n / 2; }

// Columns e^{i (theta + 2 pi k) x_j} / sqrt n: the twisted Fourier basis,
// orthonormal on the grid.
inline Matrix twisted_fourier(double theta, int n) {
    Matrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int c = 0; c < n; ++c) {
        const double p = theta + kTwoPi * mode_label(c, n);
        for (int j = 0; j < n; ++j)
            f(j, c) = std::polar(norm, p * j / static_cast<double>(n));
    }
    return f;
}

// Twisted forward shift: (S psi)_j = psi_{j+1}, psi_n = e^{i theta} psi_0.
inline Matrix twisted_shift(double theta, int n) {
    Matrix s = Matrix::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j)
        s(j, j + 1) = 1.0;
    s(n - 1, 0) = std::polar(1.0, theta);
    return s;
}

} // namespace detail

// -i d/dx on the domain psi(1) = e^{i theta} psi(0). Both stencils give
// Hermitian matrices.
inline GridOperator momentum_operator(const ThetaSector &sector, int n, Discretization d) {
    detail::require_grid(n);
    const double theta = sector.theta();
    if (d == Discretization::spectral) {
        const Matrix f = detail::twisted_fourier(theta, n);
        Vector p(n);
        for (int c = 0; c < n; ++c)
            p(c) = theta + kTwoPi * detail::mode_label(c, n);
        return {n, f * p.asDiagonal() * f.adjoint()};
    }
    const Matrix s = detail::twisted_shift(theta, n);
    const double h = 1.0 / n;
    return {n, Complex(0.0, -1.0) * (s - s.adjoint()) / (2.0 * h)};
}

struct SpectrumEntry {
    int k = 0;
    double eigenvalue = 0.0;
    double reference = 0.0;
    double error() const { return std::abs(eigenvalue - reference); }
};

// Eigenvalues attached to the continuum modes k = -k_max .. k_max. Each
// eigenvalue is the one whose eigenvector overlaps most with the sampled
// continuum eigenfunction e^{i (theta + 2 pi k) x}; within a degenerate
// eigenspace every choice gives the same value.
inline std::vector<SpectrumEntry> momentum_spectrum(const ThetaSector &sector, int n, int k_max,
                                                    Discretization d = Discretization::spectral) {
    detail::require_grid(n);
    if (k_max < 0 || 4 * k_max > n)
        throw DomainError("momentum_spectrum: k_max = " + std::to_string(k_max) + " too large for n = " +
                          std::to_string(n) + " (need 4 k_max <= n)");
    const GridOperator op = momentum_operator(sector, n, d);
    Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix);
    const Matrix f = detail::twisted_fourier(sector.theta(), n);
    const Eigen::MatrixXd overlap = (es.eigenvectors().adjoint() * f).cwiseAbs2();
    std::vector<SpectrumEntry> out;
    for (int k = -k_max; k <= k_max; ++k) {
        Index best = 0;
        overlap.col(k + n / 2).maxCoeff(&best);
        out.push_back({k, es.eigenvalues()(best), sector.theta() + kTwoPi * k});
    }
    return out;
}

inline double max_error(const std::vector<SpectrumEntry> &s) {
    double e = 0.0;
    for (const auto &x : s)
        e = std::max(e, x.error());
    return e;
}

struct GaugeReport {
    double theta = 0.0;
    int n = 0;
    Discretization discretization = Discretization::spectral;
    // <1, (V D_theta V^{-1} - D_0) 1> / n
    double measured_constant = 0.0;
    // the value theta / 2 pi written in the gauge-transformed momentum formula
    double stated_constant = 0.0;
    // max entry of V D_theta V^{-1} - (D_0 + c) for spectral; for central
    // differences the same operator difference applied to smooth probes
    double residual = 0.0;
    // spectra of D_theta and D_0 + c compared with multiplicity
    double spectral_mismatch = 0.0;
};

// Moves theta from the domain into the formula: V psi = e^{-i theta x} psi
// carries the twisted operator to a periodic one plus a constant.
inline GaugeReport gauge_equivalence_check(const ThetaSector &sector, int n,
                                           Discretization d = Discretization::spectral) {
    detail::require_grid(n);
    const double theta = sector.theta();
    GaugeReport r;
    r.theta = theta;
    r.n = n;
    r.discretization = d;
    r.stated_constant = theta / kTwoPi;
    Vector v(n);
    for (int j = 0; j < n; ++j)
        v(j) = std::polar(1.0, -theta * j / static_cast<double>(n));
    const Matrix d1 = momentum_operator(sector, n, d).matrix;
    const Matrix d0 = momentum_operator(ThetaSector(0.0), n, d).matrix;
    const Matrix conj = v.asDiagonal() * d1 * v.conjugate().asDiagonal();
    const Matrix diff = conj - d0;
    r.measured_constant = (diff.sum() / static_cast<double>(n)).real();
    const Matrix d2 = d0 + r.measured_constant * linalg::identity(n);
    if (d == Discretization::spectral) {
        r.residual = linalg::max_abs(conj - d2);
    } else {
        // low periodic modes as smooth probes
        Matrix probes(n, 7);
        for (int c = 0; c < 7; ++c)
            for (int j = 0; j < n; ++j)
                probes(j, c) = std::polar(1.0, kTwoPi * (c - 3) * j / static_cast<double>(n));
        r.residual = linalg::max_abs((conj - d2) * probes);
    }
    std::vector<Complex> a, b;
    for (double x : linalg::hermitian_spectrum(d1))
        a.emplace_back(x);
    for (double x : linalg::hermitian_spectrum(d2))
        b.emplace_back(x);
    r.spectral_mismatch = linalg::spectral_mismatch(a, b);
    return r;
}

enum class ShiftMode { grid, spectral };

// U_a psi(x) = e^{i a theta / 2 pi} psi(x + a mod 1). Grid mode needs a*n
// integral; spectral mode interpolates with the periodic Fourier basis.
inline GridOperator translation_unitary(double a, const ThetaSector &sector, int n, ShiftMode mode = ShiftMode::grid) {
    detail::require_grid(n);
    if (!(a >= 0.0 && a < 1.0))
        throw DomainError("translation_unitary: a must lie in [0, 1)");
    const Complex phase = std::polar(1.0, a * sector.theta() / kTwoPi);
    if (mode == ShiftMode::grid) {
        const double steps = a * n;
        const long s = std::lround(steps);
        if (std::abs(steps - static_cast<double>(s)) > 1e-9)
            throw DomainError("translation_unitary: shift a*n = " + std::to_string(steps) +
                              " is not a whole number of grid steps");
        Matrix u = Matrix::Zero(n, n);
        for (int j = 0; j < n; ++j)
            u(j, (j + s) % n) = phase;
        return {n, u};
    }
    const Matrix f = detail::twisted_fourier(0.0, n);
    Vector shift(n);
    for (int c = 0; c < n; ++c)
        shift(c) = std::polar(1.0, kTwoPi * detail::mode_label(c, n) * a);
    return {n, phase * (f * shift.asDiagonal() * f.adjoint())};
}

// Multiplication by f sampled at x_j = j/n; independent of theta.
inline GridOperator position_operator(const std::vector<Complex> &samples) {
    const int n = static_cast<int>(samples.size());
    detail::require_grid(n);
    Vector f(n);
    for (int j = 0; j < n; ++j)
        f(j) = samples[static_cast<std::size_t>(j)];
    return {n, f.asDiagonal()};
}

template <class F> GridOperator position_operator(F &&f, int n) {
    detail::require_grid(n);
    std::vector<Complex> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        s[static_cast<std::size_t>(j)] = f(j / static_cast<double>(n));
    return position_operator(s);
}

struct TranslationReport {
    double theta = 0.0;
    int n = 0;
    // arg of the scalar left after composing n steps of a = 1/n
    double phase_per_turn = 0.0;
    // distance of that n-fold product from a scalar
    double scalar_residual = 0.0;
    double unitarity_residual = 0.0;
    // phase per turn that matches the measured gauge constant (c_theta * 1)
    double gauge_phase = 0.0;
    bool phases_agree() const {
        const double d = std::remainder(phase_per_turn - gauge_phase, kTwoPi);
        return std::abs(d) < 1e-9;
    }
};

inline TranslationReport translation_report(const ThetaSector &sector, int n) {
    TranslationReport r;
    r.theta = sector.theta();
    r.n = n;
    const Matrix step = translation_unitary(1.0 / n, sector, n).matrix;
    r.unitarity_residual = linalg::unitarity_residual(step);
    Matrix total = linalg::identity(n);
    for (int i = 0; i < n; ++i)
        total = step * total;
    const Complex z = total(0, 0);
    r.phase_per_turn = std::arg(z);
    r.scalar_residual = linalg::max_abs(total - z * linalg::identity(n));
    r.gauge_phase = std::remainder(gauge_equivalence_check(sector, n).measured_constant, kTwoPi);
    return r;
}

struct ConvergenceReport {
    double theta = 0.0;
    int k_max = 0;
    std::vector<int> grids;
    std::vector<double> errors;
    // least-squares slope of -log(error) against log(n)
    double order = 0.0;
};

inline ConvergenceReport convergence_order(const ThetaSector &sector, const std::vector<int> &grids, int k_max) {
    if (grids.size() < 2)
        throw DomainError("convergence_order: need at least two grids");
    ConvergenceReport r;
    r.theta = sector.theta();
    r.k_max = k_max;
    r.grids = grids;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : grids) {
        const double e = max_error(momentum_spectrum(sector, n, k_max, Discretization::central_difference));
        r.errors.push_back(e);
        const double x = std::log(static_cast<double>(n)), y = -std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(grids.size());
    r.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return r;
}

} // namespace sector_kit
