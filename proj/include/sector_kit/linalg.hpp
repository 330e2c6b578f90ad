#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace sector_kit::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Every matrix identity in the toolkit is checked as a max-entry error
// against this bound.
inline constexpr double kIdentityTolerance = 1e-10;
// Eigenvalues (Hermitian case) and singular values below this count as zero.
inline constexpr double kRankThreshold = 1e-8;

inline double max_abs(const Eigen::Ref<const Matrix> &m) {
    if (m.size() == 0)
        return 0.0;
    return m.cwiseAbs().maxCoeff();
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double commutator_residual(const Matrix &a, const Matrix &b) { return max_abs(a * b - b * a); }

inline double idempotence_residual(const Matrix &p) { return max_abs(p * p - p); }

inline double hermiticity_residual(const Matrix &a) { return max_abs(a - a.adjoint()); }

// max(|U*U - 1|, |UU* - 1|); for a non-square U only the first term.
inline double unitarity_residual(const Matrix &u) {
    double r = max_abs(u.adjoint() * u - identity(u.cols()));
    if (u.rows() == u.cols())
        r = std::max(r, max_abs(u * u.adjoint() - identity(u.rows())));
    return r;
}

inline double partial_isometry_residual(const Matrix &w) { return max_abs(w * w.adjoint() * w - w); }

// Rank of a Hermitian matrix by eigenvalue counting.
inline Index hermitian_rank(const Matrix &h, double threshold = kRankThreshold) {
    if (h.size() == 0)
        return 0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const auto &ev = es.eigenvalues();
    return static_cast<Index>((ev.array().abs() > threshold).count());
}

inline Index numerical_rank(const Matrix &a, double threshold = kRankThreshold) {
    if (a.size() == 0)
        return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto &sv = svd.singularValues();
    return static_cast<Index>((sv.array() > threshold).count());
}

// Orthonormal basis of the column space of a (as columns).
inline Matrix range_basis(const Matrix &a, double threshold = kRankThreshold) {
    if (a.size() == 0)
        return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const auto &sv = svd.singularValues();
    const Index r = static_cast<Index>((sv.array() > threshold).count());
    return svd.matrixU().leftCols(r);
}

// Hermitian orthogonal projector onto range(a).
inline Matrix range_projector(const Matrix &a, double threshold = kRankThreshold) {
    const Matrix b = range_basis(a, threshold);
    return b * b.adjoint();
}

// Column-major reshape of a length rows*cols vector.
inline Matrix unvec(const Vector &v, Index rows, Index cols) {
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

inline Vector vec(const Matrix &m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

// Null space of a tall linear system supplied in row blocks. Blocks are
// folded into an n x n triangular factor by repeated QR, so memory stays
// O(n^2) however many equations arrive.
class NullSpaceSolver {
  public:
    explicit NullSpaceSolver(Index unknowns) : n_(unknowns), r_(0, unknowns), pending_(0, unknowns) {}

    Index unknowns() const { return n_; }

    void add_equations(const Matrix &rows) {
        if (rows.cols() != n_)
            throw DomainError("NullSpaceSolver: equation block has wrong column count");
        const Index old = pending_.rows();
        pending_.conservativeResize(old + rows.rows(), Eigen::NoChange);
        pending_.bottomRows(rows.rows()) = rows;
        if (pending_.rows() >= 2 * std::max<Index>(n_, 8))
            compress();
    }

    // Orthonormal basis of {x : all equations vanish}, as columns.
    Matrix basis(double threshold = kRankThreshold) {
        compress();
        if (n_ == 0)
            return Matrix(0, 0);
        if (r_.rows() == 0)
            return identity(n_);
        Eigen::JacobiSVD<Matrix> svd(r_, Eigen::ComputeFullV);
        const auto &sv = svd.singularValues();
        const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
        Index nonzero = 0;
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > threshold * scale)
                ++nonzero;
        return svd.matrixV().rightCols(n_ - nonzero);
    }

    Index nullity(double threshold = kRankThreshold) { return basis(threshold).cols(); }

  private:
    void compress() {
        if (pending_.rows() == 0)
            return;
        Matrix stacked(r_.rows() + pending_.rows(), n_);
        stacked << r_, pending_;
        pending_.resize(0, n_);
        Eigen::HouseholderQR<Matrix> qr(stacked);
        const Index k = std::min(stacked.rows(), n_);
        r_ = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    }

    Index n_;
    Matrix r_;
    Matrix pending_;
};

// Hilbert-Schmidt orthonormal basis of {X : [X, op] = 0 for every op}.
// An empty op set yields the full matrix algebra of the given size.
inline std::vector<Matrix> commutant(std::span<const Matrix> ops, Index size) {
    const Index n = size;
    NullSpaceSolver solver(n * n);
    const Matrix id = identity(n);
    for (const auto &op : ops) {
        if (op.rows() != n || op.cols() != n)
            throw DomainError("commutant: operator size mismatch");
        // vec(op X - X op) = (1 (x) op - op^T (x) 1) vec(X)
        solver.add_equations(kron(id, op) - kron(op.transpose(), id));
    }
    const Matrix null = solver.basis();
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(null.cols()));
    for (Index c = 0; c < null.cols(); ++c)
        out.push_back(unvec(null.col(c), n, n));
    return out;
}

inline std::vector<Matrix> commutant(std::span<const Matrix> ops) {
    if (ops.empty())
        throw DomainError("commutant: empty operator set needs an explicit size");
    return commutant(ops, ops.front().rows());
}

// Basis of {V : V a1[k] = a2[k] V for all k}; V maps the a1 carrier into
// the a2 carrier.
inline std::vector<Matrix> intertwiners(std::span<const Matrix> a1, std::span<const Matrix> a2) {
    if (a1.size() != a2.size())
        throw DomainError("intertwiners: action lists differ in length");
    if (a1.empty())
        throw DomainError("intertwiners: empty algebra basis");
    const Index d1 = a1.front().rows();
    const Index d2 = a2.front().rows();
    NullSpaceSolver solver(d1 * d2);
    const Matrix id1 = identity(d1);
    const Matrix id2 = identity(d2);
    for (std::size_t k = 0; k < a1.size(); ++k) {
        // vec(V a1 - a2 V) = (a1^T (x) 1 - 1 (x) a2) vec(V)
        solver.add_equations(kron(a1[k].transpose(), id2) - kron(id1, a2[k]));
    }
    const Matrix null = solver.basis();
    std::vector<Matrix> out;
    for (Index c = 0; c < null.cols(); ++c)
        out.push_back(unvec(null.col(c), d2, d1));
    return out;
}

// Unitary factor U of the polar decomposition V = U |V|.
inline Matrix polar_unitary(const Matrix &v) {
    Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

inline double smallest_singular_value(const Matrix &v) {
    if (v.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Matrix> svd(v);
    return svd.singularValues().minCoeff();
}

// Sorted real eigenvalues of a Hermitian matrix.
inline std::vector<double> hermitian_spectrum(const Matrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Complex> eigenvalues(const Matrix &a) {
    Eigen::ComplexEigenSolver<Matrix> es(a, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// Largest distance in a greedy nearest-neighbour matching of two spectra
// (with multiplicity); infinity when the sizes differ.
inline double spectral_mismatch(const std::vector<Complex> &a, std::vector<Complex> b) {
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Complex &x : a) {
        auto best = std::min_element(b.begin(), b.end(),
                                     [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
        worst = std::max(worst, std::abs(*best - x));
        b.erase(best);
    }
    return worst;
}

} // namespace sector_kit::linalg
