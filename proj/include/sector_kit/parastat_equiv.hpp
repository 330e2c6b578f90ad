#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "errors.hpp"
#include "linalg.hpp"
#include "permgroup.hpp"
#include "tensor_rep.hpp"

namespace sector_kit {

using linalg::Complex;
using linalg::Vector;

// Particles carrying a two-level internal label ("isospin").
//
// The ambient space is (C^m (x) C^2)^{(x)N} = TensorSpace(2m, N): slot k
// holds the local index 2*q_k + a_k, q_k the spatial label and a_k in {0, 1}
// the internal label (a = 0 is label 1). Slot 1 is the most
// significant digit, as in TensorSpace.
class DoubletSpace {
  public:
    DoubletSpace(int m, int n, Index cap = kDefaultDimensionCap)
        : m_(m), n_(n), ambient_(2 * m, n, cap), spatial_(m, n, cap), internal_(2, n, cap) {
        const Index dim = ambient_.dimension();
        spatial_index_.resize(static_cast<std::size_t>(dim));
        internal_index_.resize(static_cast<std::size_t>(dim));
        for (Index x = 0; x < dim; ++x) {
            const auto d = ambient_.digits(x);
            std::vector<int> q(d.size()), a(d.size());
            for (std::size_t k = 0; k < d.size(); ++k) {
                q[k] = d[k] / 2;
                a[k] = d[k] % 2;
            }
            spatial_index_[static_cast<std::size_t>(x)] = spatial_.flat(q);
            internal_index_[static_cast<std::size_t>(x)] = internal_.flat(a);
        }
    }

    int spatial_dimension() const { return m_; }
    int particles() const { return n_; }
    const TensorSpace &ambient() const { return ambient_; }
    const TensorSpace &spatial() const { return spatial_; }
    Index dimension() const { return ambient_.dimension(); }

    // Ambient flat index of spatial configuration `q` and internal labels `a`.
    Index index(Index spatial_flat, const std::vector<int> &a) const {
        const auto q = spatial_.digits(spatial_flat);
        std::vector<int> d(q.size());
        for (std::size_t k = 0; k < q.size(); ++k)
            d[k] = 2 * q[k] + a[k];
        return ambient_.flat(d);
    }

    // A (x) 1: acts on the spatial factors and does nothing on the labels.
    Matrix lift(const Matrix &a) const {
        if (a.rows() != spatial_.dimension() || a.cols() != spatial_.dimension())
            throw DomainError("DoubletSpace::lift: operator size mismatch");
        const Index dim = dimension();
        Matrix out = Matrix::Zero(dim, dim);
        for (Index x = 0; x < dim; ++x)
            for (Index y = 0; y < dim; ++y)
                if (internal_index_[static_cast<std::size_t>(x)] == internal_index_[static_cast<std::size_t>(y)])
                    out(x, y) = a(spatial_index_[static_cast<std::size_t>(x)], spatial_index_[static_cast<std::size_t>(y)]);
        return out;
    }

    // 1 (x) B: acts on the internal labels only.
    Matrix lift_internal(const Matrix &b) const {
        if (b.rows() != internal_.dimension() || b.cols() != internal_.dimension())
            throw DomainError("DoubletSpace::lift_internal: operator size mismatch");
        const Index dim = dimension();
        Matrix out = Matrix::Zero(dim, dim);
        for (Index x = 0; x < dim; ++x)
            for (Index y = 0; y < dim; ++y)
                if (spatial_index_[static_cast<std::size_t>(x)] == spatial_index_[static_cast<std::size_t>(y)])
                    out(x, y) = b(internal_index_[static_cast<std::size_t>(x)], internal_index_[static_cast<std::size_t>(y)]);
        return out;
    }

    // Projector onto the totally symmetric subspace (bosonic doublets).
    Matrix bosonic_projector() const {
        const auto perms = all_permutations(n_);
        const double w = 1.0 / static_cast<double>(perms.size());
        return group_algebra_operator(ambient_, perms, std::vector<double>(perms.size(), w));
    }

  private:
    int m_;
    int n_;
    TensorSpace ambient_;
    TensorSpace spatial_;
    TensorSpace internal_;
    std::vector<Index> spatial_index_;
    std::vector<Index> internal_index_;
};

class PartialIsometry {
  public:
    explicit PartialIsometry(Matrix w) : w_(std::move(w)) {}

    const Matrix &matrix() const { return w_; }
    Matrix initial_projector() const { return w_.adjoint() * w_; }
    Matrix final_projector() const { return w_ * w_.adjoint(); }
    double residual() const { return linalg::partial_isometry_residual(w_); }
    Vector apply(const Vector &psi) const { return w_ * psi; }

  private:
    Matrix w_;
};

// psi_0(q1,q2) = (psi_{12} - psi_{21}) / sqrt 2: the internal singlet, onto
// (C^m)^{(x)2}.
inline PartialIsometry singlet_isometry_2(int m, Index cap = kDefaultDimensionCap) {
    if (m < 1)
        throw DomainError("singlet_isometry_2: m must be positive");
    const DoubletSpace space(m, 2, cap);
    const Index target = space.spatial().dimension();
    const double r = 1.0 / std::sqrt(2.0);
    Matrix w = Matrix::Zero(target, space.dimension());
    for (Index s = 0; s < target; ++s) {
        w(s, space.index(s, {0, 1})) = r;
        w(s, space.index(s, {1, 0})) = -r;
    }
    return PartialIsometry(std::move(w));
}

// The doublet of three internal labels, onto (C^m)^{(x)3} (x) C^2 with
// index 2*spatial + i:
//   i = 0: (psi_{121} - psi_{112}) / sqrt 2
//   i = 1: (-2 psi_{211} + psi_{121} + psi_{112}) / sqrt 6
inline PartialIsometry doublet_isometry_3(int m, Index cap = kDefaultDimensionCap) {
    if (m < 1)
        throw DomainError("doublet_isometry_3: m must be positive");
    const DoubletSpace space(m, 3, cap);
    const Index spatial = space.spatial().dimension();
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    Matrix w = Matrix::Zero(2 * spatial, space.dimension());
    for (Index s = 0; s < spatial; ++s) {
        w(2 * s, space.index(s, {0, 1, 0})) = r2;
        w(2 * s, space.index(s, {0, 0, 1})) = -r2;
        w(2 * s + 1, space.index(s, {1, 0, 0})) = -2.0 * r6;
        w(2 * s + 1, space.index(s, {0, 1, 0})) = r6;
        w(2 * s + 1, space.index(s, {0, 0, 1})) = r6;
    }
    return PartialIsometry(std::move(w));
}

// The two-dimensional irrep U_P of S_3 in the basis e_1 = (0,1,-1)/sqrt 2,
// e_2 = (-2,1,1)/sqrt 6 of the reduced natural action on C^3.
inline Matrix parafermion_matrix(const Permutation &p) {
    if (p.degree() != 3)
        throw DomainError("parafermion_matrix: permutation must lie in S_3");
    const double h = std::sqrt(3.0) / 2.0;
    Matrix s12(2, 2), s23(2, 2);
    s12 << 0.5, -h, -h, -0.5;
    s23 << -1.0, 0.0, 0.0, 1.0;
    const Matrix gens[2] = {s12, s23};
    Matrix out = linalg::identity(2);
    for (int i : p.adjacent_word())
        out = out * gens[i];
    return out;
}

// Natural action of S_n on C^n: e_i -> e_{pi(i)}.
inline Matrix natural_action(const Permutation &p) {
    const int n = p.degree();
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        out(p(i), i) = 1.0;
    return out;
}

// Columns e_0 = (1,1,1)/sqrt 3, e_1, e_2: trivial line plus the U_P plane.
inline Matrix parafermion_basis() {
    Matrix b(3, 3);
    const double r3 = 1.0 / std::sqrt(3.0), r2 = 1.0 / std::sqrt(2.0), r6 = 1.0 / std::sqrt(6.0);
    b << r3, 0.0, -2.0 * r6, r3, r2, r6, r3, -r2, r6;
    return b;
}

// Carrier of a representation of the invariant algebra: an isometric
// embedding E of the carrier into an ambient space, plus the rule `lift`
// extending an algebra element to the ambient space. The action is E* lift(A) E.
struct SectorRealization {
    std::string label;
    Matrix embedding;
    std::function<Matrix(const Matrix &)> lift;

    Index dimension() const { return embedding.cols(); }

    Matrix action(const Matrix &a) const {
        const Matrix l = lift(a);
        return embedding.adjoint() * (l * embedding);
    }

    // Part of lift(A) E that leaves the carrier.
    double leakage(const Matrix &a) const {
        const Matrix le = lift(a) * embedding;
        return linalg::max_abs(le - embedding * (embedding.adjoint() * le));
    }
};

inline SectorRealization realization_from_projector(std::string label, const Matrix &projector,
                                                    std::function<Matrix(const Matrix &)> lift = {}) {
    if (!lift)
        lift = [](const Matrix &a) { return a; };
    return {std::move(label), linalg::range_basis(projector), std::move(lift)};
}

struct EquivalenceCertificate {
    bool equivalent = false;
    Index dimension_1 = 0;
    Index dimension_2 = 0;
    // dim of {V : V a1(A) = a2(A) V}
    Index intertwiner_space_dimension = 0;
    // smallest singular value of the sampled intertwiner, relative to the largest
    double conditioning = 0.0;
    double residual = 0.0;
    double unitarity_residual = 0.0;
    Matrix intertwiner;
    std::string reason;

    // Certificate for the swapped pair, carried by the adjoint intertwiner.
    EquivalenceCertificate reversed() const {
        EquivalenceCertificate out = *this;
        std::swap(out.dimension_1, out.dimension_2);
        out.intertwiner = intertwiner.adjoint();
        return out;
    }
};

inline double intertwining_residual(const Matrix &v, const std::vector<Matrix> &a1, const std::vector<Matrix> &a2) {
    double r = 0.0;
    for (std::size_t k = 0; k < a1.size(); ++k)
        r = std::max(r, linalg::max_abs(v * a1[k] - a2[k] * v));
    return r;
}

// Searches for a unitary V with V a1(A) = a2(A) V over the algebra basis.
// A seeded random element of the intertwiner space is invertible whenever
// any element is; its polar factor is then unitary and still intertwines,
// because the actions are *-representations.
inline EquivalenceCertificate general_equivalence(const SectorRealization &r1, const SectorRealization &r2,
                                                  const std::vector<Matrix> &algebra, std::uint64_t seed = 1) {
    if (algebra.empty())
        throw DomainError("general_equivalence: empty algebra basis");
    EquivalenceCertificate cert;
    cert.dimension_1 = r1.dimension();
    cert.dimension_2 = r2.dimension();
    if (cert.dimension_1 != cert.dimension_2) {
        cert.reason = "carrier dimensions differ";
        return cert;
    }
    if (cert.dimension_1 == 0) {
        cert.equivalent = true;
        cert.reason = "both carriers are zero";
        return cert;
    }
    std::vector<Matrix> a1, a2;
    a1.reserve(algebra.size());
    a2.reserve(algebra.size());
    for (const auto &a : algebra) {
        a1.push_back(r1.action(a));
        a2.push_back(r2.action(a));
    }
    const auto basis = linalg::intertwiners(a1, a2);
    cert.intertwiner_space_dimension = static_cast<Index>(basis.size());
    if (basis.empty()) {
        cert.reason = "no nonzero intertwiner";
        return cert;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Matrix v = Matrix::Zero(cert.dimension_2, cert.dimension_1);
    for (const auto &b : basis) {
        const double re = coeff(rng);
        const double im = coeff(rng);
        v += Complex(re, im) * b;
    }
    Eigen::JacobiSVD<Matrix> svd(v);
    const auto &sv = svd.singularValues();
    cert.conditioning = sv(sv.size() - 1) / sv(0);
    if (cert.conditioning < linalg::kRankThreshold) {
        cert.reason = "every intertwiner is singular";
        return cert;
    }
    cert.intertwiner = linalg::polar_unitary(v);
    cert.residual = intertwining_residual(cert.intertwiner, a1, a2);
    cert.unitarity_residual = linalg::unitarity_residual(cert.intertwiner);
    cert.equivalent =
        cert.residual < linalg::kIdentityTolerance && cert.unitarity_residual < linalg::kIdentityTolerance;
    cert.reason = cert.equivalent ? "unitary intertwiner found" : "polar factor fails to intertwine";
    return cert;
}

struct PropositionCertificate {
    std::string name;
    int m = 0;
    EquivalenceCertificate equivalence;
    double isometry_residual = 0.0;
    // [P_internal, P_B]
    double projector_commutator = 0.0;
    // max over A of [A (x) 1, P_internal] and [A (x) 1, P_B]
    double action_commutator = 0.0;
    // max over A and both carriers
    double leakage = 0.0;
    // literal transcription of the displayed parafermion constraints (N = 3)
    double constraint_residual = 0.0;

    double max_residual() const {
        return std::max({equivalence.residual, isometry_residual, projector_commutator, action_commutator, leakage,
                         constraint_residual});
    }
    bool passed() const { return equivalence.equivalent && max_residual() < linalg::kIdentityTolerance; }
};

namespace detail {

inline double sparse_commutator(const Matrix &a, const Matrix &p) {
    const Eigen::SparseMatrix<Complex> s = a.sparseView();
    const Matrix sp = s * p;
    const Matrix ps = p * s;
    return linalg::max_abs(sp - ps);
}

inline void fill_common(PropositionCertificate &cert, const DoubletSpace &space, const PartialIsometry &w,
                        const Matrix &p_internal, const Matrix &p_bose, const SectorRealization &r1,
                        const SectorRealization &r2, const std::vector<Matrix> &algebra) {
    cert.isometry_residual = w.residual();
    cert.projector_commutator = linalg::commutator_residual(p_internal, p_bose);
    for (const auto &a : algebra) {
        const Matrix l = space.lift(a);
        cert.action_commutator = std::max(
            {cert.action_commutator, sparse_commutator(l, p_internal), sparse_commutator(l, p_bose)});
        cert.leakage = std::max({cert.leakage, r1.leakage(a), r2.leakage(a)});
    }
}

} // namespace detail

// Two fermions without internal structure versus the isospin singlet of two
// bosonic doublets, under isospin-blind observables.
inline PropositionCertificate verify_prop2(int m, std::uint64_t seed = 1, Index cap = kDefaultDimensionCap) {
    if (m < 2)
        throw DomainError("verify_prop2: m must be at least 2");
    const DoubletSpace space(m, 2, cap);
    const PartialIsometry w = singlet_isometry_2(m, cap);
    const Matrix p0 = w.initial_projector();
    const Matrix pb = space.bosonic_projector();
    auto lift = [space](const Matrix &a) { return space.lift(a); };
    const SectorRealization bosons = realization_from_projector("singlet bosonic doublets", p0 * pb, lift);
    const Matrix swap = permutation_operator(Permutation::transposition(2, 1, 2), m, cap);
    const Matrix p_f = 0.5 * (linalg::identity(swap.rows()) - swap);
    const SectorRealization fermions = realization_from_projector("fermions", p_f);
    const auto algebra = commutant_basis(m, 2, cap);

    PropositionCertificate cert;
    cert.name = "prop2";
    cert.m = m;
    cert.equivalence = general_equivalence(bosons, fermions, algebra, seed);
    detail::fill_common(cert, space, w, p0, pb, bosons, fermions, algebra);
    return cert;
}

// Projector onto the doublet wave-functions on (C^m)^{(x)3} (x) C^2 obeying
// psi(q h) = U_P(h^{-1}) psi(q), with (q h)_k = q_{h(k)}.
inline Matrix parafermion_constraint_projector(int m, Index cap = kDefaultDimensionCap) {
    const auto perms = all_permutations(3);
    const Index spatial = TensorSpace(m, 3, cap).dimension();
    Matrix out = Matrix::Zero(2 * spatial, 2 * spatial);
    // (T_h psi)(q) = U_P(h) psi(q h); T is a representation and the
    // constrained space is its fixed space.
    for (const auto &h : perms)
        out += linalg::kron(permutation_operator(h, m, cap), parafermion_matrix(h));
    return out / static_cast<double>(perms.size());
}

// Largest violation of the six displayed transposition constraints by psi,
// a vector on (C^m)^{(x)3} (x) C^2 with index 2*spatial + i.
inline double parafermion_constraint_violation(const Vector &psi, int m) {
    const TensorSpace space(m, 3);
    const double h = std::sqrt(3.0) / 2.0;
    auto at = [&](int i, int a, int b, int c) { return psi(2 * space.flat({a, b, c}) + i); };
    double worst = 0.0;
    for (Index s = 0; s < space.dimension(); ++s) {
        const auto q = space.digits(s);
        const int q1 = q[0], q2 = q[1], q3 = q[2];
        const Complex p1 = at(0, q1, q2, q3), p2 = at(1, q1, q2, q3);
        const Complex r[6] = {
            at(0, q2, q1, q3) - (0.5 * p1 - h * p2),  at(1, q2, q1, q3) - (-h * p1 - 0.5 * p2),
            at(0, q3, q2, q1) - (0.5 * p1 + h * p2),  at(1, q3, q2, q1) - (h * p1 - 0.5 * p2),
            at(0, q1, q3, q2) - (-p1),                at(1, q1, q3, q2) - p2,
        };
        for (const Complex &v : r)
            worst = std::max(worst, std::abs(v));
    }
    return worst;
}

// Three parafermions without internal structure versus the doublet carried
// by three bosonic doublets, under isospin-blind observables.
inline PropositionCertificate verify_prop3(int m, std::uint64_t seed = 1, Index cap = kDefaultDimensionCap) {
    if (m < 2)
        throw DomainError("verify_prop3: m must be at least 2");
    const DoubletSpace space(m, 3, cap);
    const PartialIsometry w = doublet_isometry_3(m, cap);
    const Matrix p2 = w.initial_projector();
    const Matrix pb = space.bosonic_projector();
    auto lift = [space](const Matrix &a) { return space.lift(a); };
    const SectorRealization bosons = realization_from_projector("doublet of bosonic doublets", p2 * pb, lift);
    auto lift_p = [](const Matrix &a) { return linalg::kron(a, linalg::identity(2)); };
    const SectorRealization para =
        realization_from_projector("parafermions", parafermion_constraint_projector(m, cap), lift_p);
    const auto algebra = commutant_basis(m, 3, cap);

    PropositionCertificate cert;
    cert.name = "prop3";
    cert.m = m;
    cert.equivalence = general_equivalence(bosons, para, algebra, seed);
    detail::fill_common(cert, space, w, p2, pb, bosons, para, algebra);

    // random constrained state against the literal constraint table
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Vector c(para.dimension());
    for (Index k = 0; k < c.size(); ++k)
        c(k) = Complex(g(rng), g(rng));
    cert.constraint_residual = parafermion_constraint_violation(para.embedding * c, m);
    return cert;
}

} // namespace sector_kit
