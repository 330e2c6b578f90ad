#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "permgroup.hpp"

namespace sector_kit {

using linalg::Index;
using linalg::Matrix;

// Largest m^N for which dense operators are materialized.
inline constexpr Index kDefaultDimensionCap = 1000;

// (C^m)^{(x)N} with e_{i_1} (x) ... (x) e_{i_N} stored at the flat index
// whose base-m digits are i_1 ... i_N, i_1 most significant.
class TensorSpace {
  public:
    TensorSpace(int m, int n, Index cap = kDefaultDimensionCap) : m_(m), n_(n) {
        if (m < 1 || n < 1)
            throw DomainError("TensorSpace: m and N must be positive");
        Index dim = 1;
        for (int k = 0; k < n; ++k) {
            dim *= m;
            if (dim > cap)
                throw ResourceError("TensorSpace: m^N = " + std::to_string(m) + "^" + std::to_string(n) +
                                    " exceeds the dimension cap " + std::to_string(cap));
        }
        dim_ = dim;
    }

    int local_dimension() const { return m_; }
    int particles() const { return n_; }
    Index dimension() const { return dim_; }

    std::vector<int> digits(Index flat) const {
        std::vector<int> d(static_cast<std::size_t>(n_));
        for (int k = n_ - 1; k >= 0; --k) {
            d[static_cast<std::size_t>(k)] = static_cast<int>(flat % m_);
            flat /= m_;
        }
        return d;
    }

    Index flat(const std::vector<int> &digits) const {
        Index f = 0;
        for (int d : digits)
            f = f * m_ + d;
        return f;
    }

    // Index map of U(p): basis vector a goes to basis vector image[a].
    std::vector<Index> permuted_indices(const Permutation &p) const {
        if (p.degree() != n_)
            throw DomainError("TensorSpace: permutation degree differs from N");
        std::vector<Index> image(static_cast<std::size_t>(dim_));
        std::vector<int> moved(static_cast<std::size_t>(n_));
        for (Index a = 0; a < dim_; ++a) {
            const auto d = digits(a);
            for (int k = 0; k < n_; ++k)
                moved[static_cast<std::size_t>(p(k))] = d[static_cast<std::size_t>(k)];
            image[static_cast<std::size_t>(a)] = flat(moved);
        }
        return image;
    }

  private:
    int m_;
    int n_;
    Index dim_ = 1;
};

// U(p) on (C^m)^{(x)N}: the content of slot k moves to slot p(k).
inline Matrix permutation_operator(const Permutation &p, int m, Index cap = kDefaultDimensionCap) {
    const TensorSpace space(m, p.degree(), cap);
    const auto image = space.permuted_indices(p);
    Matrix u = Matrix::Zero(space.dimension(), space.dimension());
    for (Index a = 0; a < space.dimension(); ++a)
        u(image[static_cast<std::size_t>(a)], a) = 1.0;
    return u;
}

// sum_k weight[k] U(perms[k]), accumulated without forming each U.
inline Matrix group_algebra_operator(const TensorSpace &space, const std::vector<Permutation> &perms,
                                     const std::vector<double> &weights) {
    Matrix out = Matrix::Zero(space.dimension(), space.dimension());
    for (std::size_t k = 0; k < perms.size(); ++k) {
        if (weights[k] == 0.0)
            continue;
        const auto image = space.permuted_indices(perms[k]);
        for (Index a = 0; a < space.dimension(); ++a)
            out(image[static_cast<std::size_t>(a)], a) += weights[k];
    }
    return out;
}

// P_T = (N_lambda / N!) sum_{Col(T)} sgn(c) U(c) sum_{Row(T)} U(r).
// Idempotent; Hermitian only for one-row and one-column shapes.
inline Matrix young_projector(const Tableau &t, int m, Index cap = kDefaultDimensionCap) {
    if (!t.is_standard())
        throw DomainError("young_projector: tableau " + t.to_string() + " is not standard");
    const TensorSpace space(m, t.size(), cap);
    const auto groups = row_col_groups(t);
    std::vector<double> col_w;
    for (const auto &c : groups.column)
        col_w.push_back(static_cast<double>(c.sign()));
    const Matrix col = group_algebra_operator(space, groups.column, col_w);
    const Matrix row = group_algebra_operator(space, groups.row, std::vector<double>(groups.row.size(), 1.0));
    const double scale = static_cast<double>(hook_dimension(t.shape())) / static_cast<double>(factorial(t.size()));
    return scale * (col * row);
}

// Hermitian orthogonal projector onto range(P_T).
inline Matrix young_range_projector(const Tableau &t, int m, Index cap = kDefaultDimensionCap) {
    return linalg::range_projector(young_projector(t, m, cap));
}

// z_lambda = (N_lambda / N!) sum_p chi_lambda(p^{-1}) U(p): the isotypic
// projector of the lambda sector.
inline Matrix central_projector(const Partition &shape, int m, Index cap = kDefaultDimensionCap) {
    const TensorSpace space(m, shape.total(), cap);
    const IrrepMatrices rep(shape);
    const auto perms = all_permutations(shape.total());
    std::vector<double> weights;
    weights.reserve(perms.size());
    const double scale = static_cast<double>(rep.dimension()) / static_cast<double>(factorial(shape.total()));
    for (const auto &p : perms)
        weights.push_back(scale * rep.character(p.inverse()));
    return group_algebra_operator(space, perms, weights);
}

// Orbits of S_N acting diagonally on pairs of basis indices; each orbit is
// one matrix unit averaged over the group.
inline std::vector<std::vector<std::pair<Index, Index>>> commutant_orbits(const TensorSpace &space) {
    const Index dim = space.dimension();
    std::vector<std::vector<Index>> images;
    for (const auto &p : all_permutations(space.particles()))
        images.push_back(space.permuted_indices(p));
    std::vector<int> label(static_cast<std::size_t>(dim * dim), -1);
    std::vector<std::vector<std::pair<Index, Index>>> orbits;
    for (Index x = 0; x < dim; ++x)
        for (Index y = 0; y < dim; ++y) {
            if (label[static_cast<std::size_t>(x * dim + y)] >= 0)
                continue;
            const int id = static_cast<int>(orbits.size());
            orbits.emplace_back();
            for (const auto &img : images) {
                const Index px = img[static_cast<std::size_t>(x)];
                const Index py = img[static_cast<std::size_t>(y)];
                auto &slot = label[static_cast<std::size_t>(px * dim + py)];
                if (slot < 0) {
                    slot = id;
                    orbits.back().emplace_back(px, py);
                }
            }
        }
    return orbits;
}

// Hilbert-Schmidt orthonormal basis of M_N = {A : [A, U(p)] = 0 for all p}.
inline std::vector<Matrix> commutant_basis(int m, int n, Index cap = kDefaultDimensionCap) {
    const TensorSpace space(m, n, cap);
    std::vector<Matrix> basis;
    for (const auto &orbit : commutant_orbits(space)) {
        Matrix a = Matrix::Zero(space.dimension(), space.dimension());
        const double w = 1.0 / std::sqrt(static_cast<double>(orbit.size()));
        for (const auto &[x, y] : orbit)
            a(x, y) = w;
        basis.push_back(std::move(a));
    }
    return basis;
}

// dim M_N from the null space of [A, U(s_i)] = 0 over the adjacent
// transpositions. The permutation structure splits the system into blocks
// (connected components of the coupled entries), each solved separately.
inline Index commutant_dimension_nullspace(int m, int n, Index cap = kDefaultDimensionCap) {
    const TensorSpace space(m, n, cap);
    const Index dim = space.dimension();
    const Index entries = dim * dim;
    std::vector<std::vector<Index>> gens;
    for (int i = 1; i < n; ++i)
        gens.push_back(space.permuted_indices(Permutation::transposition(n, i, i + 1)));
    // (U A U^T)(ux, uy) = A(x, y): the equation couples entry (x,y) with (ux,uy)
    auto partner = [&](const std::vector<Index> &img, Index e) {
        return img[static_cast<std::size_t>(e / dim)] * dim + img[static_cast<std::size_t>(e % dim)];
    };
    std::vector<Index> component(static_cast<std::size_t>(entries), -1);
    Index total = 0;
    for (Index start = 0; start < entries; ++start) {
        if (component[static_cast<std::size_t>(start)] >= 0)
            continue;
        std::vector<Index> members{start};
        component[static_cast<std::size_t>(start)] = start;
        for (std::size_t k = 0; k < members.size(); ++k)
            for (const auto &g : gens) {
                const Index q = partner(g, members[k]);
                if (component[static_cast<std::size_t>(q)] < 0) {
                    component[static_cast<std::size_t>(q)] = start;
                    members.push_back(q);
                }
            }
        std::map<Index, Index> local;
        for (std::size_t k = 0; k < members.size(); ++k)
            local[members[k]] = static_cast<Index>(k);
        linalg::NullSpaceSolver solver(static_cast<Index>(members.size()));
        Matrix rows = Matrix::Zero(static_cast<Index>(members.size() * gens.size()), solver.unknowns());
        Index r = 0;
        for (Index e : members)
            for (const auto &g : gens) {
                rows(r, local[e]) += 1.0;
                rows(r, local[partner(g, e)]) -= 1.0;
                ++r;
            }
        solver.add_equations(rows);
        total += solver.nullity();
    }
    return total;
}

struct SectorRecord {
    Partition shape;
    Index irrep_dimension = 0; // N_lambda
    Index multiplicity = 0;    // d_lambda(m)
    Index rank = 0;            // rank z_lambda = N_lambda d_lambda(m)
    double idempotence_residual = 0.0;
    double hermiticity_residual = 0.0;
};

struct SectorReport {
    int m = 0;
    int n = 0;
    std::vector<SectorRecord> sectors;
    Index dimension = 0;
    Index rank_sum = 0;
    Index commutant_dimension = 0;       // from the null-space computation
    Index multiplicity_square_sum = 0;   // sum_lambda d_lambda(m)^2
    double orthogonality_residual = 0.0; // max |z_lambda z_mu|, lambda != mu
    double completeness_residual = 0.0;  // |sum z_lambda - 1|

    bool rank_identity() const { return rank_sum == dimension; }
    bool commutant_identity() const { return commutant_dimension == multiplicity_square_sum; }
    double max_residual() const {
        double r = std::max(orthogonality_residual, completeness_residual);
        for (const auto &s : sectors)
            r = std::max({r, s.idempotence_residual, s.hermiticity_residual});
        return r;
    }
    bool consistent() const {
        return rank_identity() && commutant_identity() && max_residual() < linalg::kIdentityTolerance;
    }
};

inline SectorReport sector_decomposition(int m, int n, Index cap = kDefaultDimensionCap) {
    const TensorSpace space(m, n, cap);
    SectorReport report;
    report.m = m;
    report.n = n;
    report.dimension = space.dimension();
    std::vector<Matrix> projectors;
    Matrix sum = Matrix::Zero(space.dimension(), space.dimension());
    for (const auto &shape : enumerate_partitions(n)) {
        Matrix z = central_projector(shape, m, cap);
        SectorRecord rec;
        rec.shape = shape;
        rec.irrep_dimension = static_cast<Index>(hook_dimension(shape));
        rec.rank = linalg::hermitian_rank(z);
        const double trace = z.trace().real();
        if (std::abs(trace - static_cast<double>(rec.rank)) > 1e-6)
            throw ConsistencyError("sector_decomposition: trace of z" + shape.to_string() + " differs from its rank");
        if (rec.rank % rec.irrep_dimension != 0)
            throw ConsistencyError("sector_decomposition: rank of z" + shape.to_string() +
                                   " is not a multiple of N_lambda");
        rec.multiplicity = rec.rank / rec.irrep_dimension;
        rec.idempotence_residual = linalg::idempotence_residual(z);
        rec.hermiticity_residual = linalg::hermiticity_residual(z);
        report.rank_sum += rec.rank;
        report.multiplicity_square_sum += rec.multiplicity * rec.multiplicity;
        sum += z;
        projectors.push_back(std::move(z));
        report.sectors.push_back(rec);
    }
    for (std::size_t a = 0; a < projectors.size(); ++a)
        for (std::size_t b = 0; b < projectors.size(); ++b)
            if (a != b)
                report.orthogonality_residual =
                    std::max(report.orthogonality_residual, linalg::max_abs(projectors[a] * projectors[b]));
    report.completeness_residual = linalg::max_abs(sum - linalg::identity(space.dimension()));
    report.commutant_dimension = commutant_dimension_nullspace(m, n, cap);
    return report;
}

// Dimension of the commutant of {z A z : A in M_N} restricted to the image
// of z_lambda. Schur-Weyl duality predicts N_lambda^2.
inline Index isotypic_block_commutant_dimension(const Partition &shape, int m, Index cap = kDefaultDimensionCap) {
    const Matrix z = central_projector(shape, m, cap);
    const Matrix block = linalg::range_basis(z);
    if (block.cols() == 0)
        return 0;
    std::vector<Matrix> restricted;
    for (const auto &a : commutant_basis(m, shape.total(), cap))
        restricted.push_back(block.adjoint() * a * block);
    return static_cast<Index>(linalg::commutant(restricted, block.cols()).size());
}

// Checks the four closed spans of (C^m)^{(x)3}
//   H_S  = span{psi_123 + psi_213 + psi_321 + psi_312 + psi_132 + psi_231}
//   H_A  = span{psi_123 - psi_213 - psi_321 + psi_312 - psi_132 + psi_231}
//   H_P  = span{psi_123 + psi_213 - psi_321 - psi_312}
//   H_P' = span{psi_123 + psi_321 - psi_213 - psi_231}
// psi_ijk = psi_i (x) psi_j (x) psi_k, against the images of their
// projectors P_S, P_A, P = (1/3)(1 - U(13))(1 + U(12)),
// P' = (1/3)(1 - U(12))(1 + U(13)).
struct SpanCheckReport {
    int m = 0;
    std::array<Index, 4> dimensions{};           // S, A, P, P'
    std::array<double, 4> projector_mismatch{};  // |span projector - image projector|
    double isotypic_overlap = 0.0;               // max overlap among S, A, P+P'
    double parafermion_overlap = 0.0;            // cosine of the smallest angle between H_P and H_P'
    Index sum_rank = 0;                          // rank of H_S + H_A + H_P + H_P'
    Index ambient_dimension = 0;
    std::string swapping_permutation;            // U(p) H_P = H_P' and U(p) H_P' = H_P
    double swap_residual = 0.0;

    bool images_match() const {
        for (double r : projector_mismatch)
            if (r > linalg::kIdentityTolerance)
                return false;
        return true;
    }
    bool direct_and_complete() const {
        Index total = 0;
        for (Index d : dimensions)
            total += d;
        return total == ambient_dimension && sum_rank == ambient_dimension &&
               isotypic_overlap < linalg::kIdentityTolerance;
    }
    bool swap_found() const { return !swapping_permutation.empty() && swap_residual < linalg::kIdentityTolerance; }
    bool passed() const { return images_match() && direct_and_complete() && swap_found(); }
};

inline SpanCheckReport sector_basis_span_check(int m, std::uint64_t seed = 1) {
    const int n = 3;
    const TensorSpace space(m, n);
    const Index dim = space.dimension();
    SpanCheckReport report;
    report.m = m;
    report.ambient_dimension = dim;

    // (sign, i, j, k) terms of each spanning vector, labels 1-based
    using Term = std::array<int, 4>;
    const std::array<std::vector<Term>, 4> spans = {{
        {{1, 1, 2, 3}, {1, 2, 1, 3}, {1, 3, 2, 1}, {1, 3, 1, 2}, {1, 1, 3, 2}, {1, 2, 3, 1}},
        {{1, 1, 2, 3}, {-1, 2, 1, 3}, {-1, 3, 2, 1}, {1, 3, 1, 2}, {-1, 1, 3, 2}, {1, 2, 3, 1}},
        {{1, 1, 2, 3}, {1, 2, 1, 3}, {-1, 3, 2, 1}, {-1, 3, 1, 2}},
        {{1, 1, 2, 3}, {1, 3, 2, 1}, {-1, 2, 1, 3}, {-1, 2, 3, 1}},
    }};
    const Matrix id = linalg::identity(dim);
    const Matrix u12 = permutation_operator(Permutation::transposition(n, 1, 2), m);
    const Matrix u13 = permutation_operator(Permutation::transposition(n, 1, 3), m);
    Matrix sym = Matrix::Zero(dim, dim);
    Matrix alt = Matrix::Zero(dim, dim);
    for (const auto &p : all_permutations(n)) {
        const Matrix u = permutation_operator(p, m);
        sym += u;
        alt += static_cast<double>(p.sign()) * u;
    }
    const std::array<Matrix, 4> projectors = {sym / 6.0, alt / 6.0, (id - u13) * (id + u12) / 3.0,
                                              (id - u12) * (id + u13) / 3.0};

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto random_vector = [&] {
        linalg::Vector v(m);
        for (int i = 0; i < m; ++i)
            v(i) = linalg::Complex(gauss(rng), gauss(rng));
        return v;
    };
    const Index samples = 3 * dim + 8;
    std::array<Matrix, 4> bases;
    for (std::size_t s = 0; s < 4; ++s) {
        Matrix vectors(dim, samples);
        for (Index c = 0; c < samples; ++c) {
            const std::array<linalg::Vector, 3> psi = {random_vector(), random_vector(), random_vector()};
            linalg::Vector acc = linalg::Vector::Zero(dim);
            for (const auto &t : spans[s]) {
                const Matrix prod = linalg::kron(linalg::kron(psi[static_cast<std::size_t>(t[1] - 1)],
                                                              psi[static_cast<std::size_t>(t[2] - 1)]),
                                                 psi[static_cast<std::size_t>(t[3] - 1)]);
                acc += static_cast<double>(t[0]) * prod.col(0);
            }
            vectors.col(c) = acc;
        }
        bases[s] = linalg::range_basis(vectors);
        report.dimensions[s] = bases[s].cols();
        const Matrix span_proj = bases[s] * bases[s].adjoint();
        report.projector_mismatch[s] = linalg::max_abs(span_proj - linalg::range_projector(projectors[s]));
    }

    auto overlap = [](const Matrix &a, const Matrix &b) {
        if (a.cols() == 0 || b.cols() == 0)
            return 0.0;
        Eigen::JacobiSVD<Matrix> svd(a.adjoint() * b);
        return svd.singularValues()(0);
    };
    Matrix para(dim, bases[2].cols() + bases[3].cols());
    para << bases[2], bases[3];
    const Matrix para_basis = linalg::range_basis(para);
    report.isotypic_overlap =
        std::max({overlap(bases[0], bases[1]), overlap(bases[0], para_basis), overlap(bases[1], para_basis)});
    report.parafermion_overlap = overlap(bases[2], bases[3]);
    Matrix all(dim, bases[0].cols() + bases[1].cols() + para.cols());
    all << bases[0], bases[1], para;
    report.sum_rank = linalg::numerical_rank(all);

    const Matrix proj_p = bases[2] * bases[2].adjoint();
    const Matrix proj_q = bases[3] * bases[3].adjoint();
    double best = std::numeric_limits<double>::infinity();
    for (const auto &p : all_permutations(n)) {
        const Matrix u = permutation_operator(p, m);
        const double r = std::max(linalg::max_abs(u * proj_p * u.adjoint() - proj_q),
                                  linalg::max_abs(u * proj_q * u.adjoint() - proj_p));
        if (r < best) {
            best = r;
            report.swapping_permutation = p.to_string();
        }
    }
    report.swap_residual = best;
    return report;
}

} // namespace sector_kit
