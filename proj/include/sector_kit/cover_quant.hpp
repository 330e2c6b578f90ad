#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "permgroup.hpp"

namespace sector_kit {

using linalg::Complex;
using linalg::Index;
using linalg::Matrix;
using linalg::Vector;

// Largest total space accepted by the census and the CLI.
inline constexpr Index kDefaultCoverCap = 240;

// A finite group given concretely as permutations of {0..degree-1}, closed
// under composition. Elements are sorted, so the identity has index 0.
class FiniteGroup {
  public:
    static FiniteGroup generated_by(int degree, std::vector<Permutation> generators) {
        for (const auto &g : generators)
            if (g.degree() != degree)
                throw DomainError("FiniteGroup: generator " + g.to_string() + " has the wrong degree");
        std::map<Permutation, int> seen;
        std::vector<Permutation> found{Permutation::identity(degree)};
        seen.emplace(found.front(), 0);
        for (std::size_t i = 0; i < found.size(); ++i)
            for (const auto &g : generators) {
                Permutation next = found[i] * g;
                if (seen.emplace(next, 0).second)
                    found.push_back(std::move(next));
            }
        FiniteGroup out;
        out.degree_ = degree;
        out.elements_ = std::move(found);
        std::sort(out.elements_.begin(), out.elements_.end());
        out.finish(generators);
        return out;
    }

    static FiniteGroup symmetric(int n) {
        std::vector<Permutation> gens;
        for (int i = 1; i < n; ++i)
            gens.push_back(Permutation::transposition(n, i, i + 1));
        return generated_by(n, gens);
    }

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elements_.size()); }
    const Permutation &element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
    const std::vector<Permutation> &elements() const { return elements_; }
    const std::vector<int> &generators() const { return generators_; }

    int index_of(const Permutation &p) const {
        const auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        if (it == elements_.end() || *it != p)
            throw DomainError("FiniteGroup: " + p.to_string() + " is not an element");
        return static_cast<int>(it - elements_.begin());
    }

    // index of element(a) * element(b) (b acts first)
    int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a * order() + b)]; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    bool is_full_symmetric() const { return static_cast<std::uint64_t>(order()) == factorial(degree_); }

  private:
    void finish(const std::vector<Permutation> &generators) {
        const int n = order();
        table_.resize(static_cast<std::size_t>(n * n));
        inverse_.resize(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                table_[static_cast<std::size_t>(a * n + b)] = index_of(element(a) * element(b));
            inverse_[static_cast<std::size_t>(a)] = index_of(element(a).inverse());
        }
        for (const auto &g : generators)
            generators_.push_back(index_of(g));
    }

    int degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<int> generators_;
    std::vector<int> table_;
    std::vector<int> inverse_;
};

// Unitary representation of a FiniteGroup, one matrix per element index.
struct GroupRep {
    std::string label;
    std::vector<Matrix> matrices;

    Index dimension() const { return matrices.empty() ? 0 : matrices.front().rows(); }
    const Matrix &operator()(int h) const { return matrices[static_cast<std::size_t>(h)]; }
    Complex character(int h) const { return matrices[static_cast<std::size_t>(h)].trace(); }

    double homomorphism_residual(const FiniteGroup &g) const {
        double r = 0.0;
        for (int a = 0; a < g.order(); ++a) {
            r = std::max(r, linalg::unitarity_residual((*this)(a)));
            for (int b = 0; b < g.order(); ++b)
                r = std::max(r, linalg::max_abs((*this)(g.multiply(a, b)) - (*this)(a) * (*this)(b)));
        }
        return r;
    }
};

inline GroupRep trivial_rep(const FiniteGroup &g) {
    return {"trivial", std::vector<Matrix>(static_cast<std::size_t>(g.order()), linalg::identity(1))};
}

inline GroupRep young_rep(const FiniteGroup &g, const Partition &shape) {
    if (!g.is_full_symmetric() || shape.total() != g.degree())
        throw DomainError("young_rep: group is not S_" + std::to_string(shape.total()));
    const IrrepMatrices rep(shape);
    GroupRep out{shape.to_string(), {}};
    for (const auto &p : g.elements())
        out.matrices.push_back(rep.matrix(p));
    return out;
}

namespace detail {

inline Matrix left_regular(const FiniteGroup &g, int a) {
    const int n = g.order();
    Matrix out = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h)
        out(g.multiply(a, h), h) = 1.0;
    return out;
}

} // namespace detail

// Complete list of inequivalent irreducible representations. For a full
// symmetric group these are the Young orthogonal forms, labelled by
// partition. Otherwise the left regular representation is split by the
// eigenspaces of a generic Hermitian element of its commutant (the right
// regular algebra) and one piece per character is kept.
inline std::vector<GroupRep> irreducible_reps(const FiniteGroup &g, std::uint64_t seed = 1) {
    std::vector<GroupRep> out;
    if (g.is_full_symmetric()) {
        for (const auto &shape : enumerate_partitions(g.degree()))
            out.push_back(young_rep(g, shape));
        return out;
    }
    const int n = g.order();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Matrix h = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        // right translation R(a) e_k = e_{k a^{-1}}
        Matrix r = Matrix::Zero(n, n);
        for (int k = 0; k < n; ++k)
            r(g.multiply(k, g.inverse(a)), k) = 1.0;
        const double re = gauss(rng);
        const double im = gauss(rng);
        h += Complex(re, im) * r;
    }
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto &ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<std::pair<Index, Index>> clusters;
    for (Index i = 0; i < n;) {
        Index j = i + 1;
        while (j < n && ev(j) - ev(j - 1) < 1e-7 * scale)
            ++j;
        clusters.emplace_back(i, j - i);
        i = j;
    }
    std::vector<Matrix> regular;
    for (int a = 0; a < n; ++a)
        regular.push_back(detail::left_regular(g, a));
    std::vector<std::pair<std::vector<Complex>, GroupRep>> found;
    for (const auto &[start, size] : clusters) {
        const Matrix b = es.eigenvectors().middleCols(start, size);
        GroupRep rep;
        for (int a = 0; a < n; ++a)
            rep.matrices.push_back(b.adjoint() * regular[static_cast<std::size_t>(a)] * b);
        std::vector<Complex> chi;
        for (int a = 0; a < n; ++a)
            chi.push_back(rep.character(a));
        const bool known = std::any_of(found.begin(), found.end(), [&](const auto &f) {
            double d = 0.0;
            for (std::size_t k = 0; k < chi.size(); ++k)
                d = std::max(d, std::abs(chi[k] - f.first[k]));
            return d < 1e-6;
        });
        if (!known)
            found.emplace_back(std::move(chi), std::move(rep));
    }
    // trivial first, then by dimension and character values
    std::sort(found.begin(), found.end(), [](const auto &x, const auto &y) {
        if (x.second.dimension() != y.second.dimension())
            return x.second.dimension() < y.second.dimension();
        for (std::size_t k = 0; k < x.first.size(); ++k) {
            const double a = std::round(x.first[k].real() * 1e6), b = std::round(y.first[k].real() * 1e6);
            if (a != b)
                return a > b;
            const double c = std::round(x.first[k].imag() * 1e6), d = std::round(y.first[k].imag() * 1e6);
            if (c != d)
                return c > d;
        }
        return false;
    });
    Index square_sum = 0;
    for (std::size_t k = 0; k < found.size(); ++k) {
        found[k].second.label = "chi" + std::to_string(k);
        square_sum += found[k].second.dimension() * found[k].second.dimension();
        if (found[k].second.homomorphism_residual(g) > linalg::kIdentityTolerance)
            throw ConsistencyError("irreducible_reps: eigenspace is not a subrepresentation");
        out.push_back(std::move(found[k].second));
    }
    if (square_sum != n)
        throw ConsistencyError("irreducible_reps: dimensions squared sum to " + std::to_string(square_sum) +
                               ", not |G| = " + std::to_string(n));
    return out;
}

// Free right action of a FiniteGroup on named points: x.(h g) = (x.h).g.
// The quotient X lists orbits by their smallest point; the canonical
// section picks that smallest point.
class FiniteCover {
  public:
    // generator_images[k][x] = x . generator k (generators as in the group)
    FiniteCover(std::vector<std::string> points, FiniteGroup group,
                const std::vector<std::vector<int>> &generator_images)
        : points_(std::move(points)), group_(std::move(group)) {
        const int n = total();
        if (generator_images.size() != group_.generators().size())
            throw DomainError("FiniteCover: need one point map per group generator");
        for (const auto &img : generator_images) {
            std::vector<int> sorted = img;
            std::sort(sorted.begin(), sorted.end());
            for (int x = 0; x < n; ++x)
                if (static_cast<int>(sorted.size()) != n || sorted[static_cast<std::size_t>(x)] != x)
                    throw DomainError("FiniteCover: generator map is not a bijection of the points");
        }
        // extend along words, checking consistency
        act_.assign(static_cast<std::size_t>(group_.order()), {});
        std::vector<int> id(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            id[static_cast<std::size_t>(x)] = x;
        act_[0] = id;
        std::deque<int> queue{0};
        while (!queue.empty()) {
            const int e = queue.front();
            queue.pop_front();
            for (std::size_t k = 0; k < generator_images.size(); ++k) {
                const int eg = group_.multiply(e, group_.generators()[k]);
                std::vector<int> img(static_cast<std::size_t>(n));
                for (int x = 0; x < n; ++x)
                    img[static_cast<std::size_t>(x)] =
                        generator_images[k][static_cast<std::size_t>(act_[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)])];
                auto &slot = act_[static_cast<std::size_t>(eg)];
                if (slot.empty()) {
                    slot = std::move(img);
                    queue.push_back(eg);
                } else if (slot != img) {
                    throw DomainError("FiniteCover: point maps are not a right action of the group");
                }
            }
        }
        for (int a = 0; a < group_.order(); ++a)
            for (int b = 0; b < group_.order(); ++b)
                for (int x = 0; x < n; ++x)
                    if (act(x, group_.multiply(a, b)) != act(act(x, a), b))
                        throw DomainError("FiniteCover: point maps are not a right action of the group");
        for (int h = 1; h < group_.order(); ++h)
            for (int x = 0; x < n; ++x)
                if (act(x, h) == x)
                    throw DomainError("FiniteCover: action is not free (" + group_.element(h).to_string() +
                                      " fixes " + points_[static_cast<std::size_t>(x)] + ")");
        orbit_.assign(static_cast<std::size_t>(n), -1);
        for (int x = 0; x < n; ++x) {
            if (orbit_[static_cast<std::size_t>(x)] >= 0)
                continue;
            const int q = static_cast<int>(section_.size());
            section_.push_back(x);
            for (int h = 0; h < group_.order(); ++h)
                orbit_[static_cast<std::size_t>(act(x, h))] = q;
        }
    }

    int total() const { return static_cast<int>(points_.size()); }
    int base() const { return static_cast<int>(section_.size()); }
    const FiniteGroup &group() const { return group_; }
    const std::vector<std::string> &points() const { return points_; }
    const std::string &point(int x) const { return points_[static_cast<std::size_t>(x)]; }

    int act(int x, int h) const { return act_[static_cast<std::size_t>(h)][static_cast<std::size_t>(x)]; }
    // tau
    int project(int x) const { return orbit_[static_cast<std::size_t>(x)]; }
    // sigma
    const std::vector<int> &section() const { return section_; }
    int lift(int q) const { return section_[static_cast<std::size_t>(q)]; }

    // The unique h with x . h = sigma(tau(x)).
    int transport(int x) const {
        const int target = lift(project(x));
        for (int h = 0; h < group_.order(); ++h)
            if (act(x, h) == target)
                return h;
        throw ConsistencyError("FiniteCover: orbit bookkeeping broken");
    }

    FiniteCover with_section(const std::vector<int> &section) const {
        if (static_cast<int>(section.size()) != base())
            throw DomainError("FiniteCover: section needs one point per orbit");
        for (int q = 0; q < base(); ++q) {
            const int x = section[static_cast<std::size_t>(q)];
            if (x < 0 || x >= total() || project(x) != q)
                throw DomainError("FiniteCover: not a section, tau(sigma(" + std::to_string(q) + ")) != " +
                                  std::to_string(q));
        }
        FiniteCover out = *this;
        out.section_ = section;
        return out;
    }

    template <class Rng> FiniteCover with_random_section(Rng &rng) const {
        std::vector<int> s(static_cast<std::size_t>(base()));
        std::uniform_int_distribution<int> pick(0, group_.order() - 1);
        for (int q = 0; q < base(); ++q)
            s[static_cast<std::size_t>(q)] = act(lift(q), pick(rng));
        return with_section(s);
    }

  private:
    std::vector<std::string> points_;
    FiniteGroup group_;
    std::vector<std::vector<int>> act_;
    std::vector<int> orbit_;
    std::vector<int> section_;
};

// X~ = injective N-tuples from Q (lexicographic), G = S_N acting by
// (x h)_i = x_{h(i)}; X = N-subsets, sigma = sorted tuple.
inline FiniteCover symmetric_cover(const std::vector<std::string> &q, int n, Index cap = kDefaultCoverCap) {
    const int size = static_cast<int>(q.size());
    if (n < 1)
        throw DomainError("symmetric_cover: N must be positive");
    if (size < n)
        throw DomainError("symmetric_cover: |Q| = " + std::to_string(size) + " < N = " + std::to_string(n) +
                          " leaves the cover empty");
    Index count = 1;
    for (int k = 0; k < n; ++k) {
        count *= size - k;
        if (count > cap)
            throw ResourceError("symmetric_cover: more than " + std::to_string(cap) + " points");
    }
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(size), false);
    auto rec = [&](auto &&self) -> void {
        if (static_cast<int>(cur.size()) == n) {
            tuples.push_back(cur);
            return;
        }
        for (int v = 0; v < size; ++v)
            if (!used[static_cast<std::size_t>(v)]) {
                used[static_cast<std::size_t>(v)] = true;
                cur.push_back(v);
                self(self);
                cur.pop_back();
                used[static_cast<std::size_t>(v)] = false;
            }
    };
    rec(rec);
    std::map<std::vector<int>, int> index;
    std::vector<std::string> names;
    for (const auto &t : tuples) {
        index.emplace(t, static_cast<int>(names.size()));
        std::string s = "(";
        for (std::size_t k = 0; k < t.size(); ++k)
            s += (k ? "," : "") + q[static_cast<std::size_t>(t[k])];
        names.push_back(s + ")");
    }
    FiniteGroup g = FiniteGroup::symmetric(n);
    std::vector<std::vector<int>> images;
    for (int gi : g.generators()) {
        const Permutation &h = g.element(gi);
        std::vector<int> img;
        for (const auto &t : tuples) {
            std::vector<int> moved(t.size());
            for (int i = 0; i < n; ++i)
                moved[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(h(i))];
            img.push_back(index.at(moved));
        }
        images.push_back(std::move(img));
    }
    return FiniteCover(std::move(names), std::move(g), images);
}

inline FiniteCover symmetric_cover(int q_size, int n, Index cap = kDefaultCoverCap) {
    std::vector<std::string> q;
    for (int i = 1; i <= q_size; ++i)
        q.push_back(std::to_string(i));
    return symmetric_cover(q, n, cap);
}

// Throws DomainError naming a pair with A(x h, x' h) != A(x, x').
inline void require_invariant(const FiniteCover &cover, const Matrix &a, double tol = linalg::kIdentityTolerance) {
    const int n = cover.total();
    if (a.rows() != n || a.cols() != n)
        throw DomainError("kernel size does not match the cover");
    for (int h : cover.group().generators())
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (std::abs(a(cover.act(x, h), cover.act(y, h)) - a(x, y)) > tol)
                    throw DomainError("kernel is not invariant: A(" + cover.point(x) + "." +
                                      cover.group().element(h).to_string() + ", " + cover.point(y) + "." +
                                      cover.group().element(h).to_string() + ") != A(" + cover.point(x) + ", " +
                                      cover.point(y) + ")");
}

// Average of an arbitrary kernel over the diagonal action.
inline Matrix invariant_average(const FiniteCover &cover, const Matrix &b) {
    const int n = cover.total();
    Matrix a = Matrix::Zero(n, n);
    for (int h = 0; h < cover.group().order(); ++h)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                a(x, y) += b(cover.act(x, h), cover.act(y, h));
    return a / static_cast<double>(cover.group().order());
}

template <class Rng> Matrix random_invariant_kernel(const FiniteCover &cover, Rng &rng, bool hermitian = false) {
    std::normal_distribution<double> g;
    const int n = cover.total();
    Matrix b(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const double re = g(rng);
            const double im = g(rng);
            b(x, y) = Complex(re, im);
        }
    Matrix a = invariant_average(cover, b);
    if (hermitian)
        a = 0.5 * (a + a.adjoint()).eval();
    return a;
}

// A(x, x') = 1 when x and x' lie over the same base point.
inline Matrix fiber_kernel(const FiniteCover &cover) {
    const int n = cover.total();
    Matrix a = Matrix::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (cover.project(x) == cover.project(y))
                a(x, y) = 1.0;
    return a;
}

// Orbits of the diagonal action on X~ x X~; the orbit indicator kernels
// span the invariant kernels.
inline std::vector<std::vector<std::pair<int, int>>> kernel_orbits(const FiniteCover &cover) {
    const int n = cover.total();
    std::vector<int> label(static_cast<std::size_t>(n * n), -1);
    std::vector<std::vector<std::pair<int, int>>> out;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (label[static_cast<std::size_t>(x * n + y)] >= 0)
                continue;
            out.emplace_back();
            for (int h = 0; h < cover.group().order(); ++h) {
                const int px = cover.act(x, h), py = cover.act(y, h);
                auto &slot = label[static_cast<std::size_t>(px * n + py)];
                if (slot < 0) {
                    slot = static_cast<int>(out.size()) - 1;
                    out.back().emplace_back(px, py);
                }
            }
        }
    return out;
}

// dim of {A : A(x h, x' h) = A(x, x')} from the null space of the generator
// equations, one coupled block of entries at a time.
inline Index invariant_kernel_dimension(const FiniteCover &cover) {
    Index total = 0;
    for (const auto &block : kernel_orbits(cover)) {
        const Index size = static_cast<Index>(block.size());
        std::map<std::pair<int, int>, Index> pos;
        for (Index k = 0; k < size; ++k)
            pos.emplace(block[static_cast<std::size_t>(k)], k);
        linalg::NullSpaceSolver solver(size);
        for (int h : cover.group().generators()) {
            Matrix eq = Matrix::Zero(size, size);
            for (Index k = 0; k < size; ++k) {
                const auto [x, y] = block[static_cast<std::size_t>(k)];
                eq(k, pos.at({cover.act(x, h), cover.act(y, h)})) += 1.0;
                eq(k, k) -= 1.0;
            }
            solver.add_equations(eq);
        }
        total += solver.nullity();
    }
    return total;
}

// (T_h psi)(x) = U(h) psi(x h) on functions X~ -> C^d (index x*d + i); the
// average of T is the projector onto {psi(x h) = U(h^{-1}) psi(x)}.
inline Matrix constraint_projector(const FiniteCover &cover, const GroupRep &chi) {
    const int n = cover.total();
    const Index d = chi.dimension();
    Matrix p = Matrix::Zero(n * d, n * d);
    for (int h = 0; h < cover.group().order(); ++h)
        for (int x = 0; x < n; ++x)
            p.block(x * d, cover.act(x, h) * d, d, d) += chi(h);
    return p / static_cast<double>(cover.group().order());
}

// Basis of H^chi, orthonormal for <psi, phi> = (1/|G|) sum_x <psi(x), phi(x)>.
inline Matrix constrained_space(const FiniteCover &cover, const GroupRep &chi) {
    return std::sqrt(static_cast<double>(cover.group().order())) *
           linalg::range_basis(constraint_projector(cover, chi));
}

// A (x) 1 on functions X~ -> C^d.
inline Matrix kernel_on_vectors(const Matrix &a, Index d) { return linalg::kron(a, linalg::identity(d)); }

// pi^chi(A) in the basis returned by constrained_space.
inline Matrix constrained_action(const FiniteCover &cover, const Matrix &a, const GroupRep &chi,
                                 const Matrix &basis) {
    require_invariant(cover, a);
    const Matrix ab = kernel_on_vectors(a, chi.dimension()) * basis;
    return basis.adjoint() * ab / static_cast<double>(cover.group().order());
}

inline Matrix constrained_action(const FiniteCover &cover, const Matrix &a, const GroupRep &chi) {
    return constrained_action(cover, a, chi, constrained_space(cover, chi));
}

// Part of (A (x) 1) psi leaving H^chi, over the basis vectors.
inline double constrained_leakage(const FiniteCover &cover, const Matrix &a, const GroupRep &chi,
                                  const Matrix &basis) {
    const Matrix ab = kernel_on_vectors(a, chi.dimension()) * basis;
    const double g = static_cast<double>(cover.group().order());
    return linalg::max_abs(ab - basis * (basis.adjoint() * ab) / g);
}

// pi^chi_sigma(A) psi(q) = sum_h sum_q' A(sigma q, (sigma q') h) U(h^{-1}) psi(q')
// on L^2(X) (x) C^d, index q*d + i.
inline Matrix section_action(const FiniteCover &cover, const Matrix &a, const GroupRep &chi) {
    require_invariant(cover, a);
    const int base = cover.base();
    const Index d = chi.dimension();
    const auto &g = cover.group();
    Matrix out = Matrix::Zero(base * d, base * d);
    for (int q = 0; q < base; ++q)
        for (int qq = 0; qq < base; ++qq)
            for (int h = 0; h < g.order(); ++h) {
                const Complex k = a(cover.lift(q), cover.act(cover.lift(qq), h));
                if (k != Complex(0.0))
                    out.block(q * d, qq * d, d, d) += k * chi(g.inverse(h));
            }
    return out;
}

// U: H^chi -> L^2(X) (x) C^d, (U psi)(q) = psi(sigma q), as a matrix from the
// coordinates of `basis`.
inline Matrix realization_unitary(const FiniteCover &cover, const GroupRep &chi, const Matrix &basis) {
    const Index d = chi.dimension();
    Matrix u(cover.base() * d, basis.cols());
    for (int q = 0; q < cover.base(); ++q)
        u.middleRows(q * d, d) = basis.middleRows(cover.lift(q) * d, d);
    return u;
}

inline Matrix realization_unitary(const FiniteCover &cover, const GroupRep &chi) {
    return realization_unitary(cover, chi, constrained_space(cover, chi));
}

// U^{-1} psi (x) = U(h) psi(tau x) with x h = sigma(tau x), on the full
// function space X~ -> C^d.
inline Matrix inverse_realization(const FiniteCover &cover, const GroupRep &chi) {
    const Index d = chi.dimension();
    Matrix v = Matrix::Zero(cover.total() * d, cover.base() * d);
    for (int x = 0; x < cover.total(); ++x)
        v.block(x * d, cover.project(x) * d, d, d) = chi(cover.transport(x));
    return v;
}

struct CensusSector {
    std::string label;
    Index irrep_dimension = 0;
    Index carrier_dimension = 0;
    // dim of the commutant of the image; 1 means irreducible
    Index commutant_dimension = 0;
    double leakage = 0.0;
    double realization_residual = 0.0;
    double unitarity_residual = 0.0;
};

struct CensusReport {
    int total_points = 0;
    int base_points = 0;
    int group_order = 0;
    int kernels_checked = 0;
    std::vector<CensusSector> sectors;
    Index dimension_square_sum = 0;
    Index invariant_kernel_dimension = 0;
    // largest intertwiner space between distinct sectors; 0 means pairwise inequivalent
    Index cross_intertwiner_dimension = 0;
    // defining action on L^2(X~) against the sum of sectors with multiplicity
    double completeness_mismatch = 0.0;
    // spectra with a randomized section against the canonical one
    double section_mismatch = 0.0;

    Index expected_kernel_dimension() const {
        return static_cast<Index>(base_points) * base_points * group_order;
    }
    double max_residual() const {
        double r = std::max(completeness_mismatch, section_mismatch);
        for (const auto &s : sectors)
            r = std::max({r, s.leakage, s.realization_residual, s.unitarity_residual});
        return r;
    }
    bool consistent() const {
        bool irreducible = std::all_of(sectors.begin(), sectors.end(),
                                       [](const CensusSector &s) { return s.commutant_dimension == 1; });
        return irreducible && cross_intertwiner_dimension == 0 &&
               dimension_square_sum == invariant_kernel_dimension &&
               invariant_kernel_dimension == expected_kernel_dimension() && max_residual() < 1e-9;
    }
};

// Sector census at finite scale: irreducibility and pairwise
// inequivalence of the induced sectors, the dimension identity, completeness
// against the defining action, and section independence of the realization.
inline CensusReport sector_census(const FiniteCover &cover, std::uint64_t seed = 1, int kernels = 50,
                                  Index cap = kDefaultCoverCap) {
    if (cover.total() > cap)
        throw ResourceError("sector_census: cover has " + std::to_string(cover.total()) + " points, cap is " +
                            std::to_string(cap));
    std::mt19937_64 rng(seed);
    const auto reps = irreducible_reps(cover.group(), seed);
    const FiniteCover shuffled = cover.with_random_section(rng);

    CensusReport report;
    report.total_points = cover.total();
    report.base_points = cover.base();
    report.group_order = cover.group().order();
    report.kernels_checked = kernels;
    report.invariant_kernel_dimension = invariant_kernel_dimension(cover);

    std::vector<Matrix> bases;
    for (const auto &chi : reps)
        bases.push_back(constrained_space(cover, chi));

    // A few generic kernels generate the whole invariant algebra; their
    // commutant contains the commutant of the image, so scalars here certify
    // irreducibility, and a zero intertwiner space certifies inequivalence.
    std::vector<Matrix> generic;
    for (int k = 0; k < 3; ++k)
        generic.push_back(random_invariant_kernel(cover, rng));
    std::vector<std::vector<Matrix>> images(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
        for (const auto &a : generic)
            images[c].push_back(constrained_action(cover, a, reps[c], bases[c]));

    for (std::size_t c = 0; c < reps.size(); ++c) {
        CensusSector s;
        s.label = reps[c].label;
        s.irrep_dimension = reps[c].dimension();
        s.carrier_dimension = bases[c].cols();
        s.commutant_dimension = static_cast<Index>(linalg::commutant(images[c], s.carrier_dimension).size());
        report.dimension_square_sum += s.carrier_dimension * s.carrier_dimension;
        const Matrix u = realization_unitary(cover, reps[c], bases[c]);
        const Matrix u2 = realization_unitary(shuffled, reps[c], bases[c]);
        s.unitarity_residual = std::max(linalg::unitarity_residual(u), linalg::unitarity_residual(u2));
        report.sectors.push_back(std::move(s));
    }
    for (std::size_t c = 0; c < reps.size(); ++c)
        for (std::size_t c2 = c + 1; c2 < reps.size(); ++c2) {
            const Index dim = static_cast<Index>(linalg::intertwiners(images[c], images[c2]).size());
            report.cross_intertwiner_dimension = std::max(report.cross_intertwiner_dimension, dim);
        }

    for (int k = 0; k < kernels; ++k) {
        const Matrix a = random_invariant_kernel(cover, rng, k % 2 == 0);
        for (std::size_t c = 0; c < reps.size(); ++c) {
            auto &s = report.sectors[c];
            const Matrix pi = constrained_action(cover, a, reps[c], bases[c]);
            s.leakage = std::max(s.leakage, constrained_leakage(cover, a, reps[c], bases[c]));
            for (const FiniteCover *cv : {&cover, &shuffled}) {
                const Matrix u = realization_unitary(*cv, reps[c], bases[c]);
                s.realization_residual =
                    std::max(s.realization_residual, linalg::max_abs(u * pi * u.adjoint() - section_action(*cv, a, reps[c])));
            }
            report.section_mismatch =
                std::max(report.section_mismatch,
                         linalg::spectral_mismatch(linalg::eigenvalues(section_action(cover, a, reps[c])),
                                                   linalg::eigenvalues(section_action(shuffled, a, reps[c]))));
        }
    }

    for (int k = 0; k < 20; ++k) {
        const Matrix a = random_invariant_kernel(cover, rng, true);
        std::vector<double> pooled;
        for (std::size_t c = 0; c < reps.size(); ++c) {
            const auto ev = linalg::hermitian_spectrum(constrained_action(cover, a, reps[c], bases[c]));
            for (Index r = 0; r < reps[c].dimension(); ++r)
                pooled.insert(pooled.end(), ev.begin(), ev.end());
        }
        std::sort(pooled.begin(), pooled.end());
        const auto full = linalg::hermitian_spectrum(a);
        if (pooled.size() != full.size()) {
            report.completeness_mismatch = std::numeric_limits<double>::infinity();
            break;
        }
        for (std::size_t i = 0; i < full.size(); ++i)
            report.completeness_mismatch = std::max(report.completeness_mismatch, std::abs(full[i] - pooled[i]));
    }
    return report;
}

} // namespace sector_kit
