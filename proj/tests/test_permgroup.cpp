#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "sector_kit/permgroup.hpp"

using namespace sector_kit;
using linalg::Matrix;

namespace {

// Oracle: every composition of n (ordered), keeping the non-increasing ones.
std::set<std::vector<int>> partitions_by_compositions(int n) {
    std::set<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < n - 1; ++i) {
            if (mask & (1u << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        if (std::is_sorted(parts.rbegin(), parts.rend()))
            out.insert(parts);
    }
    return out;
}

// Oracle: all N! fillings of the frame, filtered by the row/column rule.
std::size_t standard_fillings(const Partition &shape) {
    const int n = shape.total();
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    std::size_t count = 0;
    do {
        std::vector<std::vector<int>> rows;
        std::size_t k = 0;
        for (int len : shape.parts()) {
            rows.emplace_back(labels.begin() + static_cast<long>(k), labels.begin() + static_cast<long>(k + len));
            k += static_cast<std::size_t>(len);
        }
        if (Tableau(rows).is_standard())
            ++count;
    } while (std::next_permutation(labels.begin(), labels.end()));
    return count;
}

Matrix explicit_up(const std::string &cycle) {
    const double s3 = std::sqrt(3.0);
    Matrix m(2, 2);
    if (cycle == "(12)")
        m << 0.5, -0.5 * s3, -0.5 * s3, -0.5;
    else if (cycle == "(13)")
        m << 0.5, 0.5 * s3, 0.5 * s3, -0.5;
    else
        m << -1, 0, 0, 1;
    return m;
}

} // namespace

TEST(Permutation, CompositionAppliesRightFactorFirst) {
    const auto a = Permutation::from_cycles(3, "(12)");
    const auto b = Permutation::from_cycles(3, "(23)");
    const auto ab = a * b;
    // b sends 0 -> 0, then a sends 0 -> 1
    EXPECT_EQ(ab(0), 1);
    EXPECT_EQ(ab(1), 2);
    EXPECT_EQ(ab(2), 0);
    EXPECT_EQ(ab.to_string(), "(123)");
    EXPECT_EQ(Permutation::from_cycles(3, "(12)(23)"), ab);
}

TEST(Permutation, ParsingAndPrinting) {
    EXPECT_TRUE(Permutation::from_cycles(4, "e").is_identity());
    EXPECT_EQ(Permutation::from_cycles(4, "(1 3)(2 4)").to_string(), "(13)(24)");
    EXPECT_EQ(Permutation::from_cycles(4, "(1,2,3)").to_string(), "(123)");
    EXPECT_EQ(Permutation::from_one_based({2, 1, 3}), Permutation::transposition(3, 1, 2));
    EXPECT_THROW(Permutation::from_cycles(3, "(14)"), DomainError);
    EXPECT_THROW(Permutation::from_cycles(3, "12"), DomainError);
    EXPECT_THROW(Permutation({0, 0, 1}), DomainError);
}

TEST(Permutation, SignIsAHomomorphism) {
    const auto perms = all_permutations(4);
    for (const auto &p : perms)
        for (const auto &q : perms)
            EXPECT_EQ((p * q).sign(), p.sign() * q.sign());
    EXPECT_EQ(Permutation::from_cycles(4, "(12)").sign(), -1);
    EXPECT_EQ(Permutation::from_cycles(4, "(123)").sign(), 1);
}

TEST(Permutation, AdjacentWordReproducesThePermutation) {
    for (const auto &p : all_permutations(5)) {
        Permutation q = Permutation::identity(5);
        for (int i : p.adjacent_word())
            q = q * Permutation::transposition(5, i + 1, i + 2);
        EXPECT_EQ(q, p);
        EXPECT_EQ(static_cast<int>(p.adjacent_word().size()), p.inversions());
    }
}

TEST(EnumeratePartitions, SmallCases) {
    const auto two = enumerate_partitions(2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].parts(), (std::vector<int>{2}));
    EXPECT_EQ(two[1].parts(), (std::vector<int>{1, 1}));
    const auto one = enumerate_partitions(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].parts(), (std::vector<int>{1}));
    EXPECT_EQ(enumerate_partitions(4).size(), 5u);
    EXPECT_THROW(enumerate_partitions(0), DomainError);
    EXPECT_THROW(enumerate_partitions(-3), DomainError);
}

TEST(EnumeratePartitions, MatchesCompositionOracleInReverseLexOrder) {
    for (int n = 1; n <= 9; ++n) {
        const auto parts = enumerate_partitions(n);
        const auto oracle = partitions_by_compositions(n);
        ASSERT_EQ(parts.size(), oracle.size()) << "n=" << n;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            EXPECT_TRUE(oracle.count(parts[i].parts()));
            if (i > 0)
                EXPECT_GT(parts[i - 1].parts(), parts[i].parts());
        }
    }
}

TEST(Partition, RejectsMalformed) {
    EXPECT_THROW(Partition({1, 2}), DomainError);
    EXPECT_THROW(Partition({2, 0}), DomainError);
    EXPECT_THROW(Partition(std::vector<int>{}), DomainError);
    EXPECT_EQ(Partition::parse("(2,1)"), Partition({2, 1}));
    EXPECT_EQ(Partition::parse("21"), Partition({2, 1}));
    EXPECT_EQ(Partition::parse("3 1"), Partition({3, 1}));
    EXPECT_EQ(Partition({3, 1}).conjugate(), Partition({2, 1, 1}));
}

TEST(StandardTableaux, Examples) {
    EXPECT_EQ(standard_tableaux(Partition({2, 1})).size(), 2u);
    const auto row = standard_tableaux(Partition({4}));
    ASSERT_EQ(row.size(), 1u);
    EXPECT_EQ(row[0].rows()[0], (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(standard_tableaux(Partition({2, 2})).size(), 2u);
    EXPECT_EQ(standard_fillings(Partition({2, 2})), 2u);
}

TEST(StandardTableaux, CountEqualsHookDimensionUpToSeven) {
    for (int n = 1; n <= 7; ++n)
        for (const auto &shape : enumerate_partitions(n)) {
            const auto tableaux = standard_tableaux(shape);
            EXPECT_EQ(tableaux.size(), hook_dimension(shape)) << shape.to_string();
            for (const auto &t : tableaux)
                EXPECT_TRUE(t.is_standard());
        }
}

TEST(StandardTableaux, MatchBruteForceFillings) {
    for (int n = 1; n <= 6; ++n)
        for (const auto &shape : enumerate_partitions(n))
            EXPECT_EQ(standard_tableaux(shape).size(), standard_fillings(shape)) << shape.to_string();
}

TEST(HookDimension, Examples) {
    EXPECT_EQ(hook_dimension(Partition({2, 1})), 2u);
    EXPECT_EQ(hook_dimension(Partition({1, 1, 1, 1, 1})), 1u);
    EXPECT_EQ(hook_dimension(Partition({3, 2})), 5u);
    EXPECT_EQ(standard_fillings(Partition({3, 2})), 5u);
}

TEST(HookDimension, SquaresSumToGroupOrder) {
    for (int n = 1; n <= 6; ++n) {
        std::uint64_t sum = 0;
        for (const auto &shape : enumerate_partitions(n))
            sum += hook_dimension(shape) * hook_dimension(shape);
        EXPECT_EQ(sum, factorial(n));
    }
}

TEST(RowColGroups, TwoOneTableau) {
    const Tableau t({{1, 2}, {3}});
    const auto g = row_col_groups(t);
    const std::vector<Permutation> row{Permutation::identity(3), Permutation::from_cycles(3, "(12)")};
    const std::vector<Permutation> col{Permutation::identity(3), Permutation::from_cycles(3, "(13)")};
    EXPECT_EQ(std::set<Permutation>(g.row.begin(), g.row.end()), std::set<Permutation>(row.begin(), row.end()));
    EXPECT_EQ(std::set<Permutation>(g.column.begin(), g.column.end()),
              std::set<Permutation>(col.begin(), col.end()));
}

TEST(RowColGroups, SingleRowAndColumn) {
    const auto row = row_col_groups(Tableau({{1, 2, 3, 4}}));
    EXPECT_EQ(row.row.size(), 24u);
    EXPECT_EQ(row.column.size(), 1u);
    const auto col = row_col_groups(Tableau({{1}, {2}, {3}}));
    EXPECT_EQ(col.column.size(), 6u);
    // oracle: permutations of S_3 that preserve the column set {1,2,3} are all of them
    std::size_t preserving = 0;
    for (const auto &p : all_permutations(3)) {
        std::set<int> image;
        for (int i = 0; i < 3; ++i)
            image.insert(p(i));
        preserving += image.size() == 3;
    }
    EXPECT_EQ(col.column.size(), preserving);
}

TEST(RowColGroups, OrdersAndSubgroupClosure) {
    for (const auto &shape : enumerate_partitions(5))
        for (const auto &t : standard_tableaux(shape)) {
            const auto g = row_col_groups(t);
            std::uint64_t row_order = 1, col_order = 1;
            for (int len : shape.parts())
                row_order *= factorial(len);
            const Partition cols = shape.conjugate();
            for (int len : cols.parts())
                col_order *= factorial(len);
            EXPECT_EQ(g.row.size(), row_order);
            EXPECT_EQ(g.column.size(), col_order);
            const std::set<Permutation> rows(g.row.begin(), g.row.end());
            for (const auto &a : g.row)
                for (const auto &b : g.row)
                    EXPECT_TRUE(rows.count(a * b));
        }
}

TEST(Irrep, TrivialAndSignExamples) {
    for (const auto &p : all_permutations(4)) {
        const Matrix triv = irrep(Partition({4})).matrix(p);
        ASSERT_EQ(triv.rows(), 1);
        EXPECT_NEAR(std::abs(triv(0, 0) - 1.0), 0.0, 1e-14);
    }
    const Matrix alt = irrep(Partition({1, 1})).matrix(Permutation::from_cycles(2, "(12)"));
    EXPECT_NEAR(alt(0, 0).real(), -1.0, 1e-14);
}

TEST(Irrep, HomomorphismAndUnitarityThroughFive) {
    for (int n = 1; n <= 5; ++n) {
        const auto perms = all_permutations(n);
        for (const auto &shape : enumerate_partitions(n)) {
            const auto rep = irrep(shape);
            EXPECT_EQ(rep.dimension(), static_cast<linalg::Index>(hook_dimension(shape)));
            std::vector<Matrix> mats;
            for (const auto &p : perms)
                mats.push_back(rep.matrix(p));
            EXPECT_LT(linalg::max_abs(mats.front() - linalg::identity(rep.dimension())), 1e-14);
            double worst = 0.0;
            for (std::size_t a = 0; a < perms.size(); ++a) {
                worst = std::max(worst, linalg::unitarity_residual(mats[a]));
                for (std::size_t b = 0; b < perms.size(); ++b) {
                    const auto ab = perms[a] * perms[b];
                    const auto idx = static_cast<std::size_t>(
                        std::lower_bound(perms.begin(), perms.end(), ab) - perms.begin());
                    worst = std::max(worst, linalg::max_abs(mats[a] * mats[b] - mats[idx]));
                }
            }
            EXPECT_LT(worst, 1e-10) << shape.to_string();
        }
    }
}

TEST(Irrep, HomomorphismOnRandomPairsAtSix) {
    std::mt19937_64 rng(6);
    for (const auto &shape : enumerate_partitions(6)) {
        const auto rep = irrep(shape);
        for (int k = 0; k < 200; ++k) {
            const auto p = random_permutation(6, rng);
            const auto q = random_permutation(6, rng);
            EXPECT_LT(linalg::max_abs(rep.matrix(p) * rep.matrix(q) - rep.matrix(p * q)), 1e-10);
            EXPECT_LT(linalg::unitarity_residual(rep.matrix(p)), 1e-10);
        }
    }
}

TEST(Irrep, IrreducibleByCommutantDimension) {
    for (int n = 2; n <= 5; ++n)
        for (const auto &shape : enumerate_partitions(n)) {
            const auto rep = irrep(shape);
            std::vector<Matrix> gens;
            for (int i = 0; i + 1 < n; ++i)
                gens.push_back(rep.generator(i));
            EXPECT_EQ(linalg::commutant(gens, rep.dimension()).size(), 1u) << shape.to_string();
        }
}

TEST(Irrep, EquivalentToExplicitParafermionMatrices) {
    const auto rep = irrep(Partition({2, 1}));
    std::vector<Matrix> ours, theirs;
    for (const std::string c : {"(12)", "(13)", "(23)"}) {
        ours.push_back(rep.matrix(Permutation::from_cycles(3, c)));
        theirs.push_back(explicit_up(c));
    }
    // (23) is diag(-1, 1) up to a change of basis
    const auto ev = linalg::hermitian_spectrum(ours[2]);
    EXPECT_NEAR(ev[0], -1.0, 1e-12);
    EXPECT_NEAR(ev[1], 1.0, 1e-12);
    const auto v = linalg::intertwiners(ours, theirs);
    ASSERT_EQ(v.size(), 1u);
    const Matrix u = linalg::polar_unitary(v[0]);
    for (std::size_t k = 0; k < ours.size(); ++k)
        EXPECT_LT(linalg::max_abs(u * ours[k] - theirs[k] * u), 1e-10);
}

TEST(Character, Examples) {
    const Partition p21({2, 1});
    EXPECT_NEAR(character(p21, Permutation::identity(3)), 2.0, 1e-14);
    EXPECT_NEAR(character(p21, Permutation::from_cycles(3, "(23)")), 0.0, 1e-14);
    for (const auto &p : all_permutations(3))
        EXPECT_NEAR(character(Partition({3}), p), 1.0, 1e-14);
}

TEST(Character, OrthogonalityThroughFive) {
    for (int n = 1; n <= 5; ++n) {
        const auto perms = all_permutations(n);
        const auto shapes = enumerate_partitions(n);
        std::vector<std::vector<double>> table;
        for (const auto &s : shapes) {
            const auto rep = irrep(s);
            std::vector<double> row;
            for (const auto &p : perms)
                row.push_back(rep.character(p));
            table.push_back(row);
        }
        for (std::size_t a = 0; a < shapes.size(); ++a)
            for (std::size_t b = 0; b < shapes.size(); ++b) {
                double sum = 0.0;
                for (std::size_t k = 0; k < perms.size(); ++k)
                    sum += table[a][k] * table[b][k];
                EXPECT_NEAR(sum / static_cast<double>(perms.size()), a == b ? 1.0 : 0.0, 1e-10);
            }
    }
}

TEST(Character, ClassFunctionAndSign) {
    for (int n = 1; n <= 5; ++n) {
        std::vector<int> ones(static_cast<std::size_t>(n), 1);
        const auto sign_rep = irrep(Partition(ones));
        const auto perms = all_permutations(n);
        for (const auto &p : perms)
            EXPECT_EQ(sign_rep.character(p), static_cast<double>(p.sign()));
        for (const auto &shape : enumerate_partitions(n)) {
            const auto rep = irrep(shape);
            std::map<std::vector<int>, double> by_class;
            for (const auto &p : perms) {
                const double chi = rep.character(p);
                const auto [it, fresh] = by_class.emplace(p.cycle_type(), chi);
                if (!fresh)
                    EXPECT_NEAR(it->second, chi, 1e-10);
            }
        }
    }
}
