// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "sector_kit/circle_theta.hpp"
#include "sector_kit/cover_quant.hpp"
#include "sector_kit/parastat_equiv.hpp"
#include "sector_kit/permgroup.hpp"
#include "sector_kit/tensor_rep.hpp"

using namespace sector_kit;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void expect(bool ok, const std::string &what) {
        if (!ok) {
            passed = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

std::string num(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

// U(i j) built slot by slot, independent of permutation_operator.
Matrix swap_slots(int m, int n, int i, int j) {
    const TensorSpace space(m, n);
    Matrix u = Matrix::Zero(space.dimension(), space.dimension());
    for (Index f = 0; f < space.dimension(); ++f) {
        auto d = space.digits(f);
        std::swap(d[static_cast<std::size_t>(i - 1)], d[static_cast<std::size_t>(j - 1)]);
        u(space.flat(d), f) = 1.0;
    }
    return u;
}

// Weyl dimension of the GL(m) irrep with highest weight lambda.
Index weyl_dimension(const Partition &shape, int m) {
    if (shape.length() > m)
        return 0;
    std::vector<int> l(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < shape.length(); ++i)
        l[static_cast<std::size_t>(i)] = shape[i];
    double numerator = 1.0, denominator = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            numerator *= l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)] + j - i;
            denominator *= j - i;
        }
    return static_cast<Index>(std::llround(numerator / denominator));
}

Outcome young_goldens() {
    Outcome o;
    double worst = 0.0, worst_idem = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const Matrix id2 = linalg::identity(m * m);
        const Matrix s12 = swap_slots(m, 2, 1, 2);
        const Matrix ps = young_projector(Tableau({{1, 2}}), m);
        const Matrix pa = young_projector(Tableau({{1}, {2}}), m);
        worst = std::max({worst, linalg::max_abs(ps - 0.5 * (id2 + s12)), linalg::max_abs(pa - 0.5 * (id2 - s12))});
        worst_idem = std::max({worst_idem, linalg::idempotence_residual(ps), linalg::idempotence_residual(pa)});

        const Matrix id3 = linalg::identity(m * m * m);
        const Matrix u12 = swap_slots(m, 3, 1, 2), u13 = swap_slots(m, 3, 1, 3);
        const Matrix p = young_projector(Tableau({{1, 2}, {3}}), m);
        const Matrix pp = young_projector(Tableau({{1, 3}, {2}}), m);
        worst = std::max({worst, linalg::max_abs(p - (id3 - u13) * (id3 + u12) / 3.0),
                          linalg::max_abs(pp - (id3 - u12) * (id3 + u13) / 3.0)});
        worst_idem = std::max({worst_idem, linalg::idempotence_residual(p), linalg::idempotence_residual(pp)});
    }
    o.expect(worst < 1e-12, "entrywise error " + num(worst));
    o.expect(worst_idem < 1e-10, "idempotence " + num(worst_idem));
    if (o.passed)
        o.detail = "max entry error " + num(worst) + ", idempotence " + num(worst_idem);
    return o;
}

Outcome schur_weyl_census() {
    Outcome o;
    int cases = 0;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 4; ++n) {
            Index dim = 1;
            for (int k = 0; k < n; ++k)
                dim *= m;
            if (dim > 81)
                continue;
            ++cases;
            const auto r = sector_decomposition(m, n);
            const std::string tag = "(m=" + std::to_string(m) + ",N=" + std::to_string(n) + ")";
            o.expect(r.rank_sum == dim, tag + " rank sum " + std::to_string(r.rank_sum));
            Index weyl_sq = 0;
            for (const auto &s : r.sectors) {
                const Index d = weyl_dimension(s.shape, m);
                weyl_sq += d * d;
                o.expect(s.rank == s.irrep_dimension * d, tag + " rank of " + s.shape.to_string());
                // a shape with more rows than m does not occur
                o.expect((s.shape.length() > m) == (s.rank == 0), tag + " occupancy of " + s.shape.to_string());
            }
            o.expect(r.commutant_dimension == weyl_sq,
                     tag + " commutant " + std::to_string(r.commutant_dimension) + " vs " + std::to_string(weyl_sq));
            if (m == 2 && n == 2)
                o.expect(r.commutant_dimension == 10, "commutant at (2,2) is not 10");
            if (m == 2 && n == 3)
                o.expect(r.commutant_dimension == 20, "commutant at (2,3) is not 20");
            o.expect(r.max_residual() < 1e-10, tag + " residual " + num(r.max_residual()));
        }
    if (o.passed)
        o.detail = std::to_string(cases) + " (m,N) cases";
    return o;
}

Outcome parafermion_fidelity() {
    Outcome o;
    const auto rep = irrep(Partition({2, 1}));
    std::vector<Matrix> ours, displayed;
    for (const auto &p : all_permutations(3)) {
        ours.push_back(rep.matrix(p));
        displayed.push_back(parafermion_matrix(p));
    }
    const auto v = linalg::intertwiners(ours, displayed);
    o.expect(v.size() == 1, "intertwiner space dimension " + std::to_string(v.size()));
    double residual = 1.0;
    if (v.size() == 1) {
        const Matrix u = linalg::polar_unitary(v[0]);
        residual = intertwining_residual(u, ours, displayed);
    }
    o.expect(residual < 1e-10, "intertwiner residual " + num(residual));

    const Matrix b = parafermion_basis();
    double leak = 0.0, block = 0.0;
    for (const auto &p : all_permutations(3)) {
        const Matrix r = b.adjoint() * natural_action(p) * b;
        leak = std::max({leak, r.block(0, 1, 1, 2).cwiseAbs().maxCoeff(), r.block(1, 0, 2, 1).cwiseAbs().maxCoeff()});
        block = std::max({block, std::abs(r(0, 0) - 1.0), linalg::max_abs(r.block(1, 1, 2, 2) - parafermion_matrix(p))});
    }
    o.expect(leak < 1e-12, "off-block leakage " + num(leak));
    o.expect(block < 1e-12, "diagonal blocks differ from trivial + U_P by " + num(block));
    if (o.passed)
        o.detail = "intertwiner residual " + num(residual) + ", off-block leakage " + num(leak);
    return o;
}

Outcome paraparticle_equivalences() {
    Outcome o;
    double worst = 0.0;
    for (int m : {2, 3}) {
        for (const auto &cert : {verify_prop2(m), verify_prop3(m)}) {
            const std::string tag = cert.name + " m=" + std::to_string(m);
            o.expect(cert.passed(), tag + " failed: " + cert.equivalence.reason);
            o.expect(cert.equivalence.residual < 1e-10, tag + " residual " + num(cert.equivalence.residual));
            o.expect(cert.equivalence.unitarity_residual < 1e-10, tag + " intertwiner not unitary");
            worst = std::max(worst, cert.max_residual());
        }
    }
    const auto basis = commutant_basis(2, 2);
    const auto bosons = realization_from_projector("bosons", central_projector(Partition({2}), 2));
    const auto fermions = realization_from_projector("fermions", central_projector(Partition({1, 1}), 2));
    const auto control = general_equivalence(bosons, fermions, basis);
    o.expect(!control.equivalent, "bosons and fermions at m=2, N=2 certified equivalent");
    if (o.passed)
        o.detail = "max residual " + num(worst) + "; bosons vs fermions: " + control.reason;
    return o;
}

Outcome cover_census() {
    Outcome o;
    std::string summary;
    for (int q : {3, 4})
        for (int n : {2, 3}) {
            const auto cover = symmetric_cover(q, n);
            const auto r = sector_census(cover, 1, 50);
            const std::string tag = "|Q|=" + std::to_string(q) + ",N=" + std::to_string(n);
            o.expect(r.sectors.size() == enumerate_partitions(n).size(), tag + " sector count");
            for (const auto &s : r.sectors) {
                o.expect(s.commutant_dimension == 1, tag + " " + s.label + " commutant not scalar");
                o.expect(s.carrier_dimension == r.base_points * s.irrep_dimension, tag + " " + s.label + " carrier");
                o.expect(s.realization_residual < 1e-10, tag + " realization residual " + num(s.realization_residual));
            }
            const Index expected = static_cast<Index>(r.base_points) * r.base_points * r.group_order;
            o.expect(r.dimension_square_sum == expected, tag + " dimension identity");
            o.expect(r.invariant_kernel_dimension == expected, tag + " invariant kernel dimension");
            if (q == 3 && n == 2)
                o.expect(r.dimension_square_sum == 18, tag + " sum is not 18");
            if (q == 4 && n == 3)
                o.expect(r.dimension_square_sum == 96, tag + " sum is not 96");
            o.expect(r.kernels_checked >= 50, tag + " too few kernels");
            o.expect(r.section_mismatch < 1e-10, tag + " section dependence " + num(r.section_mismatch));
            o.expect(r.consistent(), tag + " census inconsistent");
            summary += (summary.empty() ? "" : ", ") + tag + ": " + std::to_string(r.dimension_square_sum);
        }
    if (o.passed)
        o.detail = "sum of squares " + summary;
    return o;
}

Outcome theta_spectrum() {
    Outcome o;
    const double pi = std::numbers::pi;
    double spec = 0.0, order = 1e9, gauge = 0.0;
    for (double theta : {0.0, pi / 2, pi, 3.0}) {
        const ThetaSector s(theta);
        spec = std::max(spec, max_error(momentum_spectrum(s, 128, 16)));
        order = std::min(order, convergence_order(s, {64, 128, 256}, 4).order);
        gauge = std::max(gauge, gauge_equivalence_check(s, 256).residual);
    }
    o.expect(spec < 1e-9, "spectral error " + num(spec));
    o.expect(order >= 1.9, "convergence order " + num(order));
    o.expect(gauge < 1e-8, "gauge residual " + num(gauge));
    if (o.passed)
        o.detail = "spectral error " + num(spec) + ", order " + num(order) + ", gauge residual " + num(gauge);
    return o;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_reproduction() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path out = fs::path(SECTOR_KIT_BINARY_DIR) / "acceptance_reproduce";
    const std::string cmd = std::string("bash '") + SECTOR_KIT_REPRODUCE_SCRIPT + "' '" + SECTOR_KIT_CLI + "' '" +
                            out.string() + "' > /dev/null";
    const int status = std::system(cmd.c_str());
    o.expect(status == 0, "reproduction script exited with status " + std::to_string(status));
    int files = 0;
    if (fs::exists(out / "run1"))
        for (const auto &e : fs::directory_iterator(out / "run1")) {
            ++files;
            const fs::path twin = out / "run2" / e.path().filename();
            o.expect(fs::exists(twin) && slurp(e.path()) == slurp(twin), e.path().filename().string() + " differs");
        }
    o.expect(files > 0, "no outputs produced");
    if (o.passed)
        o.detail = std::to_string(files) + " outputs byte-identical";
    return o;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Young-projector goldens", 1, young_goldens},
        {2, "Schur-Weyl census", 30, schur_weyl_census},
        {3, "S3 parafermion fidelity", 1e9, parafermion_fidelity},
        {4, "paraparticle equivalences", 60, paraparticle_equivalences},
        {5, "cover sector census", 1e9, cover_census},
        {6, "theta spectrum", 10, theta_spectrum},
        {7, "CLI reproduction", 300, cli_reproduction},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s)
            o.expect(false, "took " + num(secs) + " s, budget " + num(c.budget_s) + " s");
        failures += o.passed ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs);
    }
    return failures == 0 ? 0 : 1;
}
