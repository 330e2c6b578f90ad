// sector-kit: batch front-end over the library modules.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sector_kit/json_io.hpp"

namespace {

using namespace sector_kit;
using json_io::json;

enum ExitCode { kOk = 0, kUsage = 2, kResource = 3, kConsistency = 4 };

struct RunConfig {
    std::string subcommand;
    int m = 2;
    int n = 0;
    std::string lambda;
    std::string theta = "0";
    int grid = 128;
    int q_size = 0;
    std::string cover_file;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Result {
    json report;
    bool passed = true;
    std::string csv;
};

// "3", "-1.5", "pi", "pi/2", "3pi/4", "2*pi".
double parse_theta(const std::string &text) {
    static const std::regex re(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(\*?\s*pi)?\s*(?:/\s*(\d+\.?\d*))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched) || (text.find_first_not_of(" \t") == std::string::npos))
        throw UsageError("--theta: cannot parse '" + text + "'");
    double v = 1.0;
    if (m[1].matched) {
        const std::string head = m[1].str();
        v = (head == "-" || head == "+") ? (head == "-" ? -1.0 : 1.0) : std::stod(head);
    }
    if (m[2].matched)
        v *= std::numbers::pi;
    if (m[3].matched) {
        const double d = std::stod(m[3].str());
        if (d == 0.0)
            throw UsageError("--theta: division by zero");
        v /= d;
    }
    return v;
}

void require(bool ok, const std::string &message) {
    if (!ok)
        throw UsageError(message);
}

Result run_tableaux(const RunConfig &c) {
    require(c.n >= 1 && c.n <= 8, "tableaux: --N must lie in 1..8");
    Result r{json_io::tableaux_report(c.n)};
    r.passed = r.report["identity_holds"].get<bool>();
    return r;
}

Result run_sectors(const RunConfig &c) {
    require(c.m >= 1, "sectors: --m must be at least 1");
    require(c.n >= 1 && c.n <= 8, "sectors: --N must lie in 1..8");
    const SectorReport s = sector_decomposition(c.m, c.n);
    Result r{json_io::sector_report(s)};
    r.passed = s.consistent();
    if (!c.lambda.empty()) {
        const Partition shape = Partition::parse(c.lambda);
        require(shape.total() == c.n, "sectors: --lambda must be a partition of N");
        json y = json_io::partition(shape);
        y["young_projectors"] = json_io::young_projector_report(shape, c.m);
        bool ok = true;
        for (const auto &e : y["young_projectors"])
            ok = ok && e["idempotence_residual"].get<double>() < linalg::kIdentityTolerance;
        r.passed = r.passed && ok;
        r.report["lambda"] = std::move(y);
    }
    return r;
}

Result run_equiv(const RunConfig &c) {
    require(c.n == 2 || c.n == 3, "equiv: --N must be 2 or 3");
    require(c.m >= 2, "equiv: --m must be at least 2");
    const PropositionCertificate p = c.n == 2 ? verify_prop2(c.m, c.seed) : verify_prop3(c.m, c.seed);
    Result r{json_io::proposition(p)};
    r.passed = p.passed();
    if (c.n == 2) {
        // control: bosons and fermions of two particles must not be equivalent
        const auto basis = commutant_basis(c.m, 2);
        const auto b = realization_from_projector("bosons", central_projector(Partition({2}), c.m));
        const auto f = realization_from_projector("fermions", central_projector(Partition({1, 1}), c.m));
        const auto cert = general_equivalence(b, f, basis, c.seed);
        r.report["control"] = {{"pair", "bosons vs fermions"}, {"certificate", json_io::certificate(cert, false)}};
        r.passed = r.passed && !cert.equivalent;
    }
    r.report["passed"] = r.passed;
    return r;
}

Result run_cover(const RunConfig &c) {
    std::optional<FiniteCover> cover;
    json kernels;
    if (!c.cover_file.empty()) {
        const json j = json_io::load_file(c.cover_file);
        cover.emplace(json_io::cover_from_json(j));
        if (j.contains("kernels"))
            kernels = j.at("kernels");
    } else {
        require(c.q_size >= 1, "cover: --q-size or --cover is required");
        require(c.n >= 1 && c.n <= 8, "cover: --N must lie in 1..8");
        cover.emplace(symmetric_cover(c.q_size, c.n));
    }
    const CensusReport census = sector_census(*cover, c.seed);
    Result r{json_io::census(census)};
    if (c.cover_file.empty()) {
        r.report["Q_size"] = c.q_size;
        r.report["N"] = c.n;
    }
    r.report["seed"] = c.seed;
    r.passed = census.consistent();
    if (!kernels.is_null()) {
        if (!kernels.is_array())
            throw DomainError("cover: \"kernels\" must be a list of matrices");
        const auto reps = irreducible_reps(cover->group(), c.seed);
        json list = json::array();
        for (const auto &rows : kernels) {
            const Matrix a = json_io::kernel_from_json(rows, *cover);
            require_invariant(*cover, a);
            json sectors = json::array();
            for (const auto &chi : reps) {
                const Matrix basis = constrained_space(*cover, chi);
                const Matrix pi = constrained_action(*cover, a, chi, basis);
                const Matrix u = realization_unitary(*cover, chi, basis);
                const double res = linalg::max_abs(u * pi * u.adjoint() - section_action(*cover, a, chi));
                const double leak = constrained_leakage(*cover, a, chi, basis);
                r.passed = r.passed && res < 1e-9 && leak < 1e-9;
                sectors.push_back({{"label", chi.label}, {"realization_residual", res}, {"leakage", leak}});
            }
            list.push_back({{"sectors", std::move(sectors)}});
        }
        r.report["user_kernels"] = std::move(list);
    }
    r.report["passed"] = r.passed;
    return r;
}

std::string csv_number(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

Result run_circle(const RunConfig &c) {
    require(c.grid >= kMinGrid, "circle: --grid must be at least " + std::to_string(kMinGrid));
    const ThetaSector sector(parse_theta(c.theta));
    const int n = c.grid;
    const int k_max = std::min(16, n / 4);
    const auto spectral = momentum_spectrum(sector, n, k_max, Discretization::spectral);
    const auto central = momentum_spectrum(sector, n, k_max, Discretization::central_difference);
    const auto gauge_s = gauge_equivalence_check(sector, n, Discretization::spectral);
    const auto gauge_c = gauge_equivalence_check(sector, n, Discretization::central_difference);
    const auto conv = convergence_order(sector, {64, 128, 256}, 4);
    const auto trans = translation_report(sector, n);

    Result r{json_io::header("circle")};
    r.report["theta"] = sector.theta();
    r.report["n"] = n;
    r.report["k_max"] = k_max;
    r.report["spectral"] = {{"max_error", max_error(spectral)}, {"spectrum", json_io::spectrum(spectral)}};
    r.report["central_difference"] = {{"max_error", max_error(central)}, {"spectrum", json_io::spectrum(central)}};
    r.report["gauge"] = json::array({json_io::gauge(gauge_s), json_io::gauge(gauge_c)});
    r.report["convergence"] = json_io::convergence(conv);
    r.report["translation"] = json_io::translation(trans);
    const json checks = {{"spectral_error_below_1e-9", max_error(spectral) < 1e-9},
                         {"gauge_residual_below_1e-8", gauge_s.residual < 1e-8},
                         {"central_difference_order_at_least_1.9", conv.order >= 1.9},
                         {"translation_unitary", trans.unitarity_residual < 1e-12}};
    r.passed = std::all_of(checks.begin(), checks.end(), [](const json &v) { return v.get<bool>(); });
    r.report["checks"] = checks;
    r.report["passed"] = r.passed;

    std::ostringstream csv;
    csv << "theta,discretization,k,eigenvalue,reference,error\n";
    for (const auto *s : {&spectral, &central})
        for (const auto &e : *s)
            csv << csv_number(sector.theta()) << ',' << (s == &spectral ? "spectral" : "central_difference") << ','
                << e.k << ',' << csv_number(e.eigenvalue) << ',' << csv_number(e.reference) << ','
                << csv_number(e.error()) << '\n';
    r.csv = csv.str();
    return r;
}

// Scalars as "path = value" lines; arrays of scalars stay inline.
void flatten(const json &j, const std::string &path, std::ostream &os) {
    const bool scalar_array =
        j.is_array() && std::all_of(j.begin(), j.end(), [](const json &v) { return v.is_primitive(); });
    if (j.is_object()) {
        for (const auto &[k, v] : j.items())
            flatten(v, path.empty() ? k : path + "." + k, os);
    } else if (j.is_array() && !scalar_array) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << " = " << j.dump() << '\n';
    }
}

std::string render(const Result &r, const std::string &format, const std::string &subcommand) {
    if (format == "json")
        return r.report.dump(2) + "\n";
    if (format == "pretty") {
        std::ostringstream os;
        flatten(r.report, "", os);
        return os.str();
    }
    if (subcommand != "circle")
        throw UsageError("--format csv is only available for circle");
    return r.csv;
}

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + out);
    f << text;
}

int fail(const std::string &kind, const std::string &message, int code, const std::string &out) {
    json err = {{"schema", json_io::kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
    try {
        emit(err.dump(2) + "\n", out);
    } catch (...) {
        std::cout << err.dump(2) << '\n';
    }
    return code;
}

void add_common(CLI::App *sub, RunConfig &c) {
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--format", c.format, "json | pretty | csv")->check(CLI::IsMember({"json", "pretty", "csv"}));
    sub->add_option("--out", c.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char **argv) {
    RunConfig c;
    CLI::App app{"sector-kit: superselection sectors of identical particles"};
    app.require_subcommand(1);

    auto *tab = app.add_subcommand("tableaux", "partitions, standard tableaux and hook dimensions of N");
    tab->add_option("--N", c.n, "number of particles (1..8)")->required();
    add_common(tab, c);

    auto *sec = app.add_subcommand("sectors", "isotypic decomposition of (C^m)^N");
    sec->add_option("--m", c.m, "single-particle dimension")->required();
    sec->add_option("--N", c.n, "number of particles")->required();
    sec->add_option("--lambda", c.lambda, "also report the Young projectors of this shape, e.g. 2,1");
    add_common(sec, c);

    auto *eq = app.add_subcommand("equiv", "paraparticle vs internal-label equivalence certificate");
    eq->add_option("--m", c.m, "single-particle dimension (>= 2)")->required();
    eq->add_option("--N", c.n, "2 or 3")->required();
    add_common(eq, c);

    auto *cov = app.add_subcommand("cover", "sector census of a finite principal cover");
    cov->add_option("--q-size", c.q_size, "number of single-particle points");
    cov->add_option("--N", c.n, "number of particles");
    cov->add_option("--cover", c.cover_file, "cover description (JSON)");
    add_common(cov, c);

    auto *circ = app.add_subcommand("circle", "theta-twisted momentum on a circle");
    circ->add_option("--theta", c.theta, "sector angle, e.g. 0, 3, pi/2");
    circ->add_option("--grid", c.grid, "number of grid points");
    add_common(circ, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::string out;
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--out")
                out = argv[i + 1];
        return fail("usage", e.what(), kUsage, out);
    }
    for (auto *s : app.get_subcommands())
        c.subcommand = s->get_name();

    try {
        if (c.format == "csv" && c.subcommand != "circle")
            throw UsageError("--format csv is only available for circle");
        Result r;
        if (c.subcommand == "tableaux")
            r = run_tableaux(c);
        else if (c.subcommand == "sectors")
            r = run_sectors(c);
        else if (c.subcommand == "equiv")
            r = run_equiv(c);
        else if (c.subcommand == "cover")
            r = run_cover(c);
        else
            r = run_circle(c);
        emit(render(r, c.format, c.subcommand), c.out);
        if (!r.passed) {
            std::cerr << "sector-kit: residual checks failed\n";
            return kConsistency;
        }
        return kOk;
    } catch (const UsageError &e) {
        return fail("usage", e.what(), kUsage, c.out);
    } catch (const DomainError &e) {
        return fail("domain", e.what(), kUsage, c.out);
    } catch (const ResourceError &e) {
        return fail("resource", e.what(), kResource, c.out);
    } catch (const ConsistencyError &e) {
        return fail("consistency", e.what(), kConsistency, c.out);
    }
}
