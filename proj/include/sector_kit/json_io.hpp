#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "circle_theta.hpp"
#include "cover_quant.hpp"
#include "errors.hpp"
#include "parastat_equiv.hpp"
#include "permgroup.hpp"
#include "tensor_rep.hpp"

namespace sector_kit::json_io {

using json = nlohmann::ordered_json;

inline constexpr const char *kSchema = "sector-kit/1";

inline json header(const std::string &command) { return json{{"schema", kSchema}, {"command", command}}; }

inline json complex_value(Complex z) { return json::array({z.real(), z.imag()}); }

// Rows of [re, im] pairs.
inline json matrix(const Matrix &m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_value(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json partition(const Partition &p) { return json{{"lambda", p.to_string()}, {"parts", p.parts()}}; }

// ---- permgroup -------------------------------------------------------

inline json tableaux_report(int n) {
    json out = header("tableaux");
    out["N"] = n;
    json parts = json::array();
    std::uint64_t square_sum = 0;
    for (const auto &shape : enumerate_partitions(n)) {
        const auto tabs = standard_tableaux(shape);
        const std::uint64_t count = tabs.size();
        json entry = partition(shape);
        entry["standard_tableaux"] = count;
        entry["hook_dimension"] = hook_dimension(shape);
        json list = json::array();
        for (const auto &t : tabs)
            list.push_back(t.to_string());
        entry["tableaux"] = std::move(list);
        parts.push_back(std::move(entry));
        square_sum += count * count;
    }
    out["partitions"] = std::move(parts);
    out["sum_squares"] = square_sum;
    out["factorial"] = factorial(n);
    out["identity_holds"] = square_sum == factorial(n);
    return out;
}

// ---- tensor_rep ------------------------------------------------------

inline json sector_report(const SectorReport &r) {
    json out = header("sectors");
    out["m"] = r.m;
    out["N"] = r.n;
    out["dimension"] = r.dimension;
    json sectors = json::array();
    for (const auto &s : r.sectors) {
        json e = partition(s.shape);
        e["irrep_dimension"] = s.irrep_dimension;
        e["multiplicity"] = s.multiplicity;
        e["rank"] = s.rank;
        e["idempotence_residual"] = s.idempotence_residual;
        e["hermiticity_residual"] = s.hermiticity_residual;
        sectors.push_back(std::move(e));
    }
    out["sectors"] = std::move(sectors);
    out["rank_sum"] = r.rank_sum;
    out["commutant_dim"] = r.commutant_dimension;
    out["multiplicity_square_sum"] = r.multiplicity_square_sum;
    out["residuals"] = {{"orthogonality", r.orthogonality_residual},
                        {"completeness", r.completeness_residual},
                        {"max", r.max_residual()}};
    out["rank_identity"] = r.rank_identity();
    out["commutant_identity"] = r.commutant_identity();
    out["consistent"] = r.consistent();
    return out;
}

// Young projectors of every standard tableau of one shape.
inline json young_projector_report(const Partition &shape, int m, Index cap = kDefaultDimensionCap) {
    json list = json::array();
    for (const auto &t : standard_tableaux(shape)) {
        const Matrix p = young_projector(t, m, cap);
        list.push_back({{"tableau", t.to_string()},
                        {"trace", p.trace().real()},
                        {"rank", linalg::hermitian_rank(linalg::range_projector(p))},
                        {"idempotence_residual", linalg::idempotence_residual(p)}});
    }
    return list;
}

// ---- parastat_equiv --------------------------------------------------

inline json certificate(const EquivalenceCertificate &c, bool with_intertwiner = true) {
    json out{{"equivalent", c.equivalent},
             {"carrier_dims", {c.dimension_1, c.dimension_2}},
             {"residual", c.residual},
             {"unitarity_residual", c.unitarity_residual},
             {"intertwiner_space_dimension", c.intertwiner_space_dimension},
             {"conditioning", c.conditioning},
             {"reason", c.reason}};
    if (with_intertwiner && c.intertwiner.size() > 0)
        out["intertwiner"] = matrix(c.intertwiner);
    return out;
}

inline json proposition(const PropositionCertificate &p) {
    json out = header("equiv");
    out["proposition"] = p.name;
    out["m"] = p.m;
    out["N"] = p.name == "prop2" ? 2 : 3;
    out["certificate"] = certificate(p.equivalence);
    out["residuals"] = {{"partial_isometry", p.isometry_residual},
                        {"projector_commutator", p.projector_commutator},
                        {"action_commutator", p.action_commutator},
                        {"leakage", p.leakage},
                        {"constraint", p.constraint_residual},
                        {"max", p.max_residual()}};
    out["passed"] = p.passed();
    return out;
}

// ---- cover_quant -----------------------------------------------------

inline json census(const CensusReport &r) {
    json out = header("cover");
    out["total_points"] = r.total_points;
    out["base_points"] = r.base_points;
    out["group_order"] = r.group_order;
    json sectors = json::array();
    for (const auto &s : r.sectors)
        sectors.push_back({{"label", s.label},
                           {"irrep_dimension", s.irrep_dimension},
                           {"carrier_dimension", s.carrier_dimension},
                           {"commutant_dimension", s.commutant_dimension},
                           {"leakage", s.leakage},
                           {"realization_residual", s.realization_residual},
                           {"unitarity_residual", s.unitarity_residual}});
    out["sectors"] = std::move(sectors);
    out["sector_count"] = r.sectors.size();
    out["dimension_square_sum"] = r.dimension_square_sum;
    out["invariant_kernel_dimension"] = r.invariant_kernel_dimension;
    out["expected_kernel_dimension"] = r.expected_kernel_dimension();
    out["cross_intertwiner_dimension"] = r.cross_intertwiner_dimension;
    out["kernels_checked"] = r.kernels_checked;
    out["residuals"] = {{"completeness", r.completeness_mismatch},
                        {"section_spectra", r.section_mismatch},
                        {"max", r.max_residual()}};
    out["consistent"] = r.consistent();
    return out;
}

// Reads a cover:
//   {"points": ["a", "b"],
//    "group": {"degree": 2, "generators": ["(1 2)"]},
//    "action": [{"a": "b", "b": "a"}],
//    "section": ["a"],            optional
//    "kernels": [[[1, 0], ...]]}  optional, rows of numbers or [re, im]
// Generators are cycle words on 1..degree; action[k] maps every point to
// its image under generator k.
inline FiniteCover cover_from_json(const json &j) {
    try {
        const auto points = j.at("points").get<std::vector<std::string>>();
        std::map<std::string, int> index;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (!index.emplace(points[i], static_cast<int>(i)).second)
                throw DomainError("cover: duplicate point '" + points[i] + "'");
        const auto &g = j.at("group");
        const int degree = g.at("degree").get<int>();
        std::vector<Permutation> gens;
        for (const auto &w : g.at("generators"))
            gens.push_back(Permutation::from_cycles(degree, w.get<std::string>()));
        const auto &action = j.at("action");
        if (action.size() != gens.size())
            throw DomainError("cover: need one action map per generator");
        std::vector<std::vector<int>> images;
        for (const auto &map : action) {
            std::vector<int> img(points.size(), -1);
            for (const auto &[from, to] : map.items()) {
                const auto f = index.find(from);
                const auto t = index.find(to.get<std::string>());
                if (f == index.end() || t == index.end())
                    throw DomainError("cover: action mentions unknown point");
                img[static_cast<std::size_t>(f->second)] = t->second;
            }
            for (int v : img)
                if (v < 0)
                    throw DomainError("cover: action map does not cover every point");
            images.push_back(std::move(img));
        }
        FiniteCover cover(points, FiniteGroup::generated_by(degree, gens), images);
        if (j.contains("section")) {
            std::vector<int> s;
            for (const auto &name : j.at("section")) {
                const auto it = index.find(name.get<std::string>());
                if (it == index.end())
                    throw DomainError("cover: section mentions unknown point");
                s.push_back(it->second);
            }
            cover = cover.with_section(s);
        }
        return cover;
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("cover: malformed JSON: ") + e.what());
    }
}

inline Matrix kernel_from_json(const json &rows, const FiniteCover &cover) {
    const int n = cover.total();
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw DomainError("kernel: expected " + std::to_string(n) + " rows");
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
        const auto &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw DomainError("kernel: row " + std::to_string(i) + " has the wrong length");
        for (int k = 0; k < n; ++k) {
            const auto &v = row[static_cast<std::size_t>(k)];
            if (v.is_number())
                a(i, k) = v.get<double>();
            else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
                a(i, k) = Complex(v[0].get<double>(), v[1].get<double>());
            else
                throw DomainError("kernel: entries must be numbers or [re, im] pairs");
        }
    }
    return a;
}

inline json load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(path + ": " + e.what());
    }
}

// ---- circle_theta ----------------------------------------------------

inline json spectrum(const std::vector<SpectrumEntry> &s) {
    json out = json::array();
    for (const auto &e : s)
        out.push_back({{"k", e.k}, {"eigenvalue", e.eigenvalue}, {"reference", e.reference}, {"error", e.error()}});
    return out;
}

inline json gauge(const GaugeReport &g) {
    return {{"discretization", to_string(g.discretization)},
            {"n", g.n},
            {"measured_constant", g.measured_constant},
            {"stated_constant", g.stated_constant},
            {"residual", g.residual},
            {"spectral_mismatch", g.spectral_mismatch}};
}

inline json convergence(const ConvergenceReport &c) {
    return {{"k_max", c.k_max}, {"grids", c.grids}, {"errors", c.errors}, {"order", c.order}};
}

inline json translation(const TranslationReport &t) {
    return {{"n", t.n},
            {"phase_per_turn", t.phase_per_turn},
            {"gauge_phase", t.gauge_phase},
            {"phases_agree", t.phases_agree()},
            {"scalar_residual", t.scalar_residual},
            {"unitarity_residual", t.unitarity_residual}};
}

} // namespace sector_kit::json_io
