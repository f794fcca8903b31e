#include "nomura/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nomura/error.hpp"

namespace nomura::json {

namespace {

json complex_to_json(cd x) { return json::array({x.real(), x.imag()}); }

cd complex_from_json(const json& j) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(Errc::input, "complex entry must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw Error(Errc::input, std::string("missing field \"") + name + "\"");
    return j.at(name);
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const json& r = field(j, "rows");
    const json& c = field(j, "cols");
    const json& e = field(j, "entries");
    if (!r.is_number_integer() || !c.is_number_integer() || r.get<long>() <= 0 || c.get<long>() <= 0)
        throw Error(Errc::input, "rows and cols must be positive integers");
    const auto rows = r.get<Index>();
    const auto cols = c.get<Index>();
    if (!e.is_array() || static_cast<Index>(e.size()) != rows)
        throw Error(Errc::input, "entries must hold one array per row");
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const json& row = e[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw Error(Errc::input, "row " + std::to_string(i) + " has the wrong length");
        for (Index k = 0; k < cols; ++k)
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    validate_matrix(m);
    return m;
}

json typeii_to_json(const TypeIIMatrix& w) {
    json j = matrix_to_json(w.matrix());
    j["v"] = w.order();
    j["residual"] = w.residual();
    return j;
}

TypeIIMatrix typeii_from_json(const json& j, const Tolerance& tol) { return verify_type_ii(matrix_from_json(j), tol); }

json perm_diag_to_json(const PermDiag& pd) {
    json diag = json::array();
    for (Index i = 0; i < pd.diag.size(); ++i)
        diag.push_back(complex_to_json(pd.diag(i)));
    return {{"perm", pd.perm}, {"diag", std::move(diag)}};
}

PermDiag perm_diag_from_json(const json& j) {
    const json& p = field(j, "perm");
    const json& d = field(j, "diag");
    if (!p.is_array() || !d.is_array() || p.size() != d.size())
        throw Error(Errc::input, "perm and diag must be arrays of equal length");
    PermDiag pd{Permutation(p.size()), ComplexVector(static_cast<Index>(d.size()))};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_number_integer())
            throw Error(Errc::input, "perm entries must be integers");
        pd.perm[i] = p[i].get<int>();
        pd.diag(static_cast<Index>(i)) = complex_from_json(d[i]);
    }
    validate(pd);
    return pd;
}

json algebra_to_json(const NomuraAlgebra& alg, bool with_theta) {
    json idem = json::array();
    for (const auto& e : alg.idempotents)
        idem.push_back(matrix_to_json(e));
    json j = {{"v", alg.v}, {"dim", alg.dim}, {"idempotents", std::move(idem)}, {"tol", alg.tol.rel()}};
    if (with_theta) {
        json th = json::array();
        for (const auto& t : alg.theta_images)
            th.push_back(matrix_to_json(t));
        j["theta"] = std::move(th);
    }
    return j;
}

json scheme_to_json(const AssociationScheme& s) {
    json classes = json::array();
    for (const auto& c : s.classes)
        classes.push_back(matrix_to_json(c));
    return {{"v", s.v}, {"classes", std::move(classes)}};
}

AssociationScheme scheme_from_json(const json& j, const Tolerance& tol) {
    const json& c = field(j, "classes");
    if (!c.is_array() || c.empty())
        throw Error(Errc::input, "classes must be a nonempty array");
    std::vector<ComplexMatrix> classes;
    for (const auto& m : c)
        classes.push_back(matrix_from_json(m));
    AssociationScheme s = verify_scheme(std::move(classes), tol);
    if (j.contains("v") && j.at("v") != s.v)
        throw Error(Errc::input, "\"v\" does not match the class order");
    return s;
}

json spectrum_to_json(const HammingSpectrum& s) {
    return {{"n", s.n}, {"q", s.q}, {"eigenvalues", s.eigenvalues}, {"multiplicities", s.multiplicities}};
}

json factorization_to_json(const FactorizationResult& f) {
    json factors = json::array();
    for (const auto& w : f.factors)
        factors.push_back(matrix_to_json(w.matrix()));
    return {{"factors", std::move(factors)},
            {"left", perm_diag_to_json(f.left)},
            {"right", perm_diag_to_json(f.right)},
            {"residual", f.residual}};
}

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::input, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::input, path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::input, "cannot write " + path.string());
    out << j.dump(1) << '\n';
}

} // namespace nomura::json
