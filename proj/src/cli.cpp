#include "nomura/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "nomura/acceptance.hpp"
#include "nomura/error.hpp"
#include "nomura/factorization.hpp"
#include "nomura/json_io.hpp"
#include "nomura/nomura.hpp"
#include "nomura/schemes.hpp"
#include "nomura/typeii.hpp"

namespace nomura::cli {

namespace {

namespace io = nomura::json;
using Json = nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(Errc::input, "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

// Counts and flags are stored as doubles; print them as integers.
Json metric_value(double x) {
    if (std::abs(x) < 1e15 && x == std::floor(x))
        return static_cast<long long>(x);
    return x;
}

std::string number(double x) { return metric_value(x).dump(); }

Json report_json(const RunReport& r) {
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics)
        metrics[k] = metric_value(v);
    return {{"command", r.command}, {"inputs", r.inputs},  {"tol", r.tol},
            {"outcome", r.pass ? "pass" : "fail"},         {"message", r.message},
            {"metrics", std::move(metrics)}, {"artifacts", r.artifacts}};
}

void print_report(const RunReport& r, bool as_json, std::ostream& os) {
    if (as_json) {
        os << report_json(r).dump(1) << '\n';
        return;
    }
    os << "command: " << r.command << '\n';
    for (const auto& in : r.inputs)
        os << "input: " << in << '\n';
    os << "tol: " << Json(r.tol).dump() << '\n';
    os << "outcome: " << (r.pass ? "pass" : "fail") << '\n';
    if (!r.message.empty())
        os << "message: " << r.message << '\n';
    for (const auto& [k, v] : r.metrics)
        os << k << ": " << number(v) << '\n';
    for (const auto& a : r.artifacts)
        os << "artifact: " << a << '\n';
}

// Per-invocation state: the report under construction and where artifacts go.
class Session {
public:
    Session(std::string output, Tolerance tol) : output_(std::move(output)), tol_(tol) {}

    RunReport report;

    const Tolerance& tol() const { return tol_; }

    Json read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(Errc::input, "cannot open " + path);
        const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        report.inputs.push_back(path + " sha256:" + sha256_hex(bytes));
        try {
            return Json::parse(bytes);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::input, path + ": " + e.what());
        }
    }

    /// Writes the command's main output to -o, or keeps it for stdout when
    /// to_stdout is set.
    void emit(const Json& artifact, bool to_stdout) {
        if (!output_.empty()) {
            io::write_file(output_, artifact);
            report.artifacts.push_back(output_);
        } else if (to_stdout) {
            stdout_artifact_ = artifact;
        }
    }

    void emit_to(const std::string& path, const Json& artifact) {
        io::write_file(path, artifact);
        report.artifacts.push_back(path);
    }

    const std::optional<Json>& stdout_artifact() const { return stdout_artifact_; }

private:
    std::string output_;
    Tolerance tol_;
    std::optional<Json> stdout_artifact_;
};

Permutation read_relabel(const Json& j) {
    const Json* p = &j;
    if (j.is_object()) {
        if (j.contains("perm"))
            p = &j.at("perm");
        else if (j.contains("left") && j.at("left").contains("perm"))
            p = &j.at("left").at("perm");
        else
            throw Error(Errc::input, "relabel file needs \"perm\" or \"left\".\"perm\"");
    }
    if (!p->is_array())
        throw Error(Errc::input, "relabel must be an array of 0-based indices");
    Permutation perm;
    for (const auto& x : *p) {
        if (!x.is_number_integer())
            throw Error(Errc::input, "relabel entries must be integers");
        perm.push_back(x.get<int>());
    }
    return perm;
}

void typeii_metrics(RunReport& r, const TypeIIMatrix& w) {
    r.metrics["v"] = w.order();
    r.metrics["residual"] = w.residual();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Type II matrices, Nomura algebras and Hamming schemes", "nomura-cli"};
    app.fallthrough();
    app.require_subcommand(1);

    double tol_value = 1e-8;
    std::uint64_t seed = 42;
    std::string output;
    bool as_json = false;
    app.add_option("--tol", tol_value, "relative tolerance")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("-o,--output", output, "output file");
    app.add_flag("--json", as_json, "machine-readable report");

    CLI::App* gen = app.add_subcommand("gen", "construct a type II matrix");
    gen->require_subcommand(1);
    int potts_v = 0;
    CLI::App* gen_potts = gen->add_subcommand("potts", "Potts model (t-1)I + J");
    gen_potts->add_option("--v", potts_v, "order")->required();
    std::vector<int> orders;
    CLI::App* gen_dft = gen->add_subcommand("dft", "character table of a finite abelian group");
    gen_dft->add_option("--orders", orders, "cyclic factor orders a,b,...")->required()->delimiter(',');
    std::string tensor_a;
    std::string tensor_b;
    CLI::App* gen_tensor = gen->add_subcommand("tensor", "Kronecker product of two matrices");
    gen_tensor->add_option("A", tensor_a)->required();
    gen_tensor->add_option("B", tensor_b)->required();
    std::string scramble_in;
    std::string witness_out;
    bool columns_only = false;
    CLI::App* gen_scramble = gen->add_subcommand("scramble", "seeded random type II equivalent");
    gen_scramble->add_option("W", scramble_in)->required();
    gen_scramble->add_flag("--columns-only", columns_only, "keep the row order");
    gen_scramble->add_option("--witness", witness_out, "write the monomial witnesses here");

    std::string check_in;
    CLI::App* check = app.add_subcommand("check", "verify the type II condition");
    check->add_option("W", check_in)->required();

    std::string nomura_in;
    bool with_theta = false;
    std::string scheme_out;
    CLI::App* nomura_cmd = app.add_subcommand("nomura", "compute the Nomura algebra");
    nomura_cmd->add_option("W", nomura_in)->required();
    nomura_cmd->add_flag("--theta", with_theta, "include Theta images in the output");
    nomura_cmd->add_option("--scheme-out", scheme_out, "write the scheme of Schur idempotents here");

    int ham_n = 0;
    int ham_q = 0;
    bool spectrum = false;
    CLI::App* hamming = app.add_subcommand("hamming", "Hamming graph adjacency or spectrum");
    hamming->add_option("--n", ham_n)->required();
    hamming->add_option("--q", ham_q)->required();
    hamming->add_flag("--spectrum", spectrum, "eigenvalues, multiplicities and the recursion check");

    int genham_n = 0;
    std::string genham_scheme;
    CLI::App* genham = app.add_subcommand("genham", "generalized Hamming scheme H(n, A)");
    genham->add_option("--n", genham_n)->required();
    genham->add_option("--scheme", genham_scheme)->required();

    std::string verify_in;
    CLI::App* scheme_verify = app.add_subcommand("scheme-verify", "check the association scheme axioms");
    scheme_verify->add_option("S", verify_in)->required();

    std::string factor_in;
    int factor_q = 0;
    int factor_n = 0;
    std::string relabel_in;
    CLI::App* factor = app.add_subcommand("factor", "factor into q x q type II matrices");
    factor->add_option("W", factor_in)->required();
    factor->add_option("--q", factor_q)->required();
    factor->add_option("--n", factor_n)->required();
    factor->add_option("--relabel", relabel_in, "row permutation (array, {perm}, or a scramble witness file)");

    CLI::App* reproduce = app.add_subcommand("reproduce", "run the acceptance suite");

    std::vector<const char*> argv{"nomura-cli"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kBadInput;
    }

    std::string command;
    for (const CLI::App* sub : app.get_subcommands()) {
        command = sub->get_name();
        for (const CLI::App* leaf : sub->get_subcommands())
            command += " " + leaf->get_name();
    }

    RunReport failed_early;
    failed_early.command = command;
    failed_early.tol = tol_value;
    std::optional<Session> session;
    try {
        session.emplace(output, Tolerance(tol_value));
    } catch (const Error& e) {
        failed_early.message = e.what();
        err << "error: " << e.what() << '\n';
        print_report(failed_early, as_json, out);
        return kBadInput;
    }
    Session& s = *session;
    s.report.command = command;
    s.report.tol = tol_value;
    const Tolerance& tol = s.tol();
    RunReport& rep = s.report;

    int code = kOk;
    // A property that fails without a library error (e.g. a red criterion).
    std::string soft_failure;
    try {
        if (gen_potts->parsed()) {
            const TypeIIMatrix w = potts(potts_v, tol);
            typeii_metrics(rep, w);
            s.emit(io::typeii_to_json(w), true);
        } else if (gen_dft->parsed()) {
            const TypeIIMatrix w = char_table_abelian(orders, tol);
            typeii_metrics(rep, w);
            s.emit(io::typeii_to_json(w), true);
        } else if (gen_tensor->parsed()) {
            const TypeIIMatrix a = io::typeii_from_json(s.read(tensor_a), tol);
            const TypeIIMatrix b = io::typeii_from_json(s.read(tensor_b), tol);
            const TypeIIMatrix w = tensor(a, b, tol);
            typeii_metrics(rep, w);
            s.emit(io::typeii_to_json(w), true);
        } else if (gen_scramble->parsed()) {
            const TypeIIMatrix w = io::typeii_from_json(s.read(scramble_in), tol);
            const Equivalent e =
                scramble(w, seed, columns_only ? ScrambleMode::columns_only : ScrambleMode::full, tol);
            typeii_metrics(rep, e.matrix);
            rep.metrics["seed"] = static_cast<double>(seed);
            s.emit(io::typeii_to_json(e.matrix), true);
            if (!witness_out.empty())
                s.emit_to(witness_out,
                          {{"left", io::perm_diag_to_json(e.left)}, {"right", io::perm_diag_to_json(e.right)}});
        } else if (check->parsed()) {
            const TypeIIMatrix w = io::typeii_from_json(s.read(check_in), tol);
            typeii_metrics(rep, w);
        } else if (nomura_cmd->parsed()) {
            const TypeIIMatrix w = io::typeii_from_json(s.read(nomura_in), tol);
            const NomuraAlgebra alg = nomura_basis(w, tol, seed);
            const IdentityReport ids = check_theorem_identities(alg, tol);
            rep.metrics["v"] = alg.v;
            rep.metrics["dim"] = alg.dim;
            rep.metrics["identity_residual"] = ids.max_residual;
            s.emit(io::algebra_to_json(alg, with_theta), false);
            if (!scheme_out.empty())
                s.emit_to(scheme_out, io::scheme_to_json(verify_scheme(alg.idempotents, tol)));
            if (!ids.pass)
                soft_failure = "algebra identities fail at tolerance";
        } else if (hamming->parsed()) {
            if (spectrum) {
                const HammingSpectrum sp = hamming_spectrum(ham_n, ham_q, tol);
                rep.metrics["eigen_residual"] = sp.eigen_residual;
                for (std::size_t h = 0; h < sp.eigenvalues.size(); ++h) {
                    rep.metrics["theta_" + std::to_string(h)] = sp.eigenvalues[h];
                    rep.metrics["multiplicity_" + std::to_string(h)] = static_cast<double>(sp.multiplicities[h]);
                }
                if (ham_n >= 1) {
                    const RecursionReport rr = check_eigenvector_recursion(sp, tol);
                    rep.metrics["recursion_pass"] = rr.pass;
                    rep.metrics["recursion_vectors"] = rr.vectors_checked;
                    if (!rr.pass)
                        soft_failure = "eigenvector recursion fails at tolerance";
                }
                s.emit(io::spectrum_to_json(sp), false);
            } else {
                const ComplexMatrix a = hamming_adjacency(ham_n, ham_q);
                rep.metrics["v"] = static_cast<double>(a.rows());
                rep.metrics["degree"] = a.real().row(0).sum();
                s.emit(io::matrix_to_json(a), false);
            }
        } else if (genham->parsed()) {
            const AssociationScheme base = io::scheme_from_json(s.read(genham_scheme), tol);
            const AssociationScheme h = generalized_hamming(base, genham_n, tol);
            rep.metrics["v"] = h.v;
            rep.metrics["classes"] = static_cast<double>(h.classes.size());
            s.emit(io::scheme_to_json(h), false);
        } else if (scheme_verify->parsed()) {
            try {
                const AssociationScheme sc = io::scheme_from_json(s.read(verify_in), tol);
                rep.metrics["v"] = sc.v;
                rep.metrics["d"] = sc.d();
            } catch (const Error& e) {
                if (e.code() == Errc::scheme_axiom)
                    rep.metrics["failed_axiom"] = e.axiom();
                throw;
            }
        } else if (factor->parsed()) {
            const TypeIIMatrix w = io::typeii_from_json(s.read(factor_in), tol);
            std::optional<Permutation> relabel;
            if (!relabel_in.empty())
                relabel = read_relabel(s.read(relabel_in));
            const FactorizationResult f = factor_full(w, factor_q, factor_n, tol, relabel);
            rep.metrics["factors"] = static_cast<double>(f.factors.size());
            rep.metrics["residual"] = f.residual;
            s.emit(io::factorization_to_json(f), false);
        } else if (reproduce->parsed()) {
            int passed = 0;
            int total = 0;
            for (const auto& r : run_acceptance(tol)) {
                out << format_line(r) << '\n';
                rep.metrics["criterion_" + std::string(r.id < 10 ? "0" : "") + std::to_string(r.id)] = r.pass;
                passed += r.pass;
                ++total;
            }
            rep.metrics["passed"] = passed;
            rep.metrics["failed"] = total - passed;
            if (passed != total)
                soft_failure = std::to_string(total - passed) + " acceptance criteria failed";
        }
        rep.pass = soft_failure.empty();
        rep.message = soft_failure;
        if (!rep.pass)
            code = kMathFailure;
    } catch (const Error& e) {
        rep.pass = false;
        rep.message = e.what();
        code = is_input_error(e.code()) ? kBadInput : kMathFailure;
    } catch (const nlohmann::json::exception& e) {
        rep.pass = false;
        rep.message = e.what();
        code = kBadInput;
    }

    if (!rep.pass)
        err << "error: " << rep.message << '\n';
    if (s.stdout_artifact() && rep.pass) {
        out << s.stdout_artifact()->dump(1) << '\n';
        print_report(rep, as_json, err);
    } else {
        print_report(rep, as_json, out);
    }
    return code;
}

} // namespace nomura::cli
