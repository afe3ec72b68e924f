// fvtrace: construct, verify and apply F_p-valued traces on finite-dimensional
// commutative algebras, and run the code constructions they induce.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fvtrace/json_io.hpp"

using namespace fvtrace;
using io::ojson;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitRejected = 2;

struct CommonOpts {
    std::string format = "text";
    std::uint64_t seed = 0;
    double guard_multiplier = 1.0;
    bool no_codewords = false;
};

std::uint64_t env_seed() {
    if (const char* v = std::getenv("FVTRACE_SEED")) {
        try {
            return std::stoull(v);
        } catch (...) {
            throw std::invalid_argument("FVTRACE_SEED is not an integer");
        }
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed,
                    "seed for randomized factorization splitting (default from FVTRACE_SEED)");
    cmd->add_option("--unsafe-guard", opts.guard_multiplier,
                    "multiplier on the enumeration guards")
        ->check(CLI::Range(1.0, 1e6));
}

Guards guards_of(const CommonOpts& opts) { return Guards{opts.guard_multiplier}; }

ojson read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return ojson::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::optional<ojson> read_optional_json(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return read_json(path);
}

void emit(const CommonOpts& opts, const ojson& j, const std::string& text) {
    if (opts.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string render_vec(const FpVec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

TChoice tchoice_of(const std::string& name) {
    return name == "fieldtrace" ? TChoice::FieldTrace : TChoice::CoeffTop;
}

// ---- subcommand handlers -------------------------------------------------

int run_algebra_build(const CommonOpts& opts, const std::string& spec_path) {
    Algebra A = io::algebra_from_json(read_json(spec_path));
    A.validate();
    ojson out;
    out["p"] = A.field().p();
    out["dim"] = A.dim();
    out["labels"] = A.labels();
    out["unit"] = io::coords_to_json(A.unit());
    ojson table = ojson::array();
    for (std::size_t i = 0; i < A.dim(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < A.dim(); ++j) row.push_back(io::coords_to_json(A.table_entry(i, j)));
        table.push_back(std::move(row));
    }
    out["table"] = std::move(table);
    out["hash"] = io::algebra_hash(A);
    std::string text = "algebra over F_" + std::to_string(A.field().p()) + ", dim " +
                       std::to_string(A.dim()) + "\n";
    text += "unit: " + A.element_str(A.unit()) + "\n";
    text += "hash: " + io::algebra_hash(A) + "\n";
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t j = i; j < A.dim(); ++j) {
            text += "  (" + A.labels()[i] + ") * (" + A.labels()[j] + ") = " +
                    A.element_str(A.table_entry(i, j)) + "\n";
        }
    }
    emit(opts, out, text);
    return kExitOk;
}

int run_trace_construct(const CommonOpts& opts, const std::string& spec_path,
                        const std::string& tchoice) {
    ojson spec = read_json(spec_path);
    if (!spec.is_object() || !spec.contains("generators")) {
        throw std::invalid_argument(
            "trace construct needs a generator-form algebra spec; "
            "use `trace search` for structure-constant algebras");
    }
    Field f(std::uint32_t(spec.at("p").get<long long>()));
    std::vector<Poly> moduli;
    std::vector<std::string> vars;
    for (const auto& g : spec.at("generators")) {
        moduli.push_back(io::poly_from_json(f, g.at("modulus")));
        vars.push_back(g.contains("var") ? g.at("var").get<std::string>()
                                         : "x" + std::to_string(vars.size() + 1));
    }
    if (vars.size() == 1 && !spec.at("generators")[0].contains("var")) vars[0] = "x";
    AlgebraTrace t = multivariate_trace(moduli, vars, tchoice_of(tchoice), opts.seed);
    VerifyOutcome v = verify_trace(t.algebra, t.tau);
    ojson out = io::functional_to_json(t.algebra, t.tau);
    out["verified"] = true;
    out["gram_det"] = v.det;
    std::string text = "verified trace on dim-" + std::to_string(t.algebra.dim()) +
                       " algebra over F_" + std::to_string(f.p()) + "\n";
    text += "values: " + render_vec(t.tau.values) + "\n";
    text += "gram det: " + std::to_string(v.det) + "\n";
    emit(opts, out, text);
    return kExitOk;
}

int run_trace_verify(const CommonOpts& opts, const std::string& functional_path,
                     const std::string& algebra_path) {
    io::LoadedFunctional lf =
        io::functional_from_json(read_json(functional_path), read_optional_json(algebra_path));
    VerifyOutcome v = verify_trace(lf.algebra, lf.f);
    ojson out = io::functional_to_json(lf.algebra, lf.f);
    out["verified"] = v.verified;
    out["gram_det"] = v.det;
    out["witness"] = v.verified ? ojson(nullptr) : io::coords_to_json(v.witness);
    std::string text;
    if (v.verified) {
        text = "verified (gram det = " + std::to_string(v.det) + ")\n";
    } else {
        text = "rejected: gram det = 0, witness " + render_vec(v.witness) + " = " +
               lf.algebra.element_str(v.witness) + "\n";
    }
    emit(opts, out, text);
    return v.verified ? kExitOk : kExitRejected;
}

int run_trace_search(const CommonOpts& opts, const std::string& spec_path) {
    Algebra A = io::algebra_from_json(read_json(spec_path));
    std::optional<Functional> found = search_traces(A, guards_of(opts));
    if (!found) {
        ojson out;
        out["found"] = false;
        out["values"] = nullptr;
        emit(opts, out, "none\n");
        return kExitRejected;
    }
    ojson out = io::functional_to_json(A, *found);
    out["found"] = true;
    emit(opts, out, "found trace with values " + render_vec(found->values) + "\n");
    return kExitOk;
}

int run_dual_basis(const CommonOpts& opts, const std::string& trace_path,
                   const std::string& algebra_path, const std::string& elements_path) {
    io::LoadedFunctional lf =
        io::functional_from_json(read_json(trace_path), read_optional_json(algebra_path));
    std::vector<FpVec> basis;
    if (elements_path.empty()) {
        for (std::size_t i = 0; i < lf.algebra.dim(); ++i) basis.push_back(lf.algebra.basis_element(i));
    } else {
        basis = io::elements_from_json(lf.algebra, read_json(elements_path), "elements");
    }
    std::vector<FpVec> duals = dual_basis(lf.algebra, lf.f, basis);
    ojson out;
    out["algebra"] = io::algebra_spec_json(lf.algebra);
    ojson elems = ojson::array();
    for (const auto& d : duals) elems.push_back(io::coords_to_json(d));
    out["elements"] = std::move(elems);
    std::string text = "dual basis:\n";
    for (const auto& d : duals) {
        text += "  " + render_vec(d) + " = " + lf.algebra.element_str(d) + "\n";
    }
    emit(opts, out, text);
    return kExitOk;
}

int run_discriminant(const CommonOpts& opts, const std::string& trace_path,
                     const std::string& algebra_path, const std::string& elements_path) {
    io::LoadedFunctional lf =
        io::functional_from_json(read_json(trace_path), read_optional_json(algebra_path));
    std::vector<FpVec> elems = io::elements_from_json(lf.algebra, read_json(elements_path), "elements");
    std::uint16_t disc = discriminant(lf.algebra, lf.f, elems);
    ojson out;
    out["discriminant"] = disc;
    out["is_basis"] = (disc != 0);
    emit(opts, out,
         "discriminant: " + std::to_string(disc) + (disc ? " (basis)\n" : " (not a basis)\n"));
    return kExitOk;
}

int run_represent(const CommonOpts& opts, const std::string& trace_path,
                  const std::string& algebra_path, const std::string& target_path) {
    io::LoadedFunctional tau =
        io::functional_from_json(read_json(trace_path), read_optional_json(algebra_path));
    ojson target_json = read_json(target_path);
    if (!target_json.is_object() || !target_json.contains("values")) {
        throw std::invalid_argument("target functional needs \"values\"");
    }
    Functional target;
    target.values = io::coords_from_json(tau.algebra.field(), tau.algebra.dim(),
                                         target_json.at("values"));
    FpVec beta = represent_functional(tau.algebra, tau.f, target);
    ojson out;
    out["beta"] = io::coords_to_json(beta);
    emit(opts, out, "beta: " + render_vec(beta) + " = " + tau.algebra.element_str(beta) + "\n");
    return kExitOk;
}

ojson fcode_report(const CodeOverF& C, const Guards& guards, bool include_codewords,
                   std::string* text_out) {
    CodeParams params = code_params(C, guards);
    std::optional<std::size_t> qc = quasicyclic_index(C);
    ojson out = io::fcode_to_json(C, params, qc, include_codewords);
    if (text_out) {
        *text_out = "n=" + std::to_string(params.n) + " k=" + std::to_string(params.k) +
                    " d=" + (params.d ? std::to_string(*params.d) : std::string("inf")) +
                    " quasicyclic=" + (qc ? std::to_string(*qc) : std::string("none")) + " (" +
                    std::to_string(C.codewords.size()) + " codewords)\n";
    }
    return out;
}

int run_code_params(const CommonOpts& opts, const std::string& code_path) {
    CodeOverF C = io::fcode_from_json(read_json(code_path));
    std::string text;
    ojson out = fcode_report(C, guards_of(opts), !opts.no_codewords, &text);
    emit(opts, out, text);
    return kExitOk;
}

int run_code_descend(const CommonOpts& opts, const std::string& code_path,
                     const std::string& trace_path, const std::string& algebra_path,
                     const std::string& basis_path, const std::string& which) {
    std::optional<ojson> algebra_json = read_optional_json(algebra_path);
    ojson code_json = read_json(code_path);
    CodeOverR C = io::code_from_json(code_json, algebra_json);
    CodeOverF result{C.algebra.field().p(), C.n, {}, {}};
    if (which == "subfield-subcode") {
        result = subfield_subcode(C, guards_of(opts));
    } else {
        io::LoadedFunctional tau = io::functional_from_json(
            read_json(trace_path),
            algebra_json ? algebra_json : std::optional<ojson>(io::algebra_spec_json(C.algebra)));
        if (io::algebra_hash(tau.algebra) != io::algebra_hash(C.algebra)) {
            throw std::invalid_argument("trace and code live on different algebras");
        }
        if (which == "trace-code") {
            result = trace_code(tau.f, C, guards_of(opts));
        } else {  // subfield-code
            std::vector<FpVec> basis;
            if (basis_path.empty()) {
                for (std::size_t i = 0; i < C.algebra.dim(); ++i)
                    basis.push_back(C.algebra.basis_element(i));
            } else {
                basis = io::elements_from_json(C.algebra, read_json(basis_path), "elements");
            }
            result = subfield_code(C, tau.f, basis, guards_of(opts));
        }
    }
    std::string text;
    ojson out = fcode_report(result, guards_of(opts), !opts.no_codewords, &text);
    emit(opts, out, text);
    return kExitOk;
}

int run_code_dual(const CommonOpts& opts, const std::string& code_path,
                  const std::string& algebra_path) {
    CodeOverR C = io::code_from_json(read_json(code_path), read_optional_json(algebra_path));
    CodeOverR D = dual_code(C, guards_of(opts));
    ojson out = io::code_to_json(D);
    std::string text = "dual code over R: " + std::to_string(D.codewords->size()) +
                       " codewords of length " + std::to_string(D.n) + "\n";
    emit(opts, out, text);
    return kExitOk;
}

int run_code_cd(const CommonOpts& opts, const std::string& seq_path, const std::string& trace_path,
                const std::string& algebra_path) {
    std::optional<ojson> algebra_json = read_optional_json(algebra_path);
    ojson seq_json = read_json(seq_path);
    Algebra A = io::resolve_algebra(seq_json, algebra_json);
    io::LoadedFunctional tau = io::functional_from_json(
        read_json(trace_path),
        algebra_json ? algebra_json : std::optional<ojson>(io::algebra_spec_json(A)));
    if (io::algebra_hash(tau.algebra) != io::algebra_hash(A)) {
        throw std::invalid_argument("trace and defining sequence live on different algebras");
    }
    std::vector<FpVec> D = io::elements_from_json(A, seq_json, "d");
    CodeOverF result = defining_sequence_code(A, tau.f, D, guards_of(opts));
    std::string text;
    ojson out = fcode_report(result, guards_of(opts), !opts.no_codewords, &text);
    emit(opts, out, text);
    return kExitOk;
}

int run_check_duality(const CommonOpts& opts, const std::string& code_path,
                      const std::string& trace_path, const std::string& algebra_path) {
    std::optional<ojson> algebra_json = read_optional_json(algebra_path);
    CodeOverR C = io::code_from_json(read_json(code_path), algebra_json);
    io::LoadedFunctional tau = io::functional_from_json(
        read_json(trace_path),
        algebra_json ? algebra_json : std::optional<ojson>(io::algebra_spec_json(C.algebra)));
    if (io::algebra_hash(tau.algebra) != io::algebra_hash(C.algebra)) {
        throw std::invalid_argument("trace and code live on different algebras");
    }
    bool holds = check_duality(tau.f, C, guards_of(opts));
    ojson out;
    out["holds"] = holds;
    emit(opts, out, std::string("duality holds: ") + (holds ? "true" : "false") + "\n");
    return holds ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"F_p-valued traces on finite-dimensional commutative algebras"};
    app.require_subcommand(1);

    CommonOpts opts;
    try {
        opts.seed = env_seed();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    std::string spec_path, functional_path, algebra_path, elements_path, target_path;
    std::string code_path, trace_path, basis_path, seq_path;
    std::string tchoice = "coeff";

    CLI::App* algebra = app.add_subcommand("algebra", "algebra constructions");
    algebra->require_subcommand(1);
    CLI::App* algebra_build = algebra->add_subcommand("build", "build and validate an algebra spec");
    algebra_build->add_option("spec", spec_path, "algebra spec JSON")->required();
    add_common(algebra_build, opts);

    CLI::App* trace = app.add_subcommand("trace", "trace construction and verification");
    trace->require_subcommand(1);
    CLI::App* trace_construct =
        trace->add_subcommand("construct", "construct a trace from a generator-form spec");
    trace_construct->add_option("spec", spec_path, "algebra spec JSON")->required();
    trace_construct->add_option("--t-choice", tchoice, "seed functional on each local factor")
        ->check(CLI::IsMember({"coeff", "fieldtrace"}))
        ->capture_default_str();
    add_common(trace_construct, opts);
    CLI::App* trace_verify = trace->add_subcommand("verify", "verify a functional as a trace");
    trace_verify->add_option("functional", functional_path, "functional JSON")->required();
    trace_verify->add_option("--algebra", algebra_path, "algebra spec JSON (for hash references)");
    add_common(trace_verify, opts);
    CLI::App* trace_search =
        trace->add_subcommand("search", "exhaustively search all nonzero functionals");
    trace_search->add_option("spec", spec_path, "algebra spec JSON")->required();
    add_common(trace_search, opts);

    CLI::App* dualb = app.add_subcommand("dual-basis", "compute the tau-dual basis");
    dualb->add_option("trace", trace_path, "verified trace JSON")->required();
    dualb->add_option("--algebra", algebra_path, "algebra spec JSON");
    dualb->add_option("--elements", elements_path, "basis elements JSON (default: canonical basis)");
    add_common(dualb, opts);

    CLI::App* disc = app.add_subcommand("discriminant", "discriminant of dim elements");
    disc->add_option("trace", trace_path, "verified trace JSON")->required();
    disc->add_option("--elements", elements_path, "elements JSON")->required();
    disc->add_option("--algebra", algebra_path, "algebra spec JSON");
    add_common(disc, opts);

    CLI::App* rep = app.add_subcommand("represent", "find beta with f = tau(beta * .)");
    rep->add_option("trace", trace_path, "verified trace JSON")->required();
    rep->add_option("--target", target_path, "functional JSON to represent")->required();
    rep->add_option("--algebra", algebra_path, "algebra spec JSON");
    add_common(rep, opts);

    CLI::App* code = app.add_subcommand("code", "code constructions");
    code->require_subcommand(1);
    CLI::App* code_params_cmd = code->add_subcommand("params", "parameters of an F_p code");
    code_params_cmd->add_option("code", code_path, "F_p code JSON")->required();
    code_params_cmd->add_flag("--no-codewords", opts.no_codewords, "omit codewords from output");
    add_common(code_params_cmd, opts);

    auto add_descend = [&](const char* name, const char* help, bool needs_trace, bool takes_basis) {
        CLI::App* cmd = code->add_subcommand(name, help);
        cmd->add_option("code", code_path, "code-over-R JSON")->required();
        if (needs_trace) cmd->add_option("--trace", trace_path, "verified trace JSON")->required();
        if (takes_basis) cmd->add_option("--basis", basis_path, "basis elements JSON");
        cmd->add_option("--algebra", algebra_path, "algebra spec JSON");
        cmd->add_flag("--no-codewords", opts.no_codewords, "omit codewords from output");
        add_common(cmd, opts);
        return cmd;
    };
    CLI::App* code_trace = add_descend("trace-code", "componentwise trace image", true, false);
    CLI::App* code_subsub =
        add_descend("subfield-subcode", "intersection with the embedded field", false, false);
    CLI::App* code_subfield = add_descend("subfield-code", "tau-pairing subfield code", true, true);
    CLI::App* code_dual = code->add_subcommand("dual", "Euclidean dual over R");
    code_dual->add_option("code", code_path, "code-over-R JSON")->required();
    code_dual->add_option("--algebra", algebra_path, "algebra spec JSON");
    add_common(code_dual, opts);
    CLI::App* code_cd = code->add_subcommand("cd", "defining-sequence code C_D");
    code_cd->add_option("sequence", seq_path, "defining sequence JSON")->required();
    code_cd->add_option("--trace", trace_path, "verified trace JSON")->required();
    code_cd->add_option("--algebra", algebra_path, "algebra spec JSON");
    code_cd->add_flag("--no-codewords", opts.no_codewords, "omit codewords from output");
    add_common(code_cd, opts);

    CLI::App* check = app.add_subcommand("check", "executable theorems");
    check->require_subcommand(1);
    CLI::App* check_duality_cmd =
        check->add_subcommand("duality", "tau(C-dual) = (subfield subcode)-dual");
    check_duality_cmd->add_option("code", code_path, "code-over-R JSON")->required();
    check_duality_cmd->add_option("--trace", trace_path, "verified trace JSON")->required();
    check_duality_cmd->add_option("--algebra", algebra_path, "algebra spec JSON");
    add_common(check_duality_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (algebra_build->parsed()) return run_algebra_build(opts, spec_path);
        if (trace_construct->parsed()) return run_trace_construct(opts, spec_path, tchoice);
        if (trace_verify->parsed()) return run_trace_verify(opts, functional_path, algebra_path);
        if (trace_search->parsed()) return run_trace_search(opts, spec_path);
        if (dualb->parsed()) return run_dual_basis(opts, trace_path, algebra_path, elements_path);
        if (disc->parsed()) return run_discriminant(opts, trace_path, algebra_path, elements_path);
        if (rep->parsed()) return run_represent(opts, trace_path, algebra_path, target_path);
        if (code_params_cmd->parsed()) return run_code_params(opts, code_path);
        if (code_trace->parsed())
            return run_code_descend(opts, code_path, trace_path, algebra_path, "", "trace-code");
        if (code_subsub->parsed())
            return run_code_descend(opts, code_path, "", algebra_path, "", "subfield-subcode");
        if (code_subfield->parsed())
            return run_code_descend(opts, code_path, trace_path, algebra_path, basis_path,
                                    "subfield-code");
        if (code_dual->parsed()) return run_code_dual(opts, code_path, algebra_path);
        if (code_cd->parsed()) return run_code_cd(opts, seq_path, trace_path, algebra_path);
        if (check_duality_cmd->parsed())
            return run_check_duality(opts, code_path, trace_path, algebra_path);
        std::cerr << "error: no subcommand\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
