#include "fvtrace/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace fvtrace::io {

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw std::invalid_argument(what); }

long long as_int(const ojson& j, const char* what) {
    if (!j.is_number_integer()) bad_input(std::string(what) + " must be an integer");
    return j.get<long long>();
}

Field field_from(const ojson& j) {
    if (!j.is_object() || !j.contains("p")) bad_input("missing field modulus \"p\"");
    return Field(std::uint32_t(as_int(j.at("p"), "p")));
}

}  // namespace

Poly poly_from_json(const Field& f, const ojson& j) {
    if (!j.is_array()) bad_input("polynomial must be an array of coefficients");
    std::vector<long long> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(as_int(c, "coefficient"));
    return Poly::from_ints(f, coeffs);
}

ojson poly_to_json(const Poly& p) {
    ojson out = ojson::array();
    for (std::uint16_t c : p.coeffs()) out.push_back(c);
    return out;
}

FpVec coords_from_json(const Field& f, std::size_t dim, const ojson& j) {
    if (!j.is_array()) bad_input("element must be an array of coordinates");
    if (j.size() != dim) bad_input("element has wrong number of coordinates");
    FpVec out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = f.from_int(as_int(j[i], "coordinate"));
    return out;
}

ojson coords_to_json(const FpVec& v) {
    ojson out = ojson::array();
    for (std::uint16_t c : v) out.push_back(c);
    return out;
}

Algebra algebra_from_json(const ojson& j) {
    Field f = field_from(j);
    if (j.contains("generators")) {
        const auto& gens = j.at("generators");
        if (!gens.is_array() || gens.empty()) bad_input("\"generators\" must be a non-empty array");
        std::vector<Poly> moduli;
        std::vector<std::string> vars;
        for (const auto& g : gens) {
            if (!g.is_object() || !g.contains("modulus")) bad_input("generator needs a \"modulus\"");
            moduli.push_back(poly_from_json(f, g.at("modulus")));
            vars.push_back(g.contains("var") ? g.at("var").get<std::string>()
                                             : "x" + std::to_string(vars.size() + 1));
            if (moduli.back().degree() < 1) bad_input("generator modulus must have degree >= 1");
        }
        if (vars.size() == 1 && !gens[0].contains("var")) vars[0] = "x";
        return Algebra::from_multivariate(moduli, vars);
    }
    if (j.contains("table")) {
        if (!j.contains("dim")) bad_input("table form needs \"dim\"");
        const std::size_t m = std::size_t(as_int(j.at("dim"), "dim"));
        const auto& table = j.at("table");
        if (!table.is_array() || table.size() != m) bad_input("\"table\" must have dim rows");
        std::vector<FpVec> entries;
        entries.reserve(m * m);
        for (const auto& row : table) {
            if (!row.is_array() || row.size() != m) bad_input("\"table\" row must have dim entries");
            for (const auto& e : row) entries.push_back(coords_from_json(f, m, e));
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
        }
        return Algebra::from_table(f, std::move(entries), std::move(labels));
    }
    bad_input("algebra spec needs \"generators\" or \"table\"");
}

ojson algebra_spec_json(const Algebra& A) {
    ojson out;
    out["p"] = A.field().p();
    const Provenance& prov = A.provenance();
    if (!prov.moduli.empty() && prov.moduli.size() == prov.vars.size()) {
        ojson gens = ojson::array();
        for (std::size_t i = 0; i < prov.moduli.size(); ++i) {
            ojson g;
            g["var"] = prov.vars[i];
            g["modulus"] = poly_to_json(prov.moduli[i]);
            gens.push_back(std::move(g));
        }
        out["generators"] = std::move(gens);
        return out;
    }
    out["dim"] = A.dim();
    ojson table = ojson::array();
    for (std::size_t i = 0; i < A.dim(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < A.dim(); ++j) row.push_back(coords_to_json(A.table_entry(i, j)));
        table.push_back(std::move(row));
    }
    out["table"] = std::move(table);
    out["labels"] = A.labels();
    return out;
}

std::string algebra_hash(const Algebra& A) {
    ojson canon;
    canon["p"] = A.field().p();
    canon["dim"] = A.dim();
    ojson table = ojson::array();
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t j = 0; j < A.dim(); ++j) table.push_back(coords_to_json(A.table_entry(i, j)));
    }
    canon["table"] = std::move(table);
    const std::string dump = canon.dump();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Algebra resolve_algebra(const ojson& holder, const std::optional<ojson>& algebra_json) {
    if (holder.contains("algebra")) {
        const auto& a = holder.at("algebra");
        if (a.is_object()) return algebra_from_json(a);
        if (a.is_string()) {
            if (!algebra_json) {
                bad_input("input references an algebra by hash; supply --algebra FILE");
            }
            Algebra alg = algebra_from_json(*algebra_json);
            if (algebra_hash(alg) != a.get<std::string>()) {
                bad_input("algebra hash mismatch: --algebra file does not match the input");
            }
            return alg;
        }
        bad_input("\"algebra\" must be a spec object or a hash string");
    }
    if (algebra_json) return algebra_from_json(*algebra_json);
    bad_input("no algebra given: embed an \"algebra\" spec or pass --algebra FILE");
}

LoadedFunctional functional_from_json(const ojson& j, const std::optional<ojson>& algebra_json) {
    if (!j.is_object() || !j.contains("values")) bad_input("functional needs \"values\"");
    Algebra A = resolve_algebra(j, algebra_json);
    Functional f;
    f.values = coords_from_json(A.field(), A.dim(), j.at("values"));
    return {std::move(A), std::move(f)};
}

ojson functional_to_json(const Algebra& A, const Functional& f) {
    ojson out;
    out["algebra"] = algebra_spec_json(A);
    out["algebra_hash"] = algebra_hash(A);
    out["values"] = coords_to_json(f.values);
    return out;
}

CodeOverR code_from_json(const ojson& j, const std::optional<ojson>& algebra_json) {
    if (!j.is_object()) bad_input("code must be an object");
    CodeOverR C{resolve_algebra(j, algebra_json), 0, {}, std::nullopt};
    const Field& f = C.algebra.field();
    const std::size_t m = C.algebra.dim();
    auto parse_word = [&](const ojson& row) {
        if (!row.is_array()) bad_input("code row must be an array of elements");
        std::vector<FpVec> out;
        out.reserve(row.size());
        for (const auto& e : row) out.push_back(coords_from_json(f, m, e));
        return out;
    };
    if (j.contains("rows")) {
        const auto& rows = j.at("rows");
        if (!rows.is_array()) bad_input("\"rows\" must be an array");
        for (const auto& row : rows) C.rows.push_back(parse_word(row));
        if (!C.rows.empty()) C.n = C.rows[0].size();
        if (j.contains("n")) C.n = std::size_t(as_int(j.at("n"), "n"));
        for (const auto& row : C.rows) {
            if (row.size() != C.n) bad_input("generator rows of differing length");
        }
        return C;
    }
    if (j.contains("codewords")) {
        const auto& words = j.at("codewords");
        if (!words.is_array() || words.empty()) bad_input("\"codewords\" must be a non-empty array");
        std::vector<FpVec> flat;
        for (const auto& w : words) {
            std::vector<FpVec> elems = parse_word(w);
            if (C.n == 0) C.n = elems.size();
            if (elems.size() != C.n) bad_input("codewords of differing length");
            FpVec fw(C.n * m);
            for (std::size_t i = 0; i < C.n; ++i)
                std::copy(elems[i].begin(), elems[i].end(), fw.begin() + i * m);
            flat.push_back(std::move(fw));
        }
        std::sort(flat.begin(), flat.end());
        flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
        C.codewords = std::move(flat);
        return C;
    }
    bad_input("code needs \"rows\" or \"codewords\"");
}

ojson code_to_json(const CodeOverR& C) {
    ojson out;
    out["algebra"] = algebra_spec_json(C.algebra);
    out["n"] = C.n;
    const std::size_t m = C.algebra.dim();
    if (!C.rows.empty()) {
        ojson rows = ojson::array();
        for (const auto& row : C.rows) {
            ojson r = ojson::array();
            for (const auto& e : row) r.push_back(coords_to_json(e));
            rows.push_back(std::move(r));
        }
        out["rows"] = std::move(rows);
    }
    if (C.codewords) {
        ojson words = ojson::array();
        for (const auto& w : *C.codewords) {
            ojson word = ojson::array();
            for (std::size_t i = 0; i < C.n; ++i) {
                ojson elem = ojson::array();
                for (std::size_t c = 0; c < m; ++c) elem.push_back(w[i * m + c]);
                word.push_back(std::move(elem));
            }
            words.push_back(std::move(word));
        }
        out["codewords"] = std::move(words);
    }
    return out;
}

std::vector<FpVec> elements_from_json(const Algebra& A, const ojson& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        bad_input(std::string("input needs \"") + key + "\"");
    }
    const auto& arr = j.at(key);
    if (!arr.is_array()) bad_input(std::string("\"") + key + "\" must be an array of elements");
    std::vector<FpVec> out;
    out.reserve(arr.size());
    for (const auto& e : arr) out.push_back(coords_from_json(A.field(), A.dim(), e));
    return out;
}

CodeOverF fcode_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("codewords")) {
        bad_input("F_p code needs \"p\" and \"codewords\"");
    }
    CodeOverF C;
    C.p = std::uint32_t(as_int(j.at("p"), "p"));
    Field f(C.p);
    const auto& words = j.at("codewords");
    if (!words.is_array() || words.empty()) bad_input("\"codewords\" must be a non-empty array");
    C.n = j.contains("n") ? std::size_t(as_int(j.at("n"), "n")) : words[0].size();
    for (const auto& w : words) {
        C.codewords.push_back(coords_from_json(f, C.n, w));
    }
    std::sort(C.codewords.begin(), C.codewords.end());
    C.codewords.erase(std::unique(C.codewords.begin(), C.codewords.end()), C.codewords.end());
    return C;
}

ojson fcode_to_json(const CodeOverF& C, const CodeParams& params,
                    const std::optional<std::size_t>& qc, bool include_codewords) {
    ojson out;
    out["p"] = C.p;
    out["n"] = params.n;
    out["k"] = params.k;
    if (params.d) {
        out["d"] = *params.d;
    } else {
        out["d"] = nullptr;
    }
    if (qc) {
        out["quasicyclic"] = *qc;
    } else {
        out["quasicyclic"] = nullptr;
    }
    if (include_codewords) {
        ojson words = ojson::array();
        for (const auto& w : C.codewords) words.push_back(coords_to_json(w));
        out["codewords"] = std::move(words);
    }
    return out;
}

}  // namespace fvtrace::io
