#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fvtrace/codes.hpp"

namespace fvtrace::io {

using ojson = nlohmann::ordered_json;

// --- polynomials: ascending coefficient arrays, e.g. 1+x^2 over F_2 is [1,0,1]
Poly poly_from_json(const Field& f, const ojson& j);
ojson poly_to_json(const Poly& p);

// --- coordinate vectors (reduced mod p on input)
FpVec coords_from_json(const Field& f, std::size_t dim, const ojson& j);
ojson coords_to_json(const FpVec& v);

// --- algebras: {"p":..,"generators":[{"var":..,"modulus":[..]},..]} or
//     {"p":..,"dim":..,"table":[[[..],..],..],"labels":[..]?}
Algebra algebra_from_json(const ojson& j);
ojson algebra_spec_json(const Algebra& A);
// FNV-1a over the canonical table form; presentation-independent.
std::string algebra_hash(const Algebra& A);

// --- functionals: {"algebra": <spec or hash string>, "values": [..]}
//     The verified flag is never trusted from input.
struct LoadedFunctional {
    Algebra algebra;
    Functional f;
};
LoadedFunctional functional_from_json(const ojson& j, const std::optional<ojson>& algebra_json);
ojson functional_to_json(const Algebra& A, const Functional& f);

// --- codes over R: {"algebra": <spec>, "rows": [[elem,..],..]} or
//     {"algebra": <spec>, "codewords": [[elem,..],..]} (materialized)
CodeOverR code_from_json(const ojson& j, const std::optional<ojson>& algebra_json);
ojson code_to_json(const CodeOverR& C);

// --- element lists: {"algebra": <spec or hash>?, "elements": [elem,..]} or
//     {"d": [elem,..]} for defining sequences
std::vector<FpVec> elements_from_json(const Algebra& A, const ojson& j, const char* key);

// --- codes over F_p: {"p":..,"n":..,"k":..,"d":int|null,"quasicyclic":int|null,
//     "codewords":[[..],..]}
CodeOverF fcode_from_json(const ojson& j);
ojson fcode_to_json(const CodeOverF& C, const CodeParams& params,
                    const std::optional<std::size_t>& qc, bool include_codewords);

// resolves {"algebra": ...} member against an optional external algebra file
Algebra resolve_algebra(const ojson& holder, const std::optional<ojson>& algebra_json);

}  // namespace fvtrace::io
