#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fvtrace/guards.hpp"
#include "fvtrace/trace.hpp"

namespace fvtrace {

/// Linear code over an algebra R, given by generator rows (an R-submodule of
/// R^n; rows need not be independent). A codeword is stored flattened:
/// n blocks of dim() coordinates each. Operations that materialize a code
/// fill `codewords` (canonically sorted) instead of `rows`.
struct CodeOverR {
    Algebra algebra;
    std::size_t n = 0;
    std::vector<std::vector<FpVec>> rows;       // k rows of n elements
    std::optional<std::vector<FpVec>> codewords;  // sorted flattened words
};

/// Linear code over F_p, materialized as the canonical sorted codeword set.
struct CodeOverF {
    std::uint32_t p = 2;
    std::size_t n = 0;
    std::vector<FpVec> codewords;           // sorted, always contains 0
    std::vector<FpVec> generator_rows;      // optional presentation
};

/// All R-linear combinations of the rows, deduplicated and sorted
/// lexicographically by flattened coordinate sequence. Guarded by
/// |R|^k <= 2^22.
std::vector<FpVec> enumerate_codewords(const CodeOverR& C, const Guards& guards = {});

/// Euclidean dual {x : x . y = 0 for all y in C}, brute-forced over R^n
/// (guard |R|^n <= 2^24) against the generators.
CodeOverR dual_code(const CodeOverR& C, const Guards& guards = {});

/// Componentwise image of C under tau.
CodeOverF trace_code(const Functional& tau, const CodeOverR& C, const Guards& guards = {});

/// C intersected with the embedded copy of F_p (coordinatewise scalar
/// multiples of the unit), written over F_p.
CodeOverF subfield_subcode(const CodeOverR& C, const Guards& guards = {});

/// Executable form of the duality theorem: tau(C-dual) equals the F_p-dual
/// of the subfield subcode, as codeword sets.
bool check_duality(const Functional& tau, const CodeOverR& C, const Guards& guards = {});

/// Defining-sequence code C_D = { (tau(x d_1), ..., tau(x d_n)) : x in R }.
/// Order and multiplicity of D are preserved.
CodeOverF defining_sequence_code(const Algebra& A, const Functional& tau,
                                 const std::vector<FpVec>& D, const Guards& guards = {});

/// Subfield code generated by the stacked tau-pairing blocks: for generator
/// row i the m x n block with entry (k, j) = tau(g_ij * basis_k). The basis
/// must be independent (discriminant nonzero).
CodeOverF subfield_code(const CodeOverR& C, const Functional& tau,
                        const std::vector<FpVec>& basis, const Guards& guards = {});

struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> d;  // nullopt encodes the zero code's infinity
};

/// (n, k, d) with k = log_p |C| (verified integral) and d the minimum
/// Hamming weight over nonzero codewords.
CodeParams code_params(const CodeOverF& C, const Guards& guards = {});

/// Smallest divisor l < n of n such that the cyclic shift by l maps the
/// codeword set onto itself, or nullopt. The trivial full shift l = n is
/// excluded.
std::optional<std::size_t> quasicyclic_index(const CodeOverF& C);

}  // namespace fvtrace
