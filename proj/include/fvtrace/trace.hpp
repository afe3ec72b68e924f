#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fvtrace/algebra.hpp"
#include "fvtrace/guards.hpp"

namespace fvtrace {

/// F_p-linear functional on an algebra, stored as its values on the
/// canonical basis. `verified` is set once the functional has passed the
/// Gram-matrix trace check against its algebra.
struct Functional {
    FpVec values;
    bool verified = false;
};

std::uint16_t apply_functional(const Algebra& A, const Functional& f, const FpVec& x);

/// Gram matrix of (x, y) -> f(xy) over the canonical basis.
Mat gram_matrix(const Algebra& A, const Functional& f);

struct VerifyOutcome {
    bool verified;
    Mat gram;
    std::uint16_t det;
    FpVec witness;  // nonzero element spanning an ideal inside ker f; empty when verified
};

/// Trace check: f is a trace iff the Gram matrix is nonsingular. On
/// rejection the witness is a deterministic nonzero Gram null vector.
/// Throws on the zero functional.
VerifyOutcome verify_trace(const Algebra& A, const Functional& f);

/// Brute-force equivalent of verify_trace: true iff no nonzero y has
/// f(basis_i * y) = 0 for all i. Guarded by p^dim <= 2^12.
bool ideal_oracle(const Algebra& A, const Functional& f, const Guards& guards = {});

/// Default choice of the seed functional T on F_p[x]/<g>.
enum class TChoice {
    CoeffTop,    // coefficient of x^(deg g - 1); identity on F_p when deg g = 1
    FieldTrace,  // matrix trace of the multiplication operator
};

/// A trace bundled with the algebra it lives on; every constructor below
/// verifies before returning.
struct AlgebraTrace {
    Algebra algebra;
    Functional tau;
};

/// Trace on F_p[x]/<g^r> from a nonzero functional T on F_p[x]/<g> via the
/// g-adic digit sum. g must be irreducible.
AlgebraTrace local_trace(const Poly& g, unsigned r,
                         const std::optional<Functional>& T = std::nullopt,
                         TChoice tchoice = TChoice::CoeffTop, const std::string& var = "x");

/// Componentwise sum trace on the direct product of the parts.
AlgebraTrace product_trace(const std::vector<AlgebraTrace>& parts);

/// Trace on F_p[x]/<h> for arbitrary nonconstant h: CRT decomposition,
/// local traces per component, pulled back through the projections.
AlgebraTrace univariate_trace(const Poly& h, TChoice tchoice = TChoice::CoeffTop,
                              std::uint64_t seed = 0, const std::string& var = "x");

/// Product trace on R (x) S: value tau_R(alpha_i) * tau_S(beta_j) on the
/// basis pair (i, j).
AlgebraTrace tensor_trace(const AlgebraTrace& R, const AlgebraTrace& S);

/// Trace on F_p[x1,...,xn]/<g1,...,gn>: left fold of tensor_trace over the
/// univariate traces.
AlgebraTrace multivariate_trace(const std::vector<Poly>& moduli,
                                std::vector<std::string> vars = {},
                                TChoice tchoice = TChoice::CoeffTop, std::uint64_t seed = 0);

/// Exhaustive search over all nonzero functionals in lexicographic
/// value-vector order; first verified one, or nullopt when the algebra has
/// no trace. Guarded by p^dim <= 2^20.
std::optional<Functional> search_traces(const Algebra& A, const Guards& guards = {});

/// Unique tau-dual basis: tau(basis_i * dual_j) = delta_ij. Throws
/// "not a basis" when the pairing matrix of the given elements is singular.
std::vector<FpVec> dual_basis(const Algebra& A, const Functional& tau,
                              const std::vector<FpVec>& basis);

/// Determinant of the pairing matrix [tau(e_i * e_j)] of exactly dim
/// elements; nonzero iff they form a basis.
std::uint16_t discriminant(const Algebra& A, const Functional& tau,
                           const std::vector<FpVec>& elems);

/// The unique beta with f(x) = tau(beta * x) for all x.
FpVec represent_functional(const Algebra& A, const Functional& tau, const Functional& f);

/// Verifies f against A unless already flagged; throws std::invalid_argument
/// when f is not a trace.
Functional ensure_verified(const Algebra& A, Functional f);

}  // namespace fvtrace
