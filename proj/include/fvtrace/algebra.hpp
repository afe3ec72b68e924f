#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fvtrace/linalg.hpp"
#include "fvtrace/poly.hpp"

namespace fvtrace {

/// How an algebra was built; kept so quotient-specific operations (CRT
/// projections, digit expansions, polynomial representatives) stay available
/// behind the uniform structure-constant representation.
struct Provenance {
    enum class Kind { Explicit, Quotient, Product, Tensor };
    Kind kind = Kind::Explicit;
    std::optional<Poly> modulus;        // Quotient: monic modulus
    std::string var = "x";              // Quotient: generator name
    std::vector<std::size_t> part_dims; // Product / Tensor
    // Quotient / multivariate builds keep the generator list for re-emission.
    std::vector<Poly> moduli;
    std::vector<std::string> vars;
};

/// Finite-dimensional commutative unital F_p-algebra, presented by structure
/// constants over a canonical basis. Elements are plain coordinate vectors
/// (FpVec of length dim()); every operation takes the algebra explicitly.
class Algebra {
public:
    /// Quotient F_p[x]/<h>, canonical basis {1, x, ..., x^(m-1)}. h is
    /// normalized monic internally; requires deg h >= 1.
    static Algebra from_univariate_quotient(const Poly& h, const std::string& var = "x");
    /// Block-diagonal direct product; basis is the concatenation of the
    /// parts' bases in list order.
    static Algebra direct_product(const std::vector<Algebra>& parts);
    /// Tensor product with basis pairs (i, j) in j-major order: all i for
    /// the first j, then the next j, and so on.
    static Algebra tensor_product(const Algebra& A, const Algebra& B);
    /// F_p[x1,...,xn]/<g1(x1),...,gn(xn)> as a left fold of tensor products
    /// over the univariate quotients. Basis labels are monomials.
    static Algebra from_multivariate(const std::vector<Poly>& moduli,
                                     std::vector<std::string> vars = {});
    /// Direct structure-constant input. Validates commutativity and
    /// associativity, and solves for the unit (throws if there is none).
    static Algebra from_table(const Field& f, std::vector<FpVec> table,
                              std::vector<std::string> labels = {});

    const Field& field() const noexcept { return f_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const FpVec& unit() const noexcept { return unit_; }
    const Provenance& provenance() const noexcept { return prov_; }
    /// Coordinates of basis_i * basis_j.
    const FpVec& table_entry(std::size_t i, std::size_t j) const {
        return table_[i * dim_ + j];
    }

    FpVec zero_element() const { return FpVec(dim_, 0); }
    FpVec basis_element(std::size_t i) const;
    FpVec scalar_embed(std::uint16_t c) const { return vec_scale(f_, c, unit_); }

    FpVec mul(const FpVec& a, const FpVec& b) const;
    /// Matrix of the multiplication-by-a operator; column j holds the
    /// coordinates of a * basis_j.
    Mat mult_matrix(const FpVec& a) const;
    /// Monic least-degree polynomial annihilating mult_matrix(a).
    Poly minimal_polynomial(const FpVec& a) const;

    /// Quotient-provenance helpers (throw otherwise).
    FpVec element_from_poly(const Poly& q) const;
    Poly poly_from_element(const FpVec& a) const;

    /// Renders an element against the basis labels, e.g. "1 + u^2".
    std::string element_str(const FpVec& a) const;

    /// Full commutativity / associativity / unit-law check; throws with a
    /// description of the first violation.
    void validate() const;

private:
    Algebra(Field f, std::size_t dim) : f_(f), dim_(dim) {}
    void check_element(const FpVec& a) const;

    Field f_;
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<FpVec> table_;  // dim*dim entries, each of length dim
    FpVec unit_;
    Provenance prov_;
};

struct CrtComponent {
    Poly h;              // monic irreducible
    unsigned r;          // multiplicity
    Poly modulus_power;  // h^r
    Algebra algebra;     // F_p[x]/<h^r>
};

/// CRT decomposition of F_p[x]/<h>: components ordered by (degree of h_i,
/// coefficient sequence). project() reduces the canonical polynomial
/// representative mod h_i^{r_i}.
class CrtDecomposition {
public:
    CrtDecomposition(Poly parent_modulus, std::vector<CrtComponent> components);

    const Poly& parent_modulus() const noexcept { return parent_; }
    const std::vector<CrtComponent>& components() const noexcept { return comps_; }

    FpVec project(std::size_t comp, const FpVec& parent_coords) const;
    /// Stacked matrix of all projections (rows: component coordinates in
    /// order, columns: parent basis); the decomposition is an isomorphism
    /// iff this is square of full rank.
    Mat combined_projection_matrix() const;

private:
    Poly parent_;
    std::vector<CrtComponent> comps_;
};

CrtDecomposition crt_decompose(const Poly& h, std::uint64_t seed = 0);

}  // namespace fvtrace
