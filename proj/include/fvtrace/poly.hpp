#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fvtrace/fp.hpp"

namespace fvtrace {

/// Univariate polynomial over F_p. Coefficients are stored in ascending
/// degree order with no trailing zeros; the zero polynomial is the empty
/// sequence and reports degree -1 (the "minus infinity" sentinel).
class Poly {
public:
    explicit Poly(Field f) : f_(f) {}
    Poly(Field f, FpVec coeffs);

    static Poly from_ints(const Field& f, const std::vector<long long>& coeffs);
    static Poly constant(const Field& f, std::uint16_t c);
    static Poly monomial(const Field& f, std::size_t deg, std::uint16_t c = 1);
    static Poly x(const Field& f) { return monomial(f, 1); }

    const Field& field() const noexcept { return f_; }
    const FpVec& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return int(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    std::uint16_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    std::uint16_t lc() const noexcept { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const noexcept { return lc() == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    // (quotient, remainder); throws on zero divisor
    std::pair<Poly, Poly> divmod(const Poly& o) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }

    Poly monic() const;  // zero stays zero
    Poly derivative() const;
    Poly pow(unsigned e) const;
    std::uint16_t eval(std::uint16_t x) const;

    bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // (degree, ascending coefficient sequence) ordering; used for the
    // deterministic factor / CRT component order
    bool operator<(const Poly& o) const;

    // conventional ascending rendering, e.g. "1 + x^2"
    std::string str(const std::string& var = "x") const;

private:
    Field f_;
    FpVec c_;
    void trim();
};

// base^e mod m, exponent by repeated squaring
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

struct ExtGcd {
    Poly g, u, v;  // g = gcd (monic), u*a + v*b = g
};
ExtGcd poly_gcd_ext(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);

/// True iff g is irreducible over its prime field; distinct-degree sieve via
/// x^(p^k) mod g. Throws on constant input.
bool is_irreducible(const Poly& g);

struct FactorPair {
    Poly factor;            // monic irreducible
    unsigned multiplicity;  // >= 1
};

struct Factorization {
    std::uint16_t unit;  // leading coefficient of the input
    std::vector<FactorPair> factors;  // sorted by (degree, coefficient sequence)
};

/// Complete factorization into monic irreducibles: square-free decomposition
/// (with the char-p p-th-root branch), distinct-degree, then equal-degree
/// splitting (Cantor–Zassenhaus for odd p, the additive trace-polynomial
/// variant for p = 2). The equal-degree stage is the only randomized part and
/// is seeded deterministically.
Factorization factor(const Poly& h, std::uint64_t seed = 0);

/// Digits (p_0, ..., p_{r-1}) with deg p_i < deg g and sum p_i * g^i = pval.
/// Requires deg pval < r * deg g.
std::vector<Poly> g_adic_digits(const Poly& pval, const Poly& g, unsigned r);

}  // namespace fvtrace
