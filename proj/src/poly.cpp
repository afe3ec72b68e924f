#include "fvtrace/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace fvtrace {

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly::Poly(Field f, FpVec coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

Poly Poly::from_ints(const Field& f, const std::vector<long long>& coeffs) {
    FpVec c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = f.from_int(coeffs[i]);
    return Poly(f, std::move(c));
}

Poly Poly::constant(const Field& f, std::uint16_t c) {
    return Poly(f, c == 0 ? FpVec{} : FpVec{c});
}

Poly Poly::monomial(const Field& f, std::size_t deg, std::uint16_t c) {
    if (c == 0) return Poly(f);
    FpVec v(deg + 1, 0);
    v[deg] = c;
    return Poly(f, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
    f_.require_same(o.f_);
    FpVec out(std::max(c_.size(), o.c_.size()), 0);
    std::copy(c_.begin(), c_.end(), out.begin());
    f_.ops().axpy(out.data(), 1, o.c_.data(), o.c_.size(), std::uint16_t(f_.p()));
    return Poly(f_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    f_.require_same(o.f_);
    FpVec out(std::max(c_.size(), o.c_.size()), 0);
    std::copy(c_.begin(), c_.end(), out.begin());
    f_.ops().axpy(out.data(), f_.neg(1), o.c_.data(), o.c_.size(), std::uint16_t(f_.p()));
    return Poly(f_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    f_.require_same(o.f_);
    if (is_zero() || o.is_zero()) return Poly(f_);
    FpVec out(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i]) f_.ops().axpy(out.data() + i, c_[i], o.c_.data(), o.c_.size(), std::uint16_t(f_.p()));
    }
    return Poly(f_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
    f_.require_same(o.f_);
    if (o.is_zero()) throw std::domain_error("division by zero polynomial");
    if (degree() < o.degree()) return {Poly(f_), *this};
    const std::size_t db = std::size_t(o.degree());
    FpVec rem = c_;
    FpVec quot(c_.size() - db, 0);
    const std::uint16_t lc_inv = f_.inv(o.lc());
    for (std::size_t k = rem.size() - db; k-- > 0;) {
        std::uint16_t q = f_.mul(rem[k + db], lc_inv);
        if (q == 0) continue;
        quot[k] = q;
        f_.ops().axpy(rem.data() + k, f_.neg(q), o.c_.data(), o.c_.size(), std::uint16_t(f_.p()));
    }
    return {Poly(f_, std::move(quot)), Poly(f_, std::move(rem))};
}

Poly Poly::monic() const {
    if (is_zero() || lc() == 1) return *this;
    std::uint16_t inv = f_.inv(lc());
    FpVec out(c_.size(), 0);
    f_.ops().axpy(out.data(), inv, c_.data(), c_.size(), std::uint16_t(f_.p()));
    return Poly(f_, std::move(out));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    FpVec out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        out[i - 1] = f_.mul(c_[i], std::uint16_t(i % f_.p()));
    }
    return Poly(f_, std::move(out));
}

Poly Poly::pow(unsigned e) const {
    Poly result = Poly::constant(f_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::uint16_t Poly::eval(std::uint16_t x) const {
    std::uint16_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = f_.add(f_.mul(acc, x), c_[i]);
    }
    return acc;
}

bool Poly::operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) out += std::to_string(c_[i]);
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result = Poly::constant(base.field(), 1) % m;
    Poly b = base % m;
    while (e > 0) {
        if (e & 1) result = (result * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return result;
}

ExtGcd poly_gcd_ext(const Poly& a, const Poly& b) {
    a.field().require_same(b.field());
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    const Field& f = a.field();
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::constant(f, 1), u1 = Poly(f);
    Poly v0 = Poly(f), v1 = Poly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        Poly u2 = u0 - q * u1;
        Poly v2 = v0 - q * v1;
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    // normalize monic
    std::uint16_t inv = f.inv(r0.lc());
    Poly scale = Poly::constant(f, inv);
    return {r0 * scale, u0 * scale, v0 * scale};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    a.field().require_same(b.field());
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r = r0 % r1;
        r0 = r1;
        r1 = r;
    }
    return r0.monic();
}

bool is_irreducible(const Poly& g) {
    if (g.degree() < 1) throw std::invalid_argument("irreducibility test needs degree >= 1");
    const Field& f = g.field();
    const Poly gm = g.monic();
    const int n = gm.degree();
    if (n == 1) return true;
    const Poly x = Poly::x(f);
    Poly h = x;  // x^(p^k) mod g, updated per round
    for (int k = 1; 2 * k <= n; ++k) {
        h = powmod(h, f.p(), gm);
        Poly d = poly_gcd(h - x, gm);
        if (d.degree() != 0) return false;  // factor of degree dividing k
    }
    return true;
}

namespace {

// c(x) with all exponents divisible by p is v(x)^p with v(x) = c(x^(1/p));
// over the prime field coefficients are their own p-th roots.
Poly pth_root(const Poly& c) {
    const std::uint32_t p = c.field().p();
    FpVec out(c.coeffs().size() / p + 1, 0);
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
        if (c.coeff(i) == 0) continue;
        out[i / p] = c.coeff(i);
    }
    return Poly(c.field(), std::move(out));
}

// monic square-free decomposition: list of (g, e) with g monic square-free,
// pairwise coprime, and prod g^e equal to the input
std::vector<std::pair<Poly, unsigned>> squarefree_decompose(const Poly& f_in) {
    const Field& f = f_in.field();
    const std::uint32_t p = f.p();
    std::vector<std::pair<Poly, unsigned>> out;
    Poly fd = f_in.derivative();
    if (fd.is_zero()) {
        for (auto& [s, e] : squarefree_decompose(pth_root(f_in).monic())) {
            out.emplace_back(s, e * p);
        }
        return out;
    }
    Poly c = poly_gcd(f_in, fd);
    Poly w = f_in / c;
    w = w.monic();
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, c);
        Poly z = (w / y).monic();
        if (z.degree() > 0) out.emplace_back(z, i);
        c = (c / y).monic();
        w = y;
        ++i;
    }
    if (c.degree() > 0) {  // residual multiplicities divisible by p
        for (auto& [s, e] : squarefree_decompose(pth_root(c).monic())) {
            out.emplace_back(s, e * p);
        }
    }
    return out;
}

// distinct-degree stage on square-free monic input: list of (product, d)
// where product collects all irreducible factors of degree d
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& sf) {
    const Field& f = sf.field();
    std::vector<std::pair<Poly, unsigned>> out;
    const Poly x = Poly::x(f);
    Poly h = x;
    Poly rest = sf;
    for (unsigned d = 1; rest.degree() >= int(2 * d); ++d) {
        h = powmod(h, f.p(), rest);
        Poly g = poly_gcd(h - x, rest);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            rest = (rest / g).monic();
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, unsigned(rest.degree()));
    return out;
}

// random polynomial of degree < max_deg (possibly zero)
Poly random_poly(const Field& f, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.p() - 1);
    FpVec c(std::size_t(max_deg), 0);
    for (auto& v : c) v = std::uint16_t(dist(rng));
    return Poly(f, std::move(c));
}

// equal-degree splitting of a square-free monic product of irreducibles of
// degree d (Cantor–Zassenhaus; trace polynomial for p = 2). The (p^d - 1)/2
// exponent is taken as norm-then-(p-1)/2 so exponents never exceed p.
void equal_degree(const Poly& prod, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Field& f = prod.field();
    if (prod.degree() == int(d)) {
        out.push_back(prod);
        return;
    }
    const unsigned attempts_max = 512;
    for (unsigned attempt = 0; attempt < attempts_max; ++attempt) {
        Poly a = random_poly(f, prod.degree(), rng);
        if (a.degree() < 1) continue;
        Poly g = poly_gcd(a, prod);
        if (g.degree() == 0) {
            if (f.p() == 2) {
                // T(a) = a + a^2 + ... + a^(2^(d-1))
                Poly t = a % prod;
                Poly acc = t;
                for (unsigned i = 1; i < d; ++i) {
                    t = (t * t) % prod;
                    acc = acc + t;
                }
                g = poly_gcd(acc, prod);
            } else {
                // norm N(a) = a^(1 + p + ... + p^(d-1)), then N(a)^((p-1)/2) - 1
                Poly t = a % prod;
                Poly norm = t;
                for (unsigned i = 1; i < d; ++i) {
                    t = powmod(t, f.p(), prod);
                    norm = (norm * t) % prod;
                }
                Poly b = powmod(norm, (f.p() - 1) / 2, prod) - Poly::constant(f, 1);
                g = poly_gcd(b, prod);
            }
        }
        if (g.degree() > 0 && g.degree() < prod.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree((prod / g).monic(), d, rng, out);
            return;
        }
    }
    throw std::runtime_error("equal-degree splitting failed to converge");
}

}  // namespace

Factorization factor(const Poly& h, std::uint64_t seed) {
    if (h.degree() < 1) throw std::invalid_argument("factorization needs degree >= 1");
    Factorization result;
    result.unit = h.lc();
    std::mt19937_64 rng(seed);
    for (auto& [sf, e] : squarefree_decompose(h.monic())) {
        for (auto& [prod, d] : distinct_degree(sf)) {
            std::vector<Poly> irr;
            equal_degree(prod, d, rng, irr);
            for (auto& g : irr) result.factors.push_back({g, e});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const FactorPair& a, const FactorPair& b) { return a.factor < b.factor; });
    return result;
}

std::vector<Poly> g_adic_digits(const Poly& pval, const Poly& g, unsigned r) {
    if (g.degree() < 1) throw std::invalid_argument("digit base must have degree >= 1");
    pval.field().require_same(g.field());
    if (pval.degree() >= int(r) * g.degree()) {
        throw std::invalid_argument("degree bound violated: deg pval must be below r * deg g");
    }
    std::vector<Poly> digits;
    digits.reserve(r);
    Poly rest = pval;
    for (unsigned i = 0; i < r; ++i) {
        auto [q, rem] = rest.divmod(g);
        digits.push_back(rem);
        rest = q;
    }
    return digits;
}

}  // namespace fvtrace
