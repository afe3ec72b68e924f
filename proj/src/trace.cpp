#include "fvtrace/trace.hpp"

#include <stdexcept>
#include <utility>

namespace fvtrace {

std::uint16_t apply_functional(const Algebra& A, const Functional& f, const FpVec& x) {
    if (f.values.size() != A.dim() || x.size() != A.dim()) {
        throw std::invalid_argument("dimension mismatch");
    }
    return vec_dot(A.field(), f.values, x);
}

Mat gram_matrix(const Algebra& A, const Functional& f) {
    if (f.values.size() != A.dim()) throw std::invalid_argument("dimension mismatch");
    const std::size_t m = A.dim();
    Mat g(A.field(), m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::uint16_t v = vec_dot(A.field(), f.values, A.table_entry(i, j));
            g.at(i, j) = v;
            g.at(j, i) = v;  // symmetric by commutativity
        }
    }
    return g;
}

VerifyOutcome verify_trace(const Algebra& A, const Functional& f) {
    if (vec_is_zero(f.values)) {
        throw std::invalid_argument("zero functional: a trace must be a non-zero linear map");
    }
    Mat gram = gram_matrix(A, f);
    std::uint16_t d = gram.det();
    if (d != 0) return {true, std::move(gram), d, {}};
    FpVec witness = *gram.null_vector();
    return {false, std::move(gram), 0, std::move(witness)};
}

Functional ensure_verified(const Algebra& A, Functional f) {
    if (f.values.size() != A.dim()) throw std::invalid_argument("dimension mismatch");
    if (!f.verified) {
        if (!verify_trace(A, f).verified) {
            throw std::invalid_argument("functional is not a trace (Gram matrix singular)");
        }
        f.verified = true;
    }
    return f;
}

bool ideal_oracle(const Algebra& A, const Functional& f, const Guards& guards) {
    if (f.values.size() != A.dim()) throw std::invalid_argument("dimension mismatch");
    const std::size_t m = A.dim();
    guards.check(Guards::pow_count(A.field().p(), m), Guards::kIdealOracle, "ideal-oracle exhaustion p^dim");
    // Exhausts all nonzero y and tests f on every basis multiple, through the
    // structure constants directly; intentionally shares nothing with the
    // Gram-determinant route.
    FpVec y(m, 0);
    const std::uint16_t top = std::uint16_t(A.field().p() - 1);
    while (true) {
        std::size_t pos = 0;
        while (pos < m && y[pos] == top) {
            y[pos] = 0;
            ++pos;
        }
        if (pos == m) break;
        ++y[pos];
        bool all_zero = true;
        for (std::size_t i = 0; i < m && all_zero; ++i) {
            FpVec prod = A.mul(A.basis_element(i), y);
            if (apply_functional(A, f, prod) != 0) all_zero = false;
        }
        if (all_zero) return false;  // y generates a nonzero ideal inside ker f
    }
    return true;
}

namespace {

Functional default_seed_functional(const Poly& g, TChoice tchoice) {
    const Field& f = g.field();
    const std::size_t n = std::size_t(g.degree());
    Functional T;
    T.values.assign(n, 0);
    if (tchoice == TChoice::CoeffTop) {
        T.values[n - 1] = 1;
    } else {
        Algebra Q = Algebra::from_univariate_quotient(g);
        for (std::size_t k = 0; k < n; ++k) {
            std::uint16_t tr = 0;
            for (std::size_t i = 0; i < n; ++i) tr = f.add(tr, Q.table_entry(k, i)[i]);
            T.values[k] = tr;
        }
        if (vec_is_zero(T.values)) {
            throw std::logic_error("field trace vanished on an irreducible quotient");
        }
    }
    return T;
}

Functional verified_or_die(const Algebra& A, Functional tau, const char* what) {
    VerifyOutcome out = verify_trace(A, tau);
    if (!out.verified) {
        throw std::logic_error(std::string(what) + ": constructed functional failed verification");
    }
    tau.verified = true;
    return tau;
}

}  // namespace

AlgebraTrace local_trace(const Poly& g, unsigned r, const std::optional<Functional>& T,
                         TChoice tchoice, const std::string& var) {
    if (r < 1) throw std::invalid_argument("exponent r must be at least 1");
    if (!is_irreducible(g)) throw std::invalid_argument("local trace needs an irreducible modulus");
    const Field& f = g.field();
    const Poly gm = g.monic();
    const std::size_t n = std::size_t(gm.degree());

    Functional seed;
    if (T) {
        if (T->values.size() != n) throw std::invalid_argument("seed functional has wrong dimension");
        if (vec_is_zero(T->values)) throw std::invalid_argument("seed functional must be non-zero");
        seed = *T;
    } else {
        seed = default_seed_functional(gm, tchoice);
    }

    Algebra A = Algebra::from_univariate_quotient(gm.pow(r), var);
    Functional tau;
    tau.values.assign(n * r, 0);
    for (std::size_t k = 0; k < n * r; ++k) {
        std::vector<Poly> digits = g_adic_digits(Poly::monomial(f, k), gm, r);
        std::uint16_t v = 0;
        for (const Poly& d : digits) {
            FpVec coeffs(n, 0);
            for (std::size_t i = 0; i < n; ++i) coeffs[i] = d.coeff(i);
            v = f.add(v, vec_dot(f, seed.values, coeffs));
        }
        tau.values[k] = v;
    }
    return {A, verified_or_die(A, std::move(tau), "local_trace")};
}

AlgebraTrace product_trace(const std::vector<AlgebraTrace>& parts) {
    if (parts.empty()) throw std::invalid_argument("product trace of empty list");
    std::vector<Algebra> algebras;
    Functional tau;
    for (const auto& part : parts) {
        Functional checked = ensure_verified(part.algebra, part.tau);
        algebras.push_back(part.algebra);
        tau.values.insert(tau.values.end(), checked.values.begin(), checked.values.end());
    }
    Algebra A = Algebra::direct_product(algebras);
    return {A, verified_or_die(A, std::move(tau), "product_trace")};
}

AlgebraTrace univariate_trace(const Poly& h, TChoice tchoice, std::uint64_t seed,
                              const std::string& var) {
    if (h.degree() < 1) throw std::invalid_argument("quotient modulus must have degree >= 1");
    const Field& f = h.field();
    CrtDecomposition crt = crt_decompose(h, seed);
    std::vector<AlgebraTrace> locals;
    locals.reserve(crt.components().size());
    for (const auto& comp : crt.components()) {
        locals.push_back(local_trace(comp.h, comp.r, std::nullopt, tchoice));
    }
    Algebra A = Algebra::from_univariate_quotient(h, var);
    Functional tau;
    tau.values.assign(A.dim(), 0);
    for (std::size_t k = 0; k < A.dim(); ++k) {
        FpVec basis(A.dim(), 0);
        basis[k] = 1;
        std::uint16_t v = 0;
        for (std::size_t c = 0; c < locals.size(); ++c) {
            FpVec img = crt.project(c, basis);
            v = f.add(v, apply_functional(locals[c].algebra, locals[c].tau, img));
        }
        tau.values[k] = v;
    }
    return {A, verified_or_die(A, std::move(tau), "univariate_trace")};
}

AlgebraTrace tensor_trace(const AlgebraTrace& R, const AlgebraTrace& S) {
    R.algebra.field().require_same(S.algebra.field());
    Functional tr = ensure_verified(R.algebra, R.tau);
    Functional ts = ensure_verified(S.algebra, S.tau);
    const Field& f = R.algebra.field();
    const std::size_t m = R.algebra.dim(), n = S.algebra.dim();
    Algebra A = Algebra::tensor_product(R.algebra, S.algebra);
    Functional tau;
    tau.values.assign(m * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            tau.values[j * m + i] = f.mul(tr.values[i], ts.values[j]);
        }
    }
    return {A, verified_or_die(A, std::move(tau), "tensor_trace")};
}

AlgebraTrace multivariate_trace(const std::vector<Poly>& moduli, std::vector<std::string> vars,
                                TChoice tchoice, std::uint64_t seed) {
    if (moduli.empty()) throw std::invalid_argument("multivariate trace needs at least one modulus");
    if (vars.empty()) {
        if (moduli.size() == 1) {
            vars = {"x"};
        } else {
            for (std::size_t i = 0; i < moduli.size(); ++i) vars.push_back("x" + std::to_string(i + 1));
        }
    }
    if (vars.size() != moduli.size()) throw std::invalid_argument("one variable name per modulus");
    AlgebraTrace acc = univariate_trace(moduli[0], tchoice, seed, vars[0]);
    for (std::size_t i = 1; i < moduli.size(); ++i) {
        acc = tensor_trace(acc, univariate_trace(moduli[i], tchoice, seed, vars[i]));
    }
    return acc;
}

std::optional<Functional> search_traces(const Algebra& A, const Guards& guards) {
    const std::size_t m = A.dim();
    const std::uint32_t p = A.field().p();
    const double total = Guards::pow_count(p, m);
    guards.check(total, Guards::kFunctionalSearch, "trace-search exhaustion p^dim");
    const std::uint64_t count = std::uint64_t(total);
    for (std::uint64_t c = 1; c < count; ++c) {
        Functional f;
        f.values.assign(m, 0);
        std::uint64_t rest = c;
        for (std::size_t i = m; i-- > 0;) {  // big-endian digits: lexicographic order
            f.values[i] = std::uint16_t(rest % p);
            rest /= p;
        }
        if (gram_matrix(A, f).det() != 0) {
            f.verified = true;
            return f;
        }
    }
    return std::nullopt;
}

namespace {

Mat pairing_matrix(const Algebra& A, const Functional& tau, const std::vector<FpVec>& elems) {
    const std::size_t n = elems.size();
    Mat g(A.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::uint16_t v = apply_functional(A, tau, A.mul(elems[i], elems[j]));
            g.at(i, j) = v;
            g.at(j, i) = v;
        }
    }
    return g;
}

}  // namespace

std::vector<FpVec> dual_basis(const Algebra& A, const Functional& tau,
                              const std::vector<FpVec>& basis) {
    Functional t = ensure_verified(A, tau);
    if (basis.size() != A.dim()) throw std::invalid_argument("basis must have dim elements");
    Mat g = pairing_matrix(A, t, basis);
    auto inv = g.inverse();
    if (!inv) throw std::invalid_argument("not a basis: discriminant is zero");
    std::vector<FpVec> duals;
    duals.reserve(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        FpVec beta(A.dim(), 0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            vec_axpy(A.field(), beta, inv->at(k, j), basis[k]);
        }
        duals.push_back(std::move(beta));
    }
    return duals;
}

std::uint16_t discriminant(const Algebra& A, const Functional& tau,
                           const std::vector<FpVec>& elems) {
    Functional t = ensure_verified(A, tau);
    if (elems.size() != A.dim()) {
        throw std::invalid_argument("discriminant needs exactly dim elements");
    }
    return pairing_matrix(A, t, elems).det();
}

FpVec represent_functional(const Algebra& A, const Functional& tau, const Functional& f) {
    Functional t = ensure_verified(A, tau);
    if (f.values.size() != A.dim()) throw std::invalid_argument("dimension mismatch");
    Mat g = gram_matrix(A, t);
    auto beta = g.solve(f.values);
    if (!beta) throw std::logic_error("Gram system unsolvable for a verified trace");
    return *beta;
}

}  // namespace fvtrace
