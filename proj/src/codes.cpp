#include "fvtrace/codes.hpp"

#include <algorithm>
#include <stdexcept>

namespace fvtrace {

namespace {

void validate_code(const CodeOverR& C) {
    const std::size_t m = C.algebra.dim();
    for (const auto& row : C.rows) {
        if (row.size() != C.n) throw std::invalid_argument("generator row of wrong length");
        for (const auto& e : row) {
            if (e.size() != m) throw std::invalid_argument("element of wrong dimension");
        }
    }
    if (C.codewords) {
        for (const auto& w : *C.codewords) {
            if (w.size() != C.n * m) throw std::invalid_argument("codeword of wrong length");
        }
    }
}

std::vector<FpVec> sorted_unique(std::vector<FpVec> words) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

// Walks all digit tuples in F_p^digits, calling visit() after each odometer
// step; on every step exactly the vectors attached to the touched digit
// positions are added into the running state (rolling a digit p-1 -> 0 is
// the same as adding its vector once, since 1 - p = 1 mod p).
template <typename Step, typename Visit>
void odometer(std::uint32_t p, std::size_t digits, Step&& step, Visit&& visit) {
    std::vector<std::uint16_t> d(digits, 0);
    const std::uint16_t top = std::uint16_t(p - 1);
    visit();
    if (digits == 0) return;
    while (true) {
        std::size_t pos = 0;
        while (pos < digits && d[pos] == top) {
            d[pos] = 0;
            step(pos);
            ++pos;
        }
        if (pos == digits) break;
        ++d[pos];
        step(pos);
        visit();
    }
}

}  // namespace

std::vector<FpVec> enumerate_codewords(const CodeOverR& C, const Guards& guards) {
    validate_code(C);
    if (C.codewords) return *C.codewords;
    const Algebra& A = C.algebra;
    const Field& f = A.field();
    const std::size_t m = A.dim();
    const std::size_t k = C.rows.size();
    if (k == 0) return {FpVec(C.n * m, 0)};
    guards.check(Guards::pow_count(f.p(), m * k), Guards::kCodewordEnum,
                 "codeword enumeration |R|^k");
    // step vector for digit (row ri, basis b): flattened basis_b * row_ri
    std::vector<FpVec> steps(m * k);
    for (std::size_t ri = 0; ri < k; ++ri) {
        for (std::size_t b = 0; b < m; ++b) {
            FpVec flat(C.n * m, 0);
            for (std::size_t j = 0; j < C.n; ++j) {
                FpVec prod = A.mul(A.basis_element(b), C.rows[ri][j]);
                std::copy(prod.begin(), prod.end(), flat.begin() + j * m);
            }
            steps[ri * m + b] = std::move(flat);
        }
    }
    std::vector<FpVec> words;
    words.reserve(std::size_t(Guards::pow_count(f.p(), m * k)));
    FpVec acc(C.n * m, 0);
    odometer(
        f.p(), m * k, [&](std::size_t pos) { vec_axpy(f, acc, 1, steps[pos]); },
        [&] { words.push_back(acc); });
    return sorted_unique(std::move(words));
}

CodeOverR dual_code(const CodeOverR& C, const Guards& guards) {
    validate_code(C);
    const Algebra& A = C.algebra;
    const Field& f = A.field();
    const std::size_t m = A.dim();
    const std::size_t k = C.rows.size();
    guards.check(Guards::pow_count(f.p(), m * C.n), Guards::kDualEnum,
                 "dual-code enumeration |R|^n");
    // orthogonality against the generators implies orthogonality to the
    // whole module they span
    std::vector<std::vector<FpVec>> dot_steps(k);  // [row][digit] element to add
    for (std::size_t g = 0; g < k; ++g) {
        dot_steps[g].resize(m * C.n);
        for (std::size_t j = 0; j < C.n; ++j) {
            for (std::size_t b = 0; b < m; ++b) {
                dot_steps[g][j * m + b] = A.mul(A.basis_element(b), C.rows[g][j]);
            }
        }
    }
    std::vector<FpVec> dots(k, FpVec(m, 0));
    FpVec x(C.n * m, 0);
    std::vector<FpVec> accepted;
    odometer(
        f.p(), C.n * m,
        [&](std::size_t pos) {
            std::uint32_t s = x[pos] + 1u;
            x[pos] = std::uint16_t(s >= f.p() ? s - f.p() : s);
            for (std::size_t g = 0; g < k; ++g) vec_axpy(f, dots[g], 1, dot_steps[g][pos]);
        },
        [&] {
            for (std::size_t g = 0; g < k; ++g) {
                if (!vec_is_zero(dots[g])) return;
            }
            accepted.push_back(x);
        });
    return CodeOverR{A, C.n, {}, sorted_unique(std::move(accepted))};
}

CodeOverF trace_code(const Functional& tau, const CodeOverR& C, const Guards& guards) {
    Functional t = ensure_verified(C.algebra, tau);
    const Field& f = C.algebra.field();
    const std::size_t m = C.algebra.dim();
    std::vector<FpVec> words = enumerate_codewords(C, guards);
    std::vector<FpVec> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        FpVec img(C.n);
        for (std::size_t j = 0; j < C.n; ++j) {
            img[j] = f.ops().dot(t.values.data(), w.data() + j * m, m, std::uint16_t(f.p()));
        }
        out.push_back(std::move(img));
    }
    CodeOverF result;
    result.p = f.p();
    result.n = C.n;
    result.codewords = sorted_unique(std::move(out));
    return result;
}

CodeOverF subfield_subcode(const CodeOverR& C, const Guards& guards) {
    const Algebra& A = C.algebra;
    const Field& f = A.field();
    const std::size_t m = A.dim();
    const FpVec& unit = A.unit();
    std::size_t pivot = 0;
    while (unit[pivot] == 0) ++pivot;
    const std::uint16_t pivot_inv = f.inv(unit[pivot]);
    std::vector<FpVec> words = enumerate_codewords(C, guards);
    std::vector<FpVec> out;
    for (const auto& w : words) {
        FpVec img(C.n);
        bool embedded = true;
        for (std::size_t j = 0; j < C.n && embedded; ++j) {
            const std::uint16_t* e = w.data() + j * m;
            std::uint16_t c = f.mul(e[pivot], pivot_inv);
            for (std::size_t i = 0; i < m; ++i) {
                if (e[i] != f.mul(c, unit[i])) {
                    embedded = false;
                    break;
                }
            }
            img[j] = c;
        }
        if (embedded) out.push_back(std::move(img));
    }
    CodeOverF result;
    result.p = f.p();
    result.n = C.n;
    result.codewords = sorted_unique(std::move(out));
    return result;
}

namespace {

// F_p dual of a materialized F_p code, by enumeration of F_p^n
std::vector<FpVec> fp_dual(const Field& f, std::size_t n, const std::vector<FpVec>& words,
                           const Guards& guards) {
    guards.check(Guards::pow_count(f.p(), n), Guards::kDualEnum, "dual-code enumeration p^n");
    std::vector<FpVec> accepted;
    FpVec v(n, 0);
    odometer(
        f.p(), n,
        [&](std::size_t pos) {
            std::uint32_t s = v[pos] + 1u;
            v[pos] = std::uint16_t(s >= f.p() ? s - f.p() : s);
        },
        [&] {
            for (const auto& w : words) {
                if (vec_dot(f, v, w) != 0) return;
            }
            accepted.push_back(v);
        });
    return sorted_unique(std::move(accepted));
}

}  // namespace

bool check_duality(const Functional& tau, const CodeOverR& C, const Guards& guards) {
    CodeOverF lhs = trace_code(tau, dual_code(C, guards), guards);
    CodeOverF sub = subfield_subcode(C, guards);
    std::vector<FpVec> rhs = fp_dual(C.algebra.field(), C.n, sub.codewords, guards);
    return lhs.codewords == rhs;
}

CodeOverF defining_sequence_code(const Algebra& A, const Functional& tau,
                                 const std::vector<FpVec>& D, const Guards& guards) {
    Functional t = ensure_verified(A, tau);
    if (D.empty()) throw std::invalid_argument("defining sequence must be non-empty");
    const Field& f = A.field();
    const std::size_t m = A.dim();
    const std::size_t n = D.size();
    guards.check(Guards::pow_count(f.p(), m), Guards::kCodewordEnum,
                 "defining-sequence enumeration p^dim");
    // word_j is linear in x: row k of the step table is (tau(basis_k d_j))_j
    std::vector<FpVec> steps(m, FpVec(n));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            steps[k][j] = apply_functional(A, t, A.mul(A.basis_element(k), D[j]));
        }
    }
    std::vector<FpVec> words;
    words.reserve(std::size_t(Guards::pow_count(f.p(), m)));
    FpVec acc(n, 0);
    odometer(
        f.p(), m, [&](std::size_t pos) { vec_axpy(f, acc, 1, steps[pos]); },
        [&] { words.push_back(acc); });
    CodeOverF result;
    result.p = f.p();
    result.n = n;
    result.codewords = sorted_unique(std::move(words));
    for (auto& s : steps) result.generator_rows.push_back(std::move(s));
    return result;
}

CodeOverF subfield_code(const CodeOverR& C, const Functional& tau, const std::vector<FpVec>& basis,
                        const Guards& guards) {
    validate_code(C);
    Functional t = ensure_verified(C.algebra, tau);
    const Algebra& A = C.algebra;
    const Field& f = A.field();
    if (discriminant(A, t, basis) == 0) {
        throw std::invalid_argument("not a basis: discriminant is zero");
    }
    std::vector<FpVec> stacked;
    for (const auto& row : C.rows) {
        for (const auto& alpha : basis) {
            FpVec r(C.n);
            for (std::size_t j = 0; j < C.n; ++j) {
                r[j] = apply_functional(A, t, A.mul(row[j], alpha));
            }
            stacked.push_back(std::move(r));
        }
    }
    // materialize the F_p row space from an independent row set: reduce each
    // stacked row against the pivots kept so far, keep what survives
    std::vector<FpVec> gens;
    std::vector<std::size_t> pivot_cols;
    for (const auto& r : stacked) {
        FpVec v = r;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            std::uint16_t c = v[pivot_cols[g]];
            if (c) vec_axpy(f, v, f.neg(c), gens[g]);
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv] == 0) ++piv;
        if (piv == v.size()) continue;
        std::uint16_t inv = f.inv(v[piv]);
        if (inv != 1) v = vec_scale(f, inv, v);
        gens.push_back(std::move(v));
        pivot_cols.push_back(piv);
    }
    guards.check(Guards::pow_count(f.p(), gens.size()), Guards::kCodewordEnum,
                 "row-space enumeration p^rank");
    std::vector<FpVec> words;
    FpVec acc(C.n, 0);
    odometer(
        f.p(), gens.size(), [&](std::size_t pos) { vec_axpy(f, acc, 1, gens[pos]); },
        [&] { words.push_back(acc); });
    CodeOverF result;
    result.p = f.p();
    result.n = C.n;
    result.codewords = sorted_unique(std::move(words));
    result.generator_rows = std::move(stacked);
    return result;
}

CodeParams code_params(const CodeOverF& C, const Guards& guards) {
    if (C.codewords.empty()) throw std::invalid_argument("empty code has no parameters");
    guards.check(double(C.codewords.size()), Guards::kCodewordEnum, "parameter computation |C|");
    CodeParams out;
    out.n = C.n;
    std::size_t size = C.codewords.size();
    std::size_t k = 0;
    while (size % C.p == 0) {
        size /= C.p;
        ++k;
    }
    if (size != 1) {
        throw std::invalid_argument("code size is not a power of p: not linear");
    }
    out.k = k;
    if (C.codewords.size() == 1) return out;  // zero code: d stays infinity
    std::size_t best = C.n + 1;
    for (const auto& w : C.codewords) {
        std::size_t weight = 0;
        for (std::uint16_t v : w) weight += (v != 0);
        if (weight != 0 && weight < best) best = weight;
    }
    out.d = best;
    return out;
}

std::optional<std::size_t> quasicyclic_index(const CodeOverF& C) {
    if (C.n == 0) return std::nullopt;
    std::vector<FpVec> sorted = sorted_unique(C.codewords);
    for (std::size_t l = 1; l < C.n; ++l) {
        if (C.n % l != 0) continue;
        bool invariant = true;
        for (const auto& w : sorted) {
            FpVec shifted(C.n);
            for (std::size_t i = 0; i < C.n; ++i) shifted[(i + l) % C.n] = w[i];
            if (!std::binary_search(sorted.begin(), sorted.end(), shifted)) {
                invariant = false;
                break;
            }
        }
        if (invariant) return l;
    }
    return std::nullopt;
}

}  // namespace fvtrace
