#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fvtrace/codes.hpp"
#include "helpers.hpp"

using namespace fvtrace;
using th::P;
using th::V;

namespace {

// R_2 = F_2[x]/<x^3 - x> with its c-coefficient trace
struct R2Setup {
    Algebra algebra;
    Functional tau;
};

R2Setup r2_setup() {
    Field f2(2);
    AlgebraTrace t = univariate_trace(Poly::from_ints(f2, {0, -1, 0, 1}));
    return {t.algebra, t.tau};
}

CodeOverR make_code(const Algebra& A, std::vector<std::vector<FpVec>> rows, std::size_t n) {
    return CodeOverR{A, n, std::move(rows), std::nullopt};
}

FpVec flatten(const std::vector<FpVec>& elems) {
    FpVec out;
    for (const auto& e : elems) out.insert(out.end(), e.begin(), e.end());
    return out;
}

// paper defining sequence D = {1, u, 1+u, 1+u^2, u+u^2, 1+u+u^2}
std::vector<FpVec> paper_sequence() {
    return {V({1, 0, 0}), V({0, 1, 0}), V({1, 1, 0}),
            V({1, 0, 1}), V({0, 1, 1}), V({1, 1, 1})};
}

bool closed_under_addition(const Field& f, const std::vector<FpVec>& words) {
    for (const auto& a : words) {
        for (const auto& b : words) {
            if (!std::binary_search(words.begin(), words.end(), vec_add(f, a, b))) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("enumerate_codewords examples") {
    auto [A, tau] = r2_setup();
    SUBCASE("zero generator row over length 2") {
        CodeOverR C = make_code(A, {{A.zero_element(), A.zero_element()}}, 2);
        auto words = enumerate_codewords(C);
        REQUIRE(words.size() == 1);
        CHECK(vec_is_zero(words[0]));
    }
    SUBCASE("unit row of length 1 spans all 8 elements") {
        CodeOverR C = make_code(A, {{A.unit()}}, 1);
        CHECK(enumerate_codewords(C).size() == 8);
    }
    SUBCASE("row (1, u) gives 8 codewords") {
        CodeOverR C = make_code(A, {{A.unit(), V({0, 1, 0})}}, 2);
        auto words = enumerate_codewords(C);
        CHECK(words.size() == 8);
        // oracle: multiply the row by every scalar directly
        std::vector<FpVec> expect;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    FpVec x = V({a, b, c});
                    expect.push_back(flatten({x, A.mul(x, V({0, 1, 0}))}));
                }
        std::sort(expect.begin(), expect.end());
        CHECK(words == expect);
    }
    SUBCASE("guard rejects oversized enumerations") {
        Field f2(2);
        Algebra big = Algebra::from_univariate_quotient(Poly::monomial(f2, 12));
        CodeOverR C = make_code(big, {{big.unit()}, {big.unit()}}, 1);
        CHECK_THROWS_AS(enumerate_codewords(C), GuardExceeded);
    }
}

TEST_CASE("dual_code examples") {
    Field f2(2);
    Algebra F2 = Algebra::from_univariate_quotient(P(f2, {0, 1}));
    SUBCASE("full module has only the zero dual") {
        auto [A, tau] = r2_setup();
        CodeOverR C = make_code(A, {{A.unit()}}, 1);
        CodeOverR D = dual_code(C);
        REQUIRE(D.codewords.has_value());
        REQUIRE(D.codewords->size() == 1);
        CHECK(vec_is_zero((*D.codewords)[0]));
    }
    SUBCASE("zero code dualizes to the full space") {
        auto [A, tau] = r2_setup();
        CodeOverR C = make_code(A, {}, 2);
        CodeOverR D = dual_code(C);
        CHECK(D.codewords->size() == 64);  // |R|^2
    }
    SUBCASE("repetition code over F_2 is self-dual") {
        CodeOverR C = make_code(F2, {{V({1}), V({1})}}, 2);
        CodeOverR D = dual_code(C);
        std::vector<FpVec> expect = {V({0, 0}), V({1, 1})};
        CHECK(*D.codewords == expect);
    }
}

TEST_CASE("trace_code examples") {
    auto [A, tau] = r2_setup();
    SUBCASE("zero code maps to the zero vector") {
        CodeOverR C = make_code(A, {}, 2);
        CodeOverF T = trace_code(tau, C);
        REQUIRE(T.codewords.size() == 1);
        CHECK(T.codewords[0] == V({0, 0}));
    }
    SUBCASE("full module maps onto F_p^n") {
        CodeOverR C = make_code(A, {{A.unit()}}, 1);
        CodeOverF T = trace_code(tau, C);
        CHECK(T.codewords.size() == 2);  // surjectivity of tau
    }
    SUBCASE("row (1, u): image of all 8 scalars") {
        CodeOverR C = make_code(A, {{A.unit(), V({0, 1, 0})}}, 2);
        CodeOverF T = trace_code(tau, C);
        std::vector<FpVec> expect;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    FpVec x = V({a, b, c});
                    FpVec xu = A.mul(x, V({0, 1, 0}));
                    expect.push_back(V({x[2], xu[2]}));  // c-coefficient functional
                }
        std::sort(expect.begin(), expect.end());
        expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
        CHECK(T.codewords == expect);
    }
}

TEST_CASE("subfield_subcode examples") {
    auto [A, tau] = r2_setup();
    SUBCASE("full module restricts to F_p^n") {
        CodeOverR C = make_code(A, {{A.unit()}}, 1);
        CodeOverF S = subfield_subcode(C);
        CHECK(S.codewords == std::vector<FpVec>{V({0}), V({1})});
    }
    SUBCASE("zero code restricts to zero") {
        CodeOverR C = make_code(A, {}, 1);
        CodeOverF S = subfield_subcode(C);
        CHECK(S.codewords == std::vector<FpVec>{V({0})});
    }
    SUBCASE("the ideal <u> meets the embedded field only in zero") {
        CodeOverR C = make_code(A, {{V({0, 1, 0})}}, 1);
        CodeOverF S = subfield_subcode(C);
        CHECK(S.codewords == std::vector<FpVec>{V({0})});
    }
}

TEST_CASE("check_duality examples and randomized theorem check") {
    auto [A, tau] = r2_setup();
    SUBCASE("full module") {
        CodeOverR C = make_code(A, {{A.unit(), A.zero_element()}, {A.zero_element(), A.unit()}}, 2);
        CHECK(check_duality(tau, C));
    }
    SUBCASE("zero code") {
        CodeOverR C = make_code(A, {}, 2);
        CHECK(check_duality(tau, C));
    }
    SUBCASE("randomized codes over R_2") {
        std::mt19937_64 rng(211);
        for (int iter = 0; iter < 25; ++iter) {
            std::size_t n = 1 + rng() % 4;
            std::size_t k = 1 + rng() % 2;
            std::vector<std::vector<FpVec>> rows;
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<FpVec> row;
                for (std::size_t j = 0; j < n; ++j) row.push_back(th::random_vec(A.field(), 3, rng));
                rows.push_back(std::move(row));
            }
            CHECK(check_duality(tau, make_code(A, rows, n)));
        }
    }
}

TEST_CASE("defining sequence code: the [6,3,3] quasicyclic-2 construction") {
    auto [A, tau] = r2_setup();
    CodeOverF C = defining_sequence_code(A, tau, paper_sequence());
    CodeParams params = code_params(C);
    CHECK(params.n == 6);
    CHECK(params.k == 3);
    REQUIRE(params.d.has_value());
    CHECK(*params.d == 3);
    auto qc = quasicyclic_index(C);
    REQUIRE(qc.has_value());
    CHECK(*qc == 2);
}

TEST_CASE("defining sequence code edge cases") {
    auto [A, tau] = r2_setup();
    SUBCASE("all-zero sequence gives the zero code") {
        CodeOverF C = defining_sequence_code(A, tau, {A.zero_element(), A.zero_element()});
        CHECK(C.codewords == std::vector<FpVec>{V({0, 0})});
        CodeParams params = code_params(C);
        CHECK(params.k == 0);
        CHECK_FALSE(params.d.has_value());
    }
    SUBCASE("D = {1} gives the full length-1 code") {
        CodeOverF C = defining_sequence_code(A, tau, {A.unit()});
        CHECK(C.codewords.size() == 2);
    }
    SUBCASE("empty sequence rejected") {
        CHECK_THROWS_AS(defining_sequence_code(A, tau, {}), std::invalid_argument);
    }
    SUBCASE("cardinality divides p^dim") {
        std::mt19937_64 rng(223);
        for (int iter = 0; iter < 20; ++iter) {
            std::size_t n = 1 + rng() % 5;
            std::vector<FpVec> D;
            for (std::size_t j = 0; j < n; ++j) D.push_back(th::random_vec(A.field(), 3, rng));
            CodeOverF C = defining_sequence_code(A, tau, D);
            CHECK(8 % C.codewords.size() == 0);
        }
    }
}

TEST_CASE("subfield_code examples") {
    auto [A, tau] = r2_setup();
    std::vector<FpVec> std_basis = {V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1})};
    SUBCASE("zero row gives the zero code") {
        CodeOverR C = make_code(A, {{A.zero_element(), A.zero_element()}}, 2);
        CodeOverF S = subfield_code(C, tau, std_basis);
        CHECK(S.codewords == std::vector<FpVec>{V({0, 0})});
    }
    SUBCASE("over F_p itself the subfield code is the code") {
        Field f2(2);
        AlgebraTrace id = univariate_trace(P(f2, {0, 1}));
        CodeOverR C = make_code(id.algebra, {{V({1}), V({1})}}, 2);
        CodeOverF S = subfield_code(C, id.tau, {V({1})});
        CHECK(S.codewords == std::vector<FpVec>{V({0, 0}), V({1, 1})});
    }
    SUBCASE("row (1, u): pairing blocks against the definitional expansion") {
        CodeOverR C = make_code(A, {{A.unit(), V({0, 1, 0})}}, 2);
        CodeOverF S = subfield_code(C, tau, std_basis);
        // frozen pairing block rows: tau(g_1j * u^k)
        std::vector<FpVec> expect_rows = {V({0, 0}), V({0, 1}), V({1, 0})};
        CHECK(S.generator_rows == expect_rows);
        // definitional construction: replace entries by coordinate columns
        std::vector<FpVec> expanded = {V({1, 0}), V({0, 1}), V({0, 0})};
        std::vector<FpVec> words;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    FpVec w(2, 0);
                    const int coef[3] = {a, b, c};
                    for (int i = 0; i < 3; ++i)
                        if (coef[i]) w = vec_add(A.field(), w, expanded[std::size_t(i)]);
                    words.push_back(w);
                }
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        CHECK(S.codewords == words);
    }
    SUBCASE("dependent basis rejected") {
        CodeOverR C = make_code(A, {{A.unit()}}, 1);
        std::vector<FpVec> dep = {V({1, 0, 0}), V({1, 0, 0}), V({0, 0, 1})};
        CHECK_THROWS_AS(subfield_code(C, tau, dep), std::invalid_argument);
    }
}

TEST_CASE("subfield_code equals the definitional expansion and ignores the basis choice") {
    std::mt19937_64 rng(227);
    for (std::uint32_t p : {2u, 3u}) {
        Field f(p);
        for (int iter = 0; iter < 12; ++iter) {
            Poly h = th::random_monic(f, 1 + int(rng() % 3), rng);
            AlgebraTrace t = univariate_trace(h);
            const Algebra& A = t.algebra;
            const std::size_t m = A.dim();
            std::size_t n = 1 + rng() % 3;
            std::size_t k = 1 + rng() % 2;
            std::vector<std::vector<FpVec>> rows;
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<FpVec> row;
                for (std::size_t j = 0; j < n; ++j) row.push_back(th::random_vec(f, m, rng));
                rows.push_back(std::move(row));
            }
            CodeOverR C = make_code(A, rows, n);

            // random basis via an invertible matrix
            auto random_basis = [&] {
                while (true) {
                    std::vector<FpVec> basis;
                    for (std::size_t j = 0; j < m; ++j) basis.push_back(th::random_vec(f, m, rng));
                    if (Mat::from_rows(f, basis).rank() == m) return basis;
                }
            };
            std::vector<FpVec> basis1 = random_basis();
            std::vector<FpVec> basis2 = random_basis();
            CodeOverF S1 = subfield_code(C, t.tau, basis1);
            CodeOverF S2 = subfield_code(C, t.tau, basis2);
            CHECK(S1.codewords == S2.codewords);

            // definitional column expansion relative to basis1: coordinates
            // of g_ij in basis1 become the stacked rows
            Mat B = Mat::from_rows(f, basis1).transpose();
            Mat Binv = B.inverse().value();
            std::vector<FpVec> expanded;
            for (const auto& row : rows) {
                for (std::size_t cidx = 0; cidx < m; ++cidx) {
                    FpVec r(n);
                    for (std::size_t j = 0; j < n; ++j) {
                        FpVec coords = Binv.apply(row[j]);
                        r[j] = coords[cidx];
                    }
                    expanded.push_back(std::move(r));
                }
            }
            // materialize the expansion's row space by brute force
            std::vector<FpVec> words;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < expanded.size(); ++i) total *= p;
            for (std::uint64_t cc = 0; cc < total; ++cc) {
                FpVec w(n, 0);
                std::uint64_t rest = cc;
                for (const auto& r : expanded) {
                    std::uint16_t coef = std::uint16_t(rest % p);
                    rest /= p;
                    if (coef) vec_axpy(f, w, coef, r);
                }
                words.push_back(std::move(w));
            }
            std::sort(words.begin(), words.end());
            words.erase(std::unique(words.begin(), words.end()), words.end());
            CHECK(S1.codewords == words);
        }
    }
}

TEST_CASE("trace_code and subfield_subcode are linear") {
    std::mt19937_64 rng(229);
    auto [A, tau] = r2_setup();
    for (int iter = 0; iter < 10; ++iter) {
        std::size_t n = 1 + rng() % 3;
        std::vector<std::vector<FpVec>> rows;
        std::vector<FpVec> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(th::random_vec(A.field(), 3, rng));
        rows.push_back(row);
        CodeOverR C = make_code(A, rows, n);
        CHECK(closed_under_addition(A.field(), trace_code(tau, C).codewords));
        CHECK(closed_under_addition(A.field(), subfield_subcode(C).codewords));
    }
}

TEST_CASE("code_params examples") {
    Field f2(2);
    SUBCASE("zero code of length 6") {
        CodeOverF C{2, 6, {FpVec(6, 0)}, {}};
        CodeParams params = code_params(C);
        CHECK(params.n == 6);
        CHECK(params.k == 0);
        CHECK_FALSE(params.d.has_value());
    }
    SUBCASE("full F_2^3") {
        std::vector<FpVec> words;
        for (int c = 0; c < 8; ++c) words.push_back(V({c & 1, (c >> 1) & 1, (c >> 2) & 1}));
        std::sort(words.begin(), words.end());
        CodeOverF C{2, 3, words, {}};
        CodeParams params = code_params(C);
        CHECK(params.n == 3);
        CHECK(params.k == 3);
        CHECK(*params.d == 1);
    }
    SUBCASE("non-power-of-p cardinality flags a linearity bug") {
        CodeOverF C{2, 2, {V({0, 0}), V({0, 1}), V({1, 0})}, {}};
        CHECK_THROWS_AS(code_params(C), std::invalid_argument);
    }
}

TEST_CASE("quasicyclic_index examples") {
    SUBCASE("full code has index 1") {
        std::vector<FpVec> words;
        for (int c = 0; c < 4; ++c) words.push_back(V({c & 1, (c >> 1) & 1}));
        std::sort(words.begin(), words.end());
        CodeOverF C{2, 2, words, {}};
        auto qc = quasicyclic_index(C);
        REQUIRE(qc.has_value());
        CHECK(*qc == 1);
    }
    SUBCASE("a non-shift-invariant code has none") {
        CodeOverF C{2, 3, {V({0, 0, 0}), V({1, 0, 0})}, {}};
        CHECK_FALSE(quasicyclic_index(C).has_value());
    }
    SUBCASE("shift-by-2 invariant but not cyclic") {
        // {00, 11} repeated pairwise: (1,1,0,0) and shifts by 2
        std::vector<FpVec> words = {V({0, 0, 0, 0}), V({1, 1, 0, 0}), V({0, 0, 1, 1}),
                                    V({1, 1, 1, 1})};
        std::sort(words.begin(), words.end());
        CodeOverF C{2, 4, words, {}};
        auto qc = quasicyclic_index(C);
        REQUIRE(qc.has_value());
        CHECK(*qc == 2);
    }
}
