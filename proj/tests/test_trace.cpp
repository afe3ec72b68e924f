#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fvtrace/trace.hpp"
#include "helpers.hpp"

using namespace fvtrace;
using th::P;
using th::V;

namespace {

Algebra two_generator_counterexample(const Field& f2) {
    // F_2[x,y]/<x^2, y^2, xy>: basis {1, u, v}, all products of u, v vanish
    std::vector<FpVec> table = {V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1}),
                                V({0, 1, 0}), V({0, 0, 0}), V({0, 0, 0}),
                                V({0, 0, 1}), V({0, 0, 0}), V({0, 0, 0})};
    return Algebra::from_table(f2, table, {"1", "u", "v"});
}

Functional fn(std::initializer_list<int> vals) {
    Functional f;
    f.values = V(vals);
    return f;
}

// random invertible matrix over F_p
Mat random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = std::uint16_t(rng() % f.p());
        if (m.det() != 0) return m;
    }
}

}  // namespace

TEST_CASE("verify_trace examples") {
    Field f2(2);
    Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));  // (1+x)^2
    SUBCASE("tau(a+bu) = a is a trace with identity Gram") {
        VerifyOutcome out = verify_trace(A, fn({1, 0}));
        CHECK(out.verified);
        CHECK(out.det == 1);
        CHECK(out.gram == Mat::identity(f2, 2));
    }
    SUBCASE("sigma(a+bu) = a+b is rejected with witness 1+u") {
        VerifyOutcome out = verify_trace(A, fn({1, 1}));
        CHECK_FALSE(out.verified);
        CHECK(out.det == 0);
        CHECK(out.witness == V({1, 1}));
    }
    SUBCASE("two-generator counterexample rejects the b-coefficient functional") {
        Algebra R = two_generator_counterexample(f2);
        VerifyOutcome out = verify_trace(R, fn({0, 1, 0}));
        CHECK_FALSE(out.verified);
    }
    SUBCASE("zero functional is an error") {
        CHECK_THROWS_AS(verify_trace(A, fn({0, 0})), std::invalid_argument);
    }
}

TEST_CASE("ideal_oracle examples") {
    Field f2(2);
    Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));
    CHECK(ideal_oracle(A, fn({1, 0})));
    CHECK_FALSE(ideal_oracle(A, fn({1, 1})));  // ker(sigma) = <1+u>
    CHECK_FALSE(ideal_oracle(A, fn({0, 0})));  // whole algebra inside the kernel
}

TEST_CASE("ideal_oracle guard") {
    Field f2(2);
    Algebra A = Algebra::from_univariate_quotient(Poly::monomial(f2, 13));  // 2^13 elements
    CHECK_THROWS_AS(ideal_oracle(A, fn({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1})), GuardExceeded);
}

TEST_CASE("local trace examples") {
    Field f2(2);
    SUBCASE("g = 1+x, r = 2: tau(a+bu) = a") {
        AlgebraTrace t = local_trace(P(f2, {1, 1}), 2);
        CHECK(t.tau.values == V({1, 0}));
        CHECK(t.tau.verified);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(apply_functional(t.algebra, t.tau, V({a, b})) == a);
    }
    SUBCASE("g = x, r = 2: tau(a+bw) = a+b") {
        AlgebraTrace t = local_trace(P(f2, {0, 1}), 2);
        CHECK(t.tau.values == V({1, 1}));
    }
    SUBCASE("r = 1, g = x: identity on F_p") {
        AlgebraTrace t = local_trace(P(f2, {0, 1}), 1);
        CHECK(t.tau.values == V({1}));
    }
    SUBCASE("reducible modulus rejected") {
        CHECK_THROWS_AS(local_trace(P(f2, {1, 0, 1}), 2), std::invalid_argument);
    }
    SUBCASE("zero seed functional rejected") {
        Functional zero = fn({0});
        CHECK_THROWS_AS(local_trace(P(f2, {1, 1}), 2, zero), std::invalid_argument);
    }
    SUBCASE("field-trace seed choice also yields a trace") {
        AlgebraTrace t = local_trace(P(f2, {1, 1, 1}), 2, std::nullopt, TChoice::FieldTrace);
        CHECK(t.tau.verified);
        // On F_4 the field trace is (0, 1) on basis {1, x}
        AlgebraTrace u = local_trace(P(f2, {1, 1, 1}), 1, std::nullopt, TChoice::FieldTrace);
        CHECK(u.tau.values == V({0, 1}));
    }
}

TEST_CASE("product trace examples") {
    Field f2(2);
    AlgebraTrace id = local_trace(P(f2, {0, 1}), 1);
    SUBCASE("single component unchanged") {
        AlgebraTrace t = product_trace({id});
        CHECK(t.tau.values == id.tau.values);
    }
    SUBCASE("F_2 x F_2 with identity traces sums the parts") {
        AlgebraTrace t = product_trace({id, id});
        CHECK(t.tau.values == V({1, 1}));
        CHECK(apply_functional(t.algebra, t.tau, V({1, 1})) == 0);
    }
    SUBCASE("F_2 x F_2[x]/<(1+x)^2> concatenates the value vectors") {
        AlgebraTrace loc = local_trace(P(f2, {1, 1}), 2);
        AlgebraTrace t = product_trace({id, loc});
        CHECK(t.tau.values == V({1, 1, 0}));
    }
    SUBCASE("non-trace input rejected") {
        Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));
        AlgebraTrace bad{A, fn({1, 1})};
        CHECK_THROWS_AS(product_trace({bad}), std::invalid_argument);
    }
}

TEST_CASE("univariate trace examples") {
    Field f2(2);
    SUBCASE("x^3 - x reproduces the c-coefficient functional") {
        AlgebraTrace t = univariate_trace(P(f2, {0, -1, 0, 1}));
        CHECK(t.tau.values == V({0, 0, 1}));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    CHECK(apply_functional(t.algebra, t.tau, V({a, b, c})) == c);
    }
    SUBCASE("irreducible degree-1 modulus gives the identity") {
        AlgebraTrace t = univariate_trace(P(f2, {1, 1}));
        CHECK(t.tau.values == V({1}));
    }
    SUBCASE("(x^2+x+1)^2 yields a verified trace with nonsingular 4x4 Gram") {
        AlgebraTrace t = univariate_trace(P(f2, {1, 1, 1}).pow(2));
        CHECK(t.tau.verified);
        VerifyOutcome out = verify_trace(t.algebra, t.tau);
        CHECK(out.gram.rows() == 4);
        CHECK(out.det != 0);
    }
}

TEST_CASE("tensor trace examples") {
    Field f2(2);
    SUBCASE("F[x]/<x^2> tensor F[y]/<y^2> with tau(a+bw)=a+b both sides") {
        AlgebraTrace R = local_trace(P(f2, {0, 1}), 2, std::nullopt, TChoice::CoeffTop, "x");
        AlgebraTrace S = local_trace(P(f2, {0, 1}), 2, std::nullopt, TChoice::CoeffTop, "y");
        AlgebraTrace T = tensor_trace(R, S);
        CHECK(T.tau.values == V({1, 1, 1, 1}));
        // T(a+bu+cv+duv) = a+b+c+d on all 16 elements
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d)
                        CHECK(apply_functional(T.algebra, T.tau, V({a, b, c, d})) ==
                              (a + b + c + d) % 2);
    }
    SUBCASE("tensoring with the identity trace relabels the values") {
        AlgebraTrace R = univariate_trace(P(f2, {0, -1, 0, 1}));
        AlgebraTrace one = local_trace(P(f2, {0, 1}), 1);
        AlgebraTrace T = tensor_trace(R, one);
        CHECK(T.tau.values == R.tau.values);
    }
    SUBCASE("two quartic field factors give a verified dim-4 trace") {
        AlgebraTrace R = local_trace(P(f2, {1, 1, 1}), 1, std::nullopt, TChoice::CoeffTop, "x");
        AlgebraTrace S = local_trace(P(f2, {1, 1, 1}), 1, std::nullopt, TChoice::CoeffTop, "y");
        AlgebraTrace T = tensor_trace(R, S);
        CHECK(T.algebra.dim() == 4);
        CHECK(T.tau.verified);
    }
}

TEST_CASE("multivariate trace examples") {
    Field f2(2);
    SUBCASE("[x^2, y^2] gives the all-ones functional") {
        AlgebraTrace t = multivariate_trace({P(f2, {0, 0, 1}), P(f2, {0, 0, 1})}, {"x", "y"});
        CHECK(t.tau.values == V({1, 1, 1, 1}));
    }
    SUBCASE("[x] gives the identity") {
        AlgebraTrace t = multivariate_trace({P(f2, {0, 1})});
        CHECK(t.tau.values == V({1}));
    }
    SUBCASE("[x^3+x, x^2+1] gives a verified trace on a dim-6 algebra") {
        AlgebraTrace t = multivariate_trace({P(f2, {0, 1, 0, 1}), P(f2, {1, 0, 1})});
        CHECK(t.algebra.dim() == 6);
        CHECK(t.tau.verified);
    }
}

TEST_CASE("every constructor emits a verified trace on randomized inputs") {
    std::mt19937_64 rng(101);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field f(p);
        for (int iter = 0; iter < 12; ++iter) {
            Poly h = th::random_monic(f, 1 + int(rng() % 8), rng);
            AlgebraTrace t = univariate_trace(h);
            CHECK(t.tau.verified);

            Poly g = th::random_irreducible(f, 1 + int(rng() % 2), rng);
            unsigned r = 1 + unsigned(rng() % 3);
            AlgebraTrace loc = local_trace(g, r);
            CHECK(loc.tau.verified);

            AlgebraTrace prod = product_trace({loc, t});
            CHECK(prod.tau.verified);
        }
        // up to 3 tensor factors, total dim <= 16
        for (int iter = 0; iter < 6; ++iter) {
            std::vector<Poly> moduli;
            std::size_t dim = 1;
            int factors = 1 + int(rng() % 3);
            for (int i = 0; i < factors; ++i) {
                int d = 1 + int(rng() % 3);
                if (dim * std::size_t(d) > 16) break;
                moduli.push_back(th::random_monic(f, d, rng));
                dim *= std::size_t(d);
            }
            if (moduli.empty()) continue;
            AlgebraTrace t = multivariate_trace(moduli);
            CHECK(t.tau.verified);
        }
    }
}

TEST_CASE("Gram verdict agrees with the ideal oracle") {
    std::mt19937_64 rng(103);
    int checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
        Field f(p);
        while (checked < 120 || (p == 3 && checked < 240)) {
            int deg = 1 + int(rng() % 4);
            if (Guards::pow_count(p, std::size_t(deg)) > Guards::kIdealOracle) break;
            Poly h = th::random_monic(f, deg, rng);
            Algebra A = Algebra::from_univariate_quotient(h);
            Functional fun;
            fun.values = th::random_vec(f, A.dim(), rng);
            if (vec_is_zero(fun.values)) continue;
            CHECK(verify_trace(A, fun).verified == ideal_oracle(A, fun));
            ++checked;
        }
    }
    CHECK(checked >= 240);
}

TEST_CASE("search_traces examples") {
    Field f2(2);
    SUBCASE("no trace on F_2[x,y]/<x^2,y^2,xy>") {
        Algebra R = two_generator_counterexample(f2);
        CHECK_FALSE(search_traces(R).has_value());
    }
    SUBCASE("finds a trace on F_2[x]/<(1+x)^2>") {
        Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));
        auto found = search_traces(A);
        REQUIRE(found.has_value());
        CHECK(found->verified);
        CHECK(verify_trace(A, *found).verified);
        // lexicographically first trace: (0,1) precedes (1,0)
        CHECK(found->values == V({0, 1}));
    }
    SUBCASE("dim-1 algebra finds the identity") {
        Algebra A = Algebra::from_univariate_quotient(P(f2, {0, 1}));
        auto found = search_traces(A);
        REQUIRE(found.has_value());
        CHECK(found->values == V({1}));
    }
}

TEST_CASE("dual basis examples") {
    Field f2(2);
    SUBCASE("identity Gram: standard basis is self-dual") {
        Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));
        Functional tau = fn({1, 0});
        std::vector<FpVec> basis = {V({1, 0}), V({0, 1})};
        CHECK(dual_basis(A, tau, basis) == basis);
    }
    SUBCASE("F_2[x]/<x^3+x> with the c-coefficient trace") {
        Algebra A = Algebra::from_univariate_quotient(P(f2, {0, 1, 0, 1}));
        Functional tau = fn({0, 0, 1});
        std::vector<FpVec> basis = {V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1})};
        auto duals = dual_basis(A, tau, basis);
        CHECK(duals[0] == V({1, 0, 1}));  // 1 + u^2
        CHECK(duals[1] == V({0, 1, 0}));  // u
        CHECK(duals[2] == V({1, 0, 0}));  // 1
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(apply_functional(A, tau, A.mul(basis[i], duals[j])) == (i == j ? 1 : 0));
        CHECK(dual_basis(A, tau, duals) == basis);  // involution
    }
    SUBCASE("dependent elements are rejected") {
        Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));
        Functional tau = fn({1, 0});
        std::vector<FpVec> dep = {V({1, 0}), V({1, 0})};
        CHECK_THROWS_WITH_AS(dual_basis(A, tau, dep), "not a basis: discriminant is zero",
                             std::invalid_argument);
    }
}

TEST_CASE("dual basis pairing and involution on randomized verified setups") {
    std::mt19937_64 rng(107);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field f(p);
        for (int iter = 0; iter < 15; ++iter) {
            Poly h = th::random_monic(f, 1 + int(rng() % 4), rng);
            AlgebraTrace t = univariate_trace(h);
            const std::size_t m = t.algebra.dim();
            // random basis = random invertible matrix columns
            Mat B = random_invertible(f, m, rng);
            std::vector<FpVec> basis;
            for (std::size_t j = 0; j < m; ++j) basis.push_back(B.col(j));
            auto duals = dual_basis(t.algebra, t.tau, basis);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    CHECK(apply_functional(t.algebra, t.tau, t.algebra.mul(basis[i], duals[j])) ==
                          (i == j ? 1 : 0));
            CHECK(dual_basis(t.algebra, t.tau, duals) == basis);
        }
    }
}

TEST_CASE("discriminant examples and criterion") {
    Field f2(2);
    Algebra A = Algebra::from_univariate_quotient(P(f2, {1, 0, 1}));
    Functional tau = fn({1, 0});
    SUBCASE("standard basis has discriminant 1") {
        CHECK(discriminant(A, tau, {V({1, 0}), V({0, 1})}) == 1);
    }
    SUBCASE("zero element or repetition forces discriminant 0") {
        CHECK(discriminant(A, tau, {V({0, 0}), V({0, 1})}) == 0);
        CHECK(discriminant(A, tau, {V({0, 1}), V({0, 1})}) == 0);
    }
    SUBCASE("wrong count rejected") {
        CHECK_THROWS_AS(discriminant(A, tau, {V({1, 0})}), std::invalid_argument);
    }
    SUBCASE("criterion: nonzero discriminant iff the elements form a basis") {
        std::mt19937_64 rng(109);
        for (std::uint32_t p : {2u, 3u}) {
            Field f(p);
            for (int iter = 0; iter < 40; ++iter) {
                Poly h = th::random_monic(f, 1 + int(rng() % 3), rng);
                AlgebraTrace t = univariate_trace(h);
                const std::size_t m = t.algebra.dim();
                std::vector<FpVec> elems;
                for (std::size_t j = 0; j < m; ++j) elems.push_back(th::random_vec(f, m, rng));
                std::uint16_t disc = discriminant(t.algebra, t.tau, elems);
                CHECK((disc != 0) == (Mat::from_rows(f, elems).rank() == m));
            }
        }
    }
}

TEST_CASE("represent_functional examples") {
    Field f2(2);
    Algebra A = Algebra::from_univariate_quotient(P(f2, {0, 1, 0, 1}));
    Functional tau = fn({0, 0, 1});
    SUBCASE("tau itself is represented by the unit") {
        CHECK(represent_functional(A, tau, tau) == A.unit());
    }
    SUBCASE("the zero functional is represented by zero") {
        CHECK(represent_functional(A, tau, fn({0, 0, 0})) == V({0, 0, 0}));
    }
    SUBCASE("the coefficient-of-1 projection") {
        Functional pi0 = fn({1, 0, 0});
        FpVec beta = represent_functional(A, tau, pi0);
        CHECK(beta == V({1, 0, 1}));  // 1 + u^2
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(apply_functional(A, tau, A.mul(beta, A.basis_element(i))) == pi0.values[i]);
        }
    }
    SUBCASE("random functionals are represented faithfully") {
        std::mt19937_64 rng(113);
        for (std::uint32_t p : {2u, 3u, 5u}) {
            Field f(p);
            for (int iter = 0; iter < 20; ++iter) {
                Poly h = th::random_monic(f, 1 + int(rng() % 4), rng);
                AlgebraTrace t = univariate_trace(h);
                Functional g;
                g.values = th::random_vec(f, t.algebra.dim(), rng);
                FpVec beta = represent_functional(t.algebra, t.tau, g);
                for (std::size_t i = 0; i < t.algebra.dim(); ++i) {
                    CHECK(apply_functional(t.algebra, t.tau,
                                           t.algebra.mul(beta, t.algebra.basis_element(i))) ==
                          g.values[i]);
                }
            }
        }
    }
}

TEST_CASE("local quotient structure: nilpotency and the cyclic orbit") {
    std::mt19937_64 rng(127);
    for (int iter = 0; iter < 12; ++iter) {
        const std::uint32_t ps[] = {2, 3, 5};
        Field f(ps[rng() % 3]);
        int n = 1 + int(rng() % 3);
        unsigned r = 1 + unsigned(rng() % 3);
        if (std::size_t(n) * r > 9) continue;
        Poly g = th::random_irreducible(f, n, rng);
        Algebra A = Algebra::from_univariate_quotient(g.pow(r));
        const std::size_t m = A.dim();
        const FpVec x_class = A.element_from_poly(Poly::x(f));
        Mat M = A.mult_matrix(x_class);
        // g(M)^r = 0, g(M)^(r-1) != 0
        Mat gM(f, m, m);
        Mat power = Mat::identity(f, m);
        for (std::size_t i = 0; i <= std::size_t(g.degree()); ++i) {
            gM = gM.add(power.scale(g.coeff(i)));
            power = power.mul(M);
        }
        CHECK(gM.pow(r).is_zero());
        CHECK_FALSE(gM.pow(r - 1).is_zero());
        // minimal polynomial of the x-class is g^r
        CHECK(A.minimal_polynomial(x_class) == g.pow(r));
        // orbit of s-bar under M spans: s-bar = sum_j s(x) g(x)^j with the
        // default seed s = coefficient-of-x^(n-1) vector
        Poly s = Poly::monomial(f, std::size_t(n) - 1);
        Poly sbar(f);
        for (unsigned j = 0; j < r; ++j) sbar = sbar + s * g.pow(j);
        FpVec v = A.element_from_poly(sbar);
        std::vector<FpVec> orbit;
        for (std::size_t t = 0; t < m; ++t) {
            orbit.push_back(v);
            v = M.apply(v);
        }
        CHECK(Mat::from_rows(f, orbit).rank() == m);
    }
}

TEST_CASE("tensor trace is independent of the basis presentation") {
    std::mt19937_64 rng(131);
    for (std::uint32_t p : {2u, 3u}) {
        Field f(p);
        for (int iter = 0; iter < 10; ++iter) {
            Poly hr = th::random_monic(f, 1 + int(rng() % 3), rng);
            Poly hs = th::random_monic(f, 1 + int(rng() % 2), rng);
            AlgebraTrace R = univariate_trace(hr);
            AlgebraTrace S = univariate_trace(hs);
            AlgebraTrace T = tensor_trace(R, S);
            const std::size_t m = R.algebra.dim();

            // re-express R in a random basis alpha'_i = sum_k P[k][i] alpha_k
            Mat Pm = random_invertible(f, m, rng);
            Mat Q = Pm.inverse().value();
            std::vector<FpVec> table(m * m);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    FpVec prod = R.algebra.mul(Pm.col(i), Pm.col(j));
                    table[i * m + j] = Q.apply(prod);
                }
            }
            Algebra Rp = Algebra::from_table(f, table);
            Functional taup;
            taup.values.assign(m, 0);
            for (std::size_t i = 0; i < m; ++i) {
                taup.values[i] = vec_dot(f, R.tau.values, Pm.col(i));
            }
            AlgebraTrace Tp = tensor_trace({Rp, taup}, S);

            // map T' back to canonical coordinates and compare
            const std::size_t ns = S.algebra.dim();
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t j = 0; j < ns; ++j) {
                    std::uint16_t back = 0;
                    for (std::size_t i = 0; i < m; ++i) {
                        back = f.add(back, f.mul(Q.at(i, k), Tp.tau.values[j * m + i]));
                    }
                    CHECK(back == T.tau.values[j * m + k]);
                }
            }
        }
    }
}
