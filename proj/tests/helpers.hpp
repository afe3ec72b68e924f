#pragma once

#include <random>
#include <set>
#include <vector>

#include "fvtrace/algebra.hpp"
#include "fvtrace/poly.hpp"

namespace th {

using namespace fvtrace;

inline Poly P(const Field& f, std::initializer_list<long long> coeffs) {
    return Poly::from_ints(f, std::vector<long long>(coeffs));
}

inline FpVec V(std::initializer_list<int> vals) {
    FpVec out;
    for (int v : vals) out.push_back(std::uint16_t(v));
    return out;
}

inline FpVec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.p() - 1);
    FpVec out(n);
    for (auto& v : out) v = std::uint16_t(dist(rng));
    return out;
}

inline Poly random_poly(const Field& f, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ddist(0, max_deg);
    int d = ddist(rng);
    FpVec c = random_vec(f, std::size_t(d) + 1, rng);
    return Poly(f, std::move(c));
}

inline Poly random_monic(const Field& f, int deg, std::mt19937_64& rng) {
    FpVec c = random_vec(f, std::size_t(deg) + 1, rng);
    c[std::size_t(deg)] = 1;
    return Poly(f, std::move(c));
}

inline Poly random_irreducible(const Field& f, int deg, std::mt19937_64& rng) {
    while (true) {
        Poly g = random_monic(f, deg, rng);
        if (g.degree() == deg && is_irreducible(g)) return g;
    }
}

}  // namespace th
