#include "fvtrace/fp.hpp"

#include <stdexcept>
#include <string>

namespace fvtrace {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

Field::Field(std::uint32_t p) : p_(p), ops_(&fpvec::select(p)) {
    if (p >= (1u << 16)) {
        throw std::invalid_argument("field modulus out of range: p must be below 2^16");
    }
    if (!is_prime_u32(p)) {
        throw std::invalid_argument("field modulus is not prime: " + std::to_string(p));
    }
}

std::uint16_t Field::pow(std::uint16_t a, std::uint64_t e) const noexcept {
    std::uint16_t base = a;
    std::uint16_t res = std::uint16_t(1 % p_);
    while (e > 0) {
        if (e & 1) res = mul(res, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return res;
}

std::uint16_t Field::inv(std::uint16_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return pow(a, p_ - 2);
}

std::uint16_t Field::from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return std::uint16_t(r);
}

void Field::require_same(const Field& other) const {
    if (p_ != other.p_) throw std::invalid_argument("field mismatch");
}

namespace {

void require_len(const FpVec& a, const FpVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

FpVec vec_add(const Field& f, const FpVec& a, const FpVec& b) {
    require_len(a, b);
    FpVec out(a.size());
    f.ops().add(out.data(), a.data(), b.data(), a.size(), std::uint16_t(f.p()));
    return out;
}

FpVec vec_sub(const Field& f, const FpVec& a, const FpVec& b) {
    require_len(a, b);
    FpVec out(a.size());
    f.ops().sub(out.data(), a.data(), b.data(), a.size(), std::uint16_t(f.p()));
    return out;
}

FpVec vec_scale(const Field& f, std::uint16_t c, const FpVec& a) {
    FpVec out(a.size(), 0);
    f.ops().axpy(out.data(), c, a.data(), a.size(), std::uint16_t(f.p()));
    return out;
}

void vec_axpy(const Field& f, FpVec& dst, std::uint16_t c, const FpVec& a) {
    require_len(dst, a);
    f.ops().axpy(dst.data(), c, a.data(), a.size(), std::uint16_t(f.p()));
}

std::uint16_t vec_dot(const Field& f, const FpVec& a, const FpVec& b) {
    require_len(a, b);
    return f.ops().dot(a.data(), b.data(), a.size(), std::uint16_t(f.p()));
}

bool vec_is_zero(const FpVec& a) noexcept {
    for (std::uint16_t v : a) {
        if (v != 0) return false;
    }
    return true;
}

}  // namespace fvtrace
