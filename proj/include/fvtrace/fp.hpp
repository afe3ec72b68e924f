#pragma once

#include <cstdint>
#include <vector>

#include "fvtrace/fpvec.hpp"

namespace fvtrace {

// Coordinate / coefficient vector of canonical residues mod p.
using FpVec = std::vector<std::uint16_t>;

/// Prime field F_p for p < 2^16. Primality is checked once at construction;
/// element values are canonical residues in [0, p) and all arithmetic is
/// exact. Copies are cheap (a word plus a kernel-table pointer).
class Field {
public:
    explicit Field(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const noexcept {
        std::uint32_t s = std::uint32_t(a) + b;
        return std::uint16_t(s >= p_ ? s - p_ : s);
    }
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const noexcept {
        return std::uint16_t(a >= b ? a - b : a + p_ - b);
    }
    std::uint16_t neg(std::uint16_t a) const noexcept {
        return a == 0 ? 0 : std::uint16_t(p_ - a);
    }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const noexcept {
        return std::uint16_t(std::uint32_t(a) * b % p_);
    }
    std::uint16_t pow(std::uint16_t a, std::uint64_t e) const noexcept;

    // throws on a == 0
    std::uint16_t inv(std::uint16_t a) const;

    // canonical residue of any integer, negatives included
    std::uint16_t from_int(long long v) const noexcept;

    const fpvec::Ops& ops() const noexcept { return *ops_; }

    // throws "field mismatch" unless both moduli agree
    void require_same(const Field& other) const;

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }
    friend bool operator!=(const Field& a, const Field& b) noexcept { return a.p_ != b.p_; }

private:
    std::uint32_t p_;
    const fpvec::Ops* ops_;
};

// --- coordinate vector helpers ------------------------------------------

FpVec vec_add(const Field& f, const FpVec& a, const FpVec& b);
FpVec vec_sub(const Field& f, const FpVec& a, const FpVec& b);
FpVec vec_scale(const Field& f, std::uint16_t c, const FpVec& a);
// dst += c * a
void vec_axpy(const Field& f, FpVec& dst, std::uint16_t c, const FpVec& a);
std::uint16_t vec_dot(const Field& f, const FpVec& a, const FpVec& b);
bool vec_is_zero(const FpVec& a) noexcept;

}  // namespace fvtrace
