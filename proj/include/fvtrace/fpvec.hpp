#pragma once

#include <cstddef>
#include <cstdint>

namespace fvtrace::fpvec {

// Kernel table for elementwise arithmetic on arrays of canonical residues
// mod p (0 <= x < p, p < 2^16). `dst` may alias `a` or `b` exactly (same
// pointer); partial overlap is not supported.
struct Ops {
    const char* name;
    // dst[i] = (a[i] + b[i]) mod p
    void (*add)(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
                std::size_t n, std::uint16_t p);
    // dst[i] = (a[i] - b[i]) mod p
    void (*sub)(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
                std::size_t n, std::uint16_t p);
    // dst[i] = (dst[i] + c * a[i]) mod p
    void (*axpy)(std::uint16_t* dst, std::uint16_t c, const std::uint16_t* a,
                 std::size_t n, std::uint16_t p);
    // sum_i a[i] * b[i] mod p
    std::uint16_t (*dot)(const std::uint16_t* a, const std::uint16_t* b,
                         std::size_t n, std::uint16_t p);
};

// Reference implementation; always available.
const Ops& scalar_ops() noexcept;

// Best kernel table for modulus p on this machine. Wide kernels require
// p < 2^15; larger moduli always get the scalar table.
const Ops& select(std::uint32_t p) noexcept;

// Test hook: route every select() to the scalar table. Also enabled by the
// environment variable FVTRACE_FORCE_SCALAR=1.
void force_scalar(bool on) noexcept;
bool scalar_forced() noexcept;

#if defined(__x86_64__) || defined(_M_X64)
// Null when the translation unit was not compiled (non-x86 build).
const Ops* avx2_ops() noexcept;
#endif
#if defined(__aarch64__)
const Ops* neon_ops() noexcept;
#endif

}  // namespace fvtrace::fpvec
