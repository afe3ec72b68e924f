#include "fvtrace/fpvec.hpp"

#include <atomic>
#include <cstdlib>

namespace fvtrace::fpvec {

namespace {

void add_scalar(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
                std::size_t n, std::uint16_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = std::uint32_t(a[i]) + b[i];
        dst[i] = std::uint16_t(s >= p ? s - p : s);
    }
}

void sub_scalar(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
                std::size_t n, std::uint16_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = std::uint16_t(a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i]);
    }
}

void axpy_scalar(std::uint16_t* dst, std::uint16_t c, const std::uint16_t* a,
                 std::size_t n, std::uint16_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = std::uint16_t((dst[i] + std::uint32_t(c) * a[i]) % p);
    }
}

std::uint16_t dot_scalar(const std::uint16_t* a, const std::uint16_t* b,
                         std::size_t n, std::uint16_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += std::uint32_t(a[i]) * b[i];
    return std::uint16_t(acc % p);
}

const Ops kScalar{"scalar", add_scalar, sub_scalar, axpy_scalar, dot_scalar};

std::atomic<bool> g_force_scalar{false};

bool env_forced() {
    static const bool forced = [] {
        const char* v = std::getenv("FVTRACE_FORCE_SCALAR");
        return v != nullptr && v[0] == '1';
    }();
    return forced;
}

}  // namespace

const Ops& scalar_ops() noexcept { return kScalar; }

void force_scalar(bool on) noexcept { g_force_scalar.store(on); }

bool scalar_forced() noexcept { return g_force_scalar.load() || env_forced(); }

const Ops& select(std::uint32_t p) noexcept {
    if (scalar_forced() || p >= (1u << 15)) return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (const Ops* ops = avx2_ops(); ops && __builtin_cpu_supports("avx2")) return *ops;
#endif
#if defined(__aarch64__)
    if (const Ops* ops = neon_ops()) return *ops;
#endif
    return kScalar;
}

}  // namespace fvtrace::fpvec
