// NEON kernel variants for aarch64, mirroring the AVX2 tricks: unsigned-min
// conditional correction for add/sub and u32 Barrett reduction for axpy.
// Same eligibility rule as AVX2: select() hands these out only for p < 2^15.

#include "fvtrace/fpvec.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace fvtrace::fpvec {

namespace {

void add_neon(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
              std::size_t n, std::uint16_t p) {
    const uint16x8_t vp = vdupq_n_u16(p);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t t = vaddq_u16(vld1q_u16(a + i), vld1q_u16(b + i));
        vst1q_u16(dst + i, vminq_u16(t, vsubq_u16(t, vp)));
    }
    for (; i < n; ++i) {
        std::uint32_t s = std::uint32_t(a[i]) + b[i];
        dst[i] = std::uint16_t(s >= p ? s - p : s);
    }
}

void sub_neon(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
              std::size_t n, std::uint16_t p) {
    const uint16x8_t vp = vdupq_n_u16(p);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t d = vsubq_u16(vld1q_u16(a + i), vld1q_u16(b + i));
        vst1q_u16(dst + i, vminq_u16(d, vaddq_u16(d, vp)));
    }
    for (; i < n; ++i) {
        dst[i] = std::uint16_t(a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i]);
    }
}

// Barrett reduction of four u32 lanes, inputs < 2^31, output < p.
inline uint32x4_t barrett_u32(uint32x4_t x, uint32x4_t magic, uint32x4_t vp) {
    uint32x2_t q_lo = vshrn_n_u64(vmull_u32(vget_low_u32(x), vget_low_u32(magic)), 32);
    uint32x2_t q_hi = vshrn_n_u64(vmull_u32(vget_high_u32(x), vget_high_u32(magic)), 32);
    uint32x4_t q = vcombine_u32(q_lo, q_hi);
    uint32x4_t r = vmlsq_u32(x, q, vp);
    return vminq_u32(r, vsubq_u32(r, vp));
}

void axpy_neon(std::uint16_t* dst, std::uint16_t c, const std::uint16_t* a,
               std::size_t n, std::uint16_t p) {
    const uint32x4_t vp32 = vdupq_n_u32(p);
    const uint32x4_t magic = vdupq_n_u32(std::uint32_t((std::uint64_t(1) << 32) / p));
    const uint16x4_t vc = vdup_n_u16(c);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t va = vld1q_u16(a + i);
        uint16x8_t vd = vld1q_u16(dst + i);
        uint32x4_t x_lo = vmlal_u16(vmovl_u16(vget_low_u16(vd)), vget_low_u16(va), vc);
        uint32x4_t x_hi = vmlal_u16(vmovl_u16(vget_high_u16(vd)), vget_high_u16(va), vc);
        uint32x4_t r_lo = barrett_u32(x_lo, magic, vp32);
        uint32x4_t r_hi = barrett_u32(x_hi, magic, vp32);
        vst1q_u16(dst + i, vcombine_u16(vmovn_u32(r_lo), vmovn_u32(r_hi)));
    }
    for (; i < n; ++i) {
        dst[i] = std::uint16_t((dst[i] + std::uint32_t(c) * a[i]) % p);
    }
}

std::uint16_t dot_neon(const std::uint16_t* a, const std::uint16_t* b,
                       std::size_t n, std::uint16_t p) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t va = vld1q_u16(a + i);
        uint16x8_t vb = vld1q_u16(b + i);
        acc = vpadalq_u32(acc, vmull_u16(vget_low_u16(va), vget_low_u16(vb)));
        acc = vpadalq_u32(acc, vmull_u16(vget_high_u16(va), vget_high_u16(vb)));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < n; ++i) total += std::uint32_t(a[i]) * b[i];
    return std::uint16_t(total % p);
}

const Ops kNeon{"neon", add_neon, sub_neon, axpy_neon, dot_neon};

}  // namespace

const Ops* neon_ops() noexcept { return &kNeon; }

}  // namespace fvtrace::fpvec

#endif  // aarch64
