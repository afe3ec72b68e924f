// AVX2 kernel variants. This translation unit is compiled with -mavx2 on
// x86-64 builds; select() only hands these out after a cpuid check, and only
// for p < 2^15 (the 16-bit min-trick and madd bounds require it).

#include "fvtrace/fpvec.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace fvtrace::fpvec {

namespace {

void add_avx2(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
              std::size_t n, std::uint16_t p) {
    const __m256i vp = _mm256_set1_epi16(short(p));
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // a+b < 2^16 because p < 2^15; pick min(a+b, a+b-p) unsigned.
        __m256i t = _mm256_add_epi16(va, vb);
        __m256i u = _mm256_sub_epi16(t, vp);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epu16(t, u));
    }
    for (; i < n; ++i) {
        std::uint32_t s = std::uint32_t(a[i]) + b[i];
        dst[i] = std::uint16_t(s >= p ? s - p : s);
    }
}

void sub_avx2(std::uint16_t* dst, const std::uint16_t* a, const std::uint16_t* b,
              std::size_t n, std::uint16_t p) {
    const __m256i vp = _mm256_set1_epi16(short(p));
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i d = _mm256_sub_epi16(va, vb);
        __m256i dp = _mm256_add_epi16(d, vp);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epu16(d, dp));
    }
    for (; i < n; ++i) {
        dst[i] = std::uint16_t(a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i]);
    }
}

// Barrett reduction of eight u32 lanes, inputs < 2^31, output < p.
// magic = floor(2^32 / p), so q >= floor(x/p) - 1 and x - q*p < 2p.
inline __m256i barrett_u32(__m256i x, __m256i magic64, __m256i vp32) {
    __m256i q_even = _mm256_srli_epi64(_mm256_mul_epu32(x, magic64), 32);
    __m256i q_odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), magic64);
    q_odd = _mm256_and_si256(q_odd, _mm256_set1_epi64x(std::int64_t(0xFFFFFFFF00000000ull)));
    __m256i q = _mm256_or_si256(q_even, q_odd);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, vp32));
    return _mm256_min_epu32(r, _mm256_sub_epi32(r, vp32));
}

void axpy_avx2(std::uint16_t* dst, std::uint16_t c, const std::uint16_t* a,
               std::size_t n, std::uint16_t p) {
    const __m256i vc = _mm256_set1_epi32(c);
    const __m256i vp32 = _mm256_set1_epi32(p);
    const __m256i magic64 = _mm256_set1_epi64x(std::int64_t((std::uint64_t(1) << 32) / p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
        __m256i vd = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i)));
        __m256i x = _mm256_add_epi32(vd, _mm256_mullo_epi32(va, vc));
        __m256i r = barrett_u32(x, magic64, vp32);
        // pack 8 u32 (< p < 2^15) back to 8 u16
        __m256i packed = _mm256_packus_epi32(r, r);
        packed = _mm256_permute4x64_epi64(packed, 0xD8);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm256_castsi256_si128(packed));
    }
    for (; i < n; ++i) {
        dst[i] = std::uint16_t((dst[i] + std::uint32_t(c) * a[i]) % p);
    }
}

std::uint16_t dot_avx2(const std::uint16_t* a, const std::uint16_t* b,
                       std::size_t n, std::uint16_t p) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // pairwise 16x16->32 products summed; safe as signed since inputs < 2^15
        __m256i prod = _mm256_madd_epi16(va, vb);
        acc = _mm256_add_epi64(acc, _mm256_cvtepu32_epi64(_mm256_castsi256_si128(prod)));
        acc = _mm256_add_epi64(acc, _mm256_cvtepu32_epi64(_mm256_extracti128_si256(prod, 1)));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) total += std::uint32_t(a[i]) * b[i];
    return std::uint16_t(total % p);
}

const Ops kAvx2{"avx2", add_avx2, sub_avx2, axpy_avx2, dot_avx2};

}  // namespace

const Ops* avx2_ops() noexcept { return &kAvx2; }

}  // namespace fvtrace::fpvec

#endif  // x86-64
