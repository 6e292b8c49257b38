/*
 * Copyright 2026 The CDT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// AVX2 kernel table. This translation unit is compiled with -mavx2 and is
// only reached through kernels::avx2(), which checks the CPU first.

#include <immintrin.h>

#include "cdt/kernels.h"

namespace cdt::kernels {
namespace {

inline __m256i Widen64Sum(__m256i v32) {
  const __m256i lo = _mm256_cvtepu32_epi64(_mm256_castsi256_si128(v32));
  const __m256i hi = _mm256_cvtepu32_epi64(_mm256_extracti128_si256(v32, 1));
  return _mm256_add_epi64(lo, hi);
}

inline uint64_t HorizontalSum64(__m256i v) {
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

CrossCounts CrossCountsAvx2(const uint8_t* x, const uint8_t* y,
                            const uint32_t* w, size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc_total = zero, acc_x = zero, acc_y = zero, acc_xy = zero;
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i wv =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    const __m256i xv = _mm256_cvtepu8_epi32(
        _mm_loadl_epi64(reinterpret_cast<const __m128i*>(x + i)));
    const __m256i yv = _mm256_cvtepu8_epi32(
        _mm_loadl_epi64(reinterpret_cast<const __m128i*>(y + i)));
    // 0/1 -> 0/all-ones lane masks.
    const __m256i xm = _mm256_sub_epi32(zero, xv);
    const __m256i ym = _mm256_sub_epi32(zero, yv);
    const __m256i wx = _mm256_and_si256(wv, xm);
    acc_total = _mm256_add_epi64(acc_total, Widen64Sum(wv));
    acc_x = _mm256_add_epi64(acc_x, Widen64Sum(wx));
    acc_y = _mm256_add_epi64(acc_y, Widen64Sum(_mm256_and_si256(wv, ym)));
    acc_xy = _mm256_add_epi64(acc_xy, Widen64Sum(_mm256_and_si256(wx, ym)));
  }
  CrossCounts c{HorizontalSum64(acc_total), HorizontalSum64(acc_x),
                HorizontalSum64(acc_y), HorizontalSum64(acc_xy)};
  for (; i < n; ++i) {
    const uint64_t wi = w[i];
    c.total += wi;
    c.x1 += x[i] ? wi : 0;
    c.y1 += y[i] ? wi : 0;
    c.x1y1 += (x[i] & y[i]) ? wi : 0;
  }
  return c;
}

void OrShiftedAvx2(const uint8_t* column, unsigned shift, uint64_t* keys,
                   size_t n) {
  const __m128i count = _mm_cvtsi32_si128(static_cast<int>(shift));
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    int32_t packed;
    __builtin_memcpy(&packed, column + i, sizeof(packed));
    const __m256i bits = _mm256_sll_epi64(
        _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed)), count);
    __m256i* dst = reinterpret_cast<__m256i*>(keys + i);
    _mm256_storeu_si256(dst, _mm256_or_si256(_mm256_loadu_si256(dst), bits));
  }
  for (; i < n; ++i) keys[i] |= uint64_t{column[i]} << shift;
}

size_t SelectEqualAvx2(const uint8_t* column, uint8_t value, uint32_t* out,
                       size_t n) {
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
  size_t k = 0;
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(column + i));
    uint32_t mask =
        static_cast<uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, needle)));
    while (mask != 0) {
      out[k++] = static_cast<uint32_t>(i + __builtin_ctz(mask));
      mask &= mask - 1;
    }
  }
  for (; i < n; ++i) {
    if (column[i] == value) out[k++] = static_cast<uint32_t>(i);
  }
  return k;
}

constexpr KernelTable kAvx2{"avx2", &CrossCountsAvx2, &OrShiftedAvx2,
                            &SelectEqualAvx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace cdt::kernels
