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

#include "cdt/kernels.h"

#include <cstdlib>

namespace cdt::kernels {
namespace {

CrossCounts CrossCountsScalar(const uint8_t* x, const uint8_t* y,
                              const uint32_t* w, size_t n) {
  CrossCounts c;
  for (size_t i = 0; i < n; ++i) {
    const uint64_t wi = w[i];
    c.total += wi;
    c.x1 += x[i] ? wi : 0;
    c.y1 += y[i] ? wi : 0;
    c.x1y1 += (x[i] & y[i]) ? wi : 0;
  }
  return c;
}

void OrShiftedScalar(const uint8_t* column, unsigned shift, uint64_t* keys,
                     size_t n) {
  for (size_t i = 0; i < n; ++i) keys[i] |= uint64_t{column[i]} << shift;
}

size_t SelectEqualScalar(const uint8_t* column, uint8_t value, uint32_t* out,
                         size_t n) {
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    if (column[i] == value) out[k++] = static_cast<uint32_t>(i);
  }
  return k;
}

constexpr KernelTable kScalar{"scalar", &CrossCountsScalar, &OrShiftedScalar,
                              &SelectEqualScalar};

thread_local const KernelTable* tls_override = nullptr;

const KernelTable& Detected() {
  static const KernelTable* const table = [] {
    if (const char* env = std::getenv("CDT_KERNELS")) {
      const std::string_view requested(env);
      if (requested == "scalar") return &kScalar;
      if (requested == "avx2" && avx2() != nullptr) return avx2();
    }
    if (const KernelTable* t = avx2()) return t;
    return &kScalar;
  }();
  return *table;
}

}  // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
#if defined(CDT_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* by_name(std::string_view name) {
  if (name == "scalar") return &kScalar;
  if (name == "avx2") return avx2();
  if (name == "auto") return &active();
  return nullptr;
}

const KernelTable& active() {
  if (tls_override != nullptr) return *tls_override;
  return Detected();
}

ScopedOverride::ScopedOverride(const KernelTable& table)
    : previous_(tls_override) {
  tls_override = &table;
}

ScopedOverride::~ScopedOverride() { tls_override = previous_; }

#if !defined(CDT_HAVE_AVX2)
namespace detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace detail
#endif

}  // namespace cdt::kernels
