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

// Data-parallel inner loops over byte columns. Every kernel has a scalar
// reference implementation; vector variants are picked at runtime and must
// produce bit-identical results.

#ifndef CDT_KERNELS_H_
#define CDT_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cdt::kernels {

// Weighted joint counts of two {0,1} columns.
struct CrossCounts {
  uint64_t total = 0;  // sum w
  uint64_t x1 = 0;     // sum w where x == 1
  uint64_t y1 = 0;     // sum w where y == 1
  uint64_t x1y1 = 0;   // sum w where x == 1 and y == 1

  friend bool operator==(const CrossCounts&, const CrossCounts&) = default;
};

struct KernelTable {
  std::string_view name;

  CrossCounts (*cross_counts)(const uint8_t* x, const uint8_t* y,
                              const uint32_t* w, size_t n);

  // keys[i] |= uint64_t(column[i]) << shift
  void (*or_shifted)(const uint8_t* column, unsigned shift, uint64_t* keys,
                     size_t n);

  // Writes the indices i with column[i] == value to out (capacity n) and
  // returns how many were written, in increasing order.
  size_t (*select_equal)(const uint8_t* column, uint8_t value, uint32_t* out,
                         size_t n);
};

const KernelTable& scalar();

// Null when the build or the host CPU lacks AVX2.
const KernelTable* avx2();

// Table used by the library. Honors CDT_KERNELS=scalar|avx2 in the
// environment, then a ScopedOverride on the calling thread.
const KernelTable& active();

// Looks a table up by name ("scalar", "avx2", "auto"); null if unavailable.
const KernelTable* by_name(std::string_view name);

class ScopedOverride {
 public:
  explicit ScopedOverride(const KernelTable& table);
  ~ScopedOverride();
  ScopedOverride(const ScopedOverride&) = delete;
  ScopedOverride& operator=(const ScopedOverride&) = delete;

 private:
  const KernelTable* previous_;
};

namespace detail {
const KernelTable* avx2_table();
}  // namespace detail

}  // namespace cdt::kernels

#endif  // CDT_KERNELS_H_
