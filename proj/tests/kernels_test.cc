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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cdt/cdt.h"
#include "cdt/kernels.h"
#include "cdt/render.h"
#include "cdt/synth.h"

namespace cdt::kernels {
namespace {

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = avx2();
    if (simd_ == nullptr) GTEST_SKIP() << "AVX2 unavailable on this host/build";
  }
  const KernelTable* simd_ = nullptr;
};

std::vector<uint8_t> Bits(std::mt19937_64& rng, size_t n, double p1) {
  std::bernoulli_distribution b(p1);
  std::vector<uint8_t> v(n);
  for (auto& x : v) x = b(rng);
  return v;
}

// Lengths straddle the vector widths; offsets exercise unaligned starts.
const size_t kLengths[] = {0, 1, 7, 8, 15, 16, 31, 32, 33, 63, 64, 65, 100, 255, 1000, 4099};

TEST(ScalarKernels, ReferenceValues) {
  const std::vector<uint8_t> x{1, 1, 0, 0, 1}, y{1, 0, 1, 0, 1};
  const std::vector<uint32_t> w{2, 3, 5, 7, 11};
  const CrossCounts c = scalar().cross_counts(x.data(), y.data(), w.data(), 5);
  EXPECT_EQ(c, (CrossCounts{28, 16, 18, 13}));

  std::vector<uint64_t> keys{0, 1, 2, 3, 4};
  scalar().or_shifted(x.data(), 3, keys.data(), 5);
  EXPECT_EQ(keys, (std::vector<uint64_t>{8, 9, 2, 3, 12}));

  std::vector<uint32_t> out(5);
  EXPECT_EQ(scalar().select_equal(y.data(), 0, out.data(), 5), 2u);
  EXPECT_EQ(out[0], 1u);
  EXPECT_EQ(out[1], 3u);
}

TEST(ScalarKernels, ByName) {
  EXPECT_EQ(by_name("scalar"), &scalar());
  EXPECT_EQ(by_name("nope"), nullptr);
  EXPECT_NE(by_name("auto"), nullptr);
  ScopedOverride o(scalar());
  EXPECT_EQ(&active(), &scalar());
}

TEST_F(KernelEquivalence, CrossCounts) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<uint32_t> wd(1, 1u << 20);
  for (double p : {0.0, 0.1, 0.5, 1.0}) {
    for (size_t n : kLengths) {
      for (size_t off : {0, 1, 3}) {
        const auto x = Bits(rng, n + off, p), y = Bits(rng, n + off, 0.5);
        std::vector<uint32_t> w(n + off);
        for (auto& v : w) v = wd(rng);
        EXPECT_EQ(scalar().cross_counts(x.data() + off, y.data() + off, w.data() + off, n),
                  simd_->cross_counts(x.data() + off, y.data() + off, w.data() + off, n))
            << "n=" << n << " off=" << off << " p=" << p;
      }
    }
  }
}

TEST_F(KernelEquivalence, OrShifted) {
  std::mt19937_64 rng(2);
  for (unsigned shift : {0u, 1u, 31u, 32u, 63u}) {
    for (size_t n : kLengths) {
      for (size_t off : {0, 1}) {
        const auto col = Bits(rng, n + off, 0.5);
        std::vector<uint64_t> a(n + off);
        for (auto& k : a) k = rng() & ~(uint64_t{1} << shift);
        auto b = a;
        scalar().or_shifted(col.data() + off, shift, a.data() + off, n);
        simd_->or_shifted(col.data() + off, shift, b.data() + off, n);
        EXPECT_EQ(a, b) << "n=" << n << " shift=" << shift;
      }
    }
  }
}

TEST_F(KernelEquivalence, SelectEqual) {
  std::mt19937_64 rng(3);
  for (double p : {0.0, 0.3, 1.0}) {
    for (size_t n : kLengths) {
      for (uint8_t value : {0, 1}) {
        const auto col = Bits(rng, n + 1, p);
        std::vector<uint32_t> a(n + 1, 0xdeadbeef), b(n + 1, 0xdeadbeef);
        const size_t ka = scalar().select_equal(col.data() + 1, value, a.data(), n);
        const size_t kb = simd_->select_equal(col.data() + 1, value, b.data(), n);
        ASSERT_EQ(ka, kb);
        a.resize(ka);
        b.resize(kb);
        EXPECT_EQ(a, b);
      }
    }
  }
}

TEST_F(KernelEquivalence, WholeTree) {
  for (uint64_t seed : {1, 2, 3}) {
    const SyntheticData s = gen_random_bn(16, 4, seed, 5000);
    std::string a, b;
    {
      ScopedOverride o(scalar());
      a = render(tree_construct(s.data), TreeFormat::kJson);
    }
    {
      ScopedOverride o(*simd_);
      b = render(tree_construct(s.data), TreeFormat::kJson);
    }
    EXPECT_EQ(a, b) << "seed " << seed;
  }
}

}  // namespace
}  // namespace cdt::kernels
