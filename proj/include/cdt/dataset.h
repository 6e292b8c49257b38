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

// Binary tabular data: weighted records over named {0,1} attributes plus one
// {0,1} outcome, CSV ingestion with binarization rules, and context views.

#ifndef CDT_DATASET_H_
#define CDT_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdt {

// Malformed or inconsistent input data. The CLI maps it to exit status 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Column-major storage shared by datasets and views. Immutable once built.
struct ColumnBlock {
  std::vector<std::vector<uint8_t>> columns;  // one per attribute
  std::vector<uint8_t> outcome;
  std::vector<uint32_t> weights;
  uint64_t total_weight = 0;

  size_t rows() const { return outcome.size(); }
};

struct Record {
  std::vector<uint8_t> values;
  uint8_t outcome = 0;
  uint32_t weight = 1;
};

// Largest total weight accepted; keeps four-way margin products inside
// 128-bit integers.
inline constexpr uint64_t kMaxTotalWeight = uint64_t{1} << 30;

class BinaryDataset {
 public:
  // Throws DataError when an invariant is violated (duplicate or clashing
  // names, a value outside {0,1}, a zero weight, a ragged record).
  BinaryDataset(std::vector<std::string> attribute_names,
                std::string outcome_name, std::span<const Record> records);
  BinaryDataset(std::vector<std::string> attribute_names,
                std::string outcome_name, ColumnBlock block);

  size_t num_attributes() const { return impl_->names.size(); }
  size_t num_records() const { return impl_->block->rows(); }
  uint64_t total_weight() const { return impl_->block->total_weight; }

  const std::vector<std::string>& attribute_names() const {
    return impl_->names;
  }
  const std::string& outcome_name() const { return impl_->outcome; }
  std::optional<size_t> attribute_index(std::string_view name) const;

  Record record(size_t i) const;
  const ColumnBlock& block() const { return *impl_->block; }
  const std::shared_ptr<const ColumnBlock>& shared_block() const {
    return impl_->block;
  }

  // Same columns under new labels.
  BinaryDataset renamed(std::vector<std::string> attribute_names,
                        std::string outcome_name) const;
  // Every record repeated weight times with weight 1.
  BinaryDataset exploded() const;
  // Identical (values, outcome) records merged by summing weights, in first
  // occurrence order.
  BinaryDataset merged() const;

 private:
  struct Impl {
    std::vector<std::string> names;
    std::string outcome;
    std::shared_ptr<const ColumnBlock> block;
  };
  std::shared_ptr<const Impl> impl_;
};

struct Assignment {
  size_t attribute = 0;
  uint8_t value = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// A dataset restricted to a context P = p. The records satisfying the
// context are materialized column-major so kernels can stream them.
class ContextView {
 public:
  explicit ContextView(BinaryDataset base);

  const BinaryDataset& base() const { return base_; }
  std::span<const Assignment> assignments() const { return assignments_; }
  bool is_assigned(size_t attribute) const;

  const ColumnBlock& rows() const { return *rows_; }
  size_t num_records() const { return rows_->rows(); }
  uint64_t total_weight() const { return rows_->total_weight; }
  bool empty() const { return rows_->total_weight == 0; }

 private:
  friend ContextView restrict(const ContextView&, size_t, uint8_t);

  BinaryDataset base_;
  std::vector<Assignment> assignments_;
  std::shared_ptr<const ColumnBlock> rows_;
};

// Extends the view's context by attribute = value. Throws
// std::invalid_argument if the attribute is already assigned or invalid.
ContextView restrict(const ContextView& view, size_t attribute, uint8_t value);

// Outcome value with the larger weighted count. Ties go to the base
// dataset's majority, then to 0. An empty view uses the base dataset.
uint8_t majority_outcome(const ContextView& view);

// ---------------------------------------------------------------------------
// Ingestion.

struct Predicate {
  enum class Kind { kEquals, kLessThan, kGreaterThan, kInSet };
  Kind kind = Kind::kEquals;
  std::vector<std::string> literals;  // kEquals: one; kInSet: one or more
  double threshold = 0.0;             // kLessThan / kGreaterThan
};

struct BinarizationRule {
  std::string source_column;
  std::string derived_name;
  Predicate predicate;

  // 0 or 1 for any cell. Throws DataError if an ordering predicate meets a
  // non-numeric cell.
  uint8_t apply(std::string_view cell) const;
};

// Grammar, one rule per line, '#' starts a comment:
//   derived = column == literal
//   derived = column < number
//   derived = column > number
//   derived = column in {lit, lit, ...}
// Literals may be double-quoted.
std::vector<BinarizationRule> parse_rules(std::istream& in);
std::vector<BinarizationRule> read_rules(const std::string& path);

struct LoadOptions {
  std::string outcome;
  std::optional<std::string> weight_column;
  std::vector<BinarizationRule> rules;
};

struct LoadStats {
  size_t rows_read = 0;
  size_t rows_dropped = 0;  // rows with a missing cell in a used column
};

// Reads a header-first CSV. Without rules every column except the weight
// column is retained; with rules only the derived columns are, plus the
// outcome when it is a raw column. Cells "", "?" and "NA" are missing.
BinaryDataset parse_csv(std::istream& in, const LoadOptions& options,
                        LoadStats* stats = nullptr);
BinaryDataset load_csv(const std::string& path, const LoadOptions& options,
                       LoadStats* stats = nullptr);

// Name of the weight column write_csv emits: "count", suffixed with '_'
// until it clashes with no attribute or the outcome.
std::string weight_column_name(const BinaryDataset& data);

// Writes attributes, outcome and a trailing weight column.
void write_csv(const BinaryDataset& data, std::ostream& out);

}  // namespace cdt

#endif  // CDT_DATASET_H_
