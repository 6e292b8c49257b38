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

#include "cdt/dataset.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cdt/kernels.h"

namespace cdt {
namespace {

void ValidateNames(const std::vector<std::string>& names,
                   const std::string& outcome) {
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw DataError("empty attribute name");
    if (!seen.insert(name).second) {
      throw DataError("duplicate attribute name '" + name + "'");
    }
    if (name == outcome) {
      throw DataError("attribute name '" + name + "' equals the outcome name");
    }
  }
  if (outcome.empty()) throw DataError("empty outcome name");
}

void ValidateBlock(const ColumnBlock& block, size_t m) {
  if (block.columns.size() != m) {
    throw DataError("column count does not match attribute count");
  }
  const size_t n = block.rows();
  if (block.weights.size() != n) throw DataError("weight column length");
  uint64_t total = 0;
  for (size_t i = 0; i < n; ++i) {
    if (block.outcome[i] > 1) throw DataError("outcome value outside {0,1}");
    if (block.weights[i] == 0) throw DataError("record weight must be >= 1");
    total += block.weights[i];
  }
  for (const auto& column : block.columns) {
    if (column.size() != n) throw DataError("ragged column");
    if (std::any_of(column.begin(), column.end(),
                    [](uint8_t v) { return v > 1; })) {
      throw DataError("attribute value outside {0,1}");
    }
  }
  if (total != block.total_weight) throw DataError("total weight mismatch");
  if (total > kMaxTotalWeight) throw DataError("dataset weight too large");
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> ParseNumber(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool LiteralMatches(std::string_view cell, const std::string& literal) {
  if (cell == literal) return true;
  const auto a = ParseNumber(cell);
  const auto b = ParseNumber(literal);
  return a && b && *a == *b;
}

bool IsMissing(std::string_view cell) {
  return cell.empty() || cell == "?" || cell == "NA";
}

// Splits one CSV line. Double quotes group commas; "" inside quotes is a
// literal quote. Unquoted cells are trimmed.
std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cell : std::string(Trim(cell)));
      cell.clear();
      was_quoted = false;
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(was_quoted ? cell : std::string(Trim(cell)));
  return cells;
}

std::string Unquote(std::string_view s) {
  s = Trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

std::string FormatRuleError(size_t line, const std::string& what) {
  return "rules line " + std::to_string(line) + ": " + what;
}

}  // namespace

// ---------------------------------------------------------------------------
// BinaryDataset

BinaryDataset::BinaryDataset(std::vector<std::string> attribute_names,
                             std::string outcome_name,
                             std::span<const Record> records) {
  ValidateNames(attribute_names, outcome_name);
  const size_t m = attribute_names.size();
  ColumnBlock block;
  block.columns.assign(m, std::vector<uint8_t>(records.size()));
  block.outcome.resize(records.size());
  block.weights.resize(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const Record& r = records[i];
    if (r.values.size() != m) {
      throw DataError("record " + std::to_string(i) + " has " +
                      std::to_string(r.values.size()) + " values, expected " +
                      std::to_string(m));
    }
    for (size_t j = 0; j < m; ++j) block.columns[j][i] = r.values[j];
    block.outcome[i] = r.outcome;
    block.weights[i] = r.weight;
    block.total_weight += r.weight;
  }
  ValidateBlock(block, m);
  impl_ = std::make_shared<const Impl>(
      Impl{std::move(attribute_names), std::move(outcome_name),
           std::make_shared<const ColumnBlock>(std::move(block))});
}

BinaryDataset::BinaryDataset(std::vector<std::string> attribute_names,
                             std::string outcome_name, ColumnBlock block) {
  ValidateNames(attribute_names, outcome_name);
  ValidateBlock(block, attribute_names.size());
  impl_ = std::make_shared<const Impl>(
      Impl{std::move(attribute_names), std::move(outcome_name),
           std::make_shared<const ColumnBlock>(std::move(block))});
}

std::optional<size_t> BinaryDataset::attribute_index(
    std::string_view name) const {
  const auto& names = impl_->names;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<size_t>(it - names.begin());
}

Record BinaryDataset::record(size_t i) const {
  const ColumnBlock& b = block();
  Record r;
  r.values.reserve(b.columns.size());
  for (const auto& column : b.columns) r.values.push_back(column[i]);
  r.outcome = b.outcome[i];
  r.weight = b.weights[i];
  return r;
}

BinaryDataset BinaryDataset::renamed(std::vector<std::string> attribute_names,
                                     std::string outcome_name) const {
  if (attribute_names.size() != num_attributes()) {
    throw DataError("rename: attribute count mismatch");
  }
  ValidateNames(attribute_names, outcome_name);
  BinaryDataset copy = *this;
  copy.impl_ = std::make_shared<const Impl>(Impl{
      std::move(attribute_names), std::move(outcome_name), impl_->block});
  return copy;
}

BinaryDataset BinaryDataset::exploded() const {
  const ColumnBlock& b = block();
  ColumnBlock out;
  out.columns.resize(b.columns.size());
  for (size_t i = 0; i < b.rows(); ++i) {
    for (uint32_t k = 0; k < b.weights[i]; ++k) {
      for (size_t j = 0; j < b.columns.size(); ++j) {
        out.columns[j].push_back(b.columns[j][i]);
      }
      out.outcome.push_back(b.outcome[i]);
      out.weights.push_back(1);
    }
  }
  out.total_weight = b.total_weight;
  return BinaryDataset(impl_->names, impl_->outcome, std::move(out));
}

BinaryDataset BinaryDataset::merged() const {
  std::map<std::vector<uint8_t>, size_t> slot;
  std::vector<Record> records;
  for (size_t i = 0; i < num_records(); ++i) {
    Record r = record(i);
    std::vector<uint8_t> key = r.values;
    key.push_back(r.outcome);
    const auto [it, inserted] = slot.emplace(std::move(key), records.size());
    if (inserted) {
      records.push_back(std::move(r));
    } else {
      records[it->second].weight += r.weight;
    }
  }
  return BinaryDataset(impl_->names, impl_->outcome, records);
}

// ---------------------------------------------------------------------------
// ContextView

ContextView::ContextView(BinaryDataset base)
    : base_(std::move(base)), rows_(base_.shared_block()) {}

bool ContextView::is_assigned(size_t attribute) const {
  return std::any_of(assignments_.begin(), assignments_.end(),
                     [&](const Assignment& a) { return a.attribute == attribute; });
}

ContextView restrict(const ContextView& view, size_t attribute,
                     uint8_t value) {
  if (attribute >= view.base().num_attributes()) {
    throw std::invalid_argument("restrict: attribute index out of range");
  }
  if (value > 1) throw std::invalid_argument("restrict: value must be 0 or 1");
  if (view.is_assigned(attribute)) {
    throw std::invalid_argument("restrict: attribute '" +
                                view.base().attribute_names()[attribute] +
                                "' is already assigned");
  }
  const ColumnBlock& src = view.rows();
  const size_t n = src.rows();
  std::vector<uint32_t> keep(n);
  const size_t k = kernels::active().select_equal(src.columns[attribute].data(),
                                                  value, keep.data(), n);
  ColumnBlock out;
  out.columns.resize(src.columns.size());
  for (size_t j = 0; j < src.columns.size(); ++j) {
    auto& dst = out.columns[j];
    dst.resize(k);
    const uint8_t* col = src.columns[j].data();
    for (size_t r = 0; r < k; ++r) dst[r] = col[keep[r]];
  }
  out.outcome.resize(k);
  out.weights.resize(k);
  for (size_t r = 0; r < k; ++r) {
    out.outcome[r] = src.outcome[keep[r]];
    out.weights[r] = src.weights[keep[r]];
    out.total_weight += out.weights[r];
  }

  ContextView child = view;
  child.assignments_.push_back({attribute, value});
  child.rows_ = std::make_shared<const ColumnBlock>(std::move(out));
  return child;
}

namespace {

// Returns -1, 0 or 1 for a Y=0 majority, a tie and a Y=1 majority.
int MajoritySign(const ColumnBlock& rows) {
  uint64_t ones = 0;
  for (size_t i = 0; i < rows.rows(); ++i) {
    ones += rows.outcome[i] ? rows.weights[i] : 0;
  }
  const uint64_t zeros = rows.total_weight - ones;
  return ones > zeros ? 1 : (ones < zeros ? -1 : 0);
}

}  // namespace

uint8_t majority_outcome(const ContextView& view) {
  const int local = MajoritySign(view.rows());
  if (local != 0) return local > 0 ? 1 : 0;
  return MajoritySign(view.base().block()) > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Rules and CSV

uint8_t BinarizationRule::apply(std::string_view cell) const {
  cell = Trim(cell);
  switch (predicate.kind) {
    case Predicate::Kind::kEquals:
    case Predicate::Kind::kInSet:
      for (const auto& literal : predicate.literals) {
        if (LiteralMatches(cell, literal)) return 1;
      }
      return 0;
    case Predicate::Kind::kLessThan:
    case Predicate::Kind::kGreaterThan: {
      const auto value = ParseNumber(cell);
      if (!value) {
        throw DataError("rule '" + derived_name + "': non-numeric cell '" +
                        std::string(cell) + "' in column '" + source_column +
                        "'");
      }
      const bool hit = predicate.kind == Predicate::Kind::kLessThan
                           ? *value < predicate.threshold
                           : *value > predicate.threshold;
      return hit ? 1 : 0;
    }
  }
  return 0;
}

std::vector<BinarizationRule> parse_rules(std::istream& in) {
  std::vector<BinarizationRule> rules;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string_view text = Trim(line);
    if (text.empty()) continue;

    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw DataError(FormatRuleError(line_no, "expected 'derived = column OP literal'"));
    }
    BinarizationRule rule;
    rule.derived_name = Unquote(text.substr(0, eq));
    std::string_view rest = Trim(text.substr(eq + 1));

    // Operators: "==", "<", ">", " in ".
    size_t op_pos = std::string_view::npos;
    size_t op_len = 0;
    if (const auto p = rest.find("=="); p != std::string_view::npos) {
      op_pos = p;
      op_len = 2;
      rule.predicate.kind = Predicate::Kind::kEquals;
    } else if (const auto p = rest.find(" in "); p != std::string_view::npos) {
      op_pos = p;
      op_len = 4;
      rule.predicate.kind = Predicate::Kind::kInSet;
    } else if (const auto p = rest.find('<'); p != std::string_view::npos) {
      op_pos = p;
      op_len = 1;
      rule.predicate.kind = Predicate::Kind::kLessThan;
    } else if (const auto p = rest.find('>'); p != std::string_view::npos) {
      op_pos = p;
      op_len = 1;
      rule.predicate.kind = Predicate::Kind::kGreaterThan;
    } else {
      throw DataError(FormatRuleError(line_no, "unknown operator"));
    }
    rule.source_column = Unquote(rest.substr(0, op_pos));
    const std::string_view literal = Trim(rest.substr(op_pos + op_len));
    if (rule.derived_name.empty() || rule.source_column.empty() ||
        literal.empty()) {
      throw DataError(FormatRuleError(line_no, "empty name or literal"));
    }

    switch (rule.predicate.kind) {
      case Predicate::Kind::kEquals:
        rule.predicate.literals.push_back(Unquote(literal));
        break;
      case Predicate::Kind::kInSet: {
        if (literal.front() != '{' || literal.back() != '}') {
          throw DataError(FormatRuleError(line_no, "set literal must be {a, b, ...}"));
        }
        for (auto& item : SplitCsvLine(literal.substr(1, literal.size() - 2))) {
          std::string value = Unquote(Trim(item));
          if (!value.empty()) rule.predicate.literals.push_back(std::move(value));
        }
        if (rule.predicate.literals.empty()) {
          throw DataError(FormatRuleError(line_no, "empty set literal"));
        }
        break;
      }
      case Predicate::Kind::kLessThan:
      case Predicate::Kind::kGreaterThan: {
        const auto value = ParseNumber(literal);
        if (!value) {
          throw DataError(FormatRuleError(line_no, "threshold is not a number"));
        }
        rule.predicate.threshold = *value;
        break;
      }
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<BinarizationRule> read_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open rules file '" + path + "'");
  return parse_rules(in);
}

BinaryDataset parse_csv(std::istream& in, const LoadOptions& options,
                        LoadStats* stats) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("missing header row");
  const std::vector<std::string> header = SplitCsvLine(line);
  std::unordered_map<std::string, size_t> column_of;
  for (size_t c = 0; c < header.size(); ++c) {
    if (!column_of.emplace(header[c], c).second) {
      throw DataError("duplicate column '" + header[c] + "'");
    }
  }
  auto require_column = [&](const std::string& name) {
    const auto it = column_of.find(name);
    if (it == column_of.end()) throw DataError("unknown column '" + name + "'");
    return it->second;
  };

  // A retained column is either raw (source index) or derived (rule index).
  struct Retained {
    std::string name;
    size_t source;
    const BinarizationRule* rule;
  };
  std::vector<Retained> retained;
  std::optional<size_t> weight_index;
  if (options.weight_column) weight_index = require_column(*options.weight_column);

  if (options.rules.empty()) {
    for (size_t c = 0; c < header.size(); ++c) {
      if (weight_index && c == *weight_index) continue;
      retained.push_back({header[c], c, nullptr});
    }
  } else {
    for (const auto& rule : options.rules) {
      retained.push_back({rule.derived_name, require_column(rule.source_column),
                          &rule});
    }
    const bool outcome_derived =
        std::any_of(retained.begin(), retained.end(),
                    [&](const Retained& r) { return r.name == options.outcome; });
    if (!outcome_derived) {
      retained.push_back({options.outcome, require_column(options.outcome), nullptr});
    }
  }

  std::optional<size_t> outcome_slot;
  for (size_t r = 0; r < retained.size(); ++r) {
    if (retained[r].name == options.outcome) outcome_slot = r;
  }
  if (!outcome_slot) throw DataError("unknown outcome column '" + options.outcome + "'");

  std::vector<std::string> attribute_names;
  for (size_t r = 0; r < retained.size(); ++r) {
    if (r != *outcome_slot) attribute_names.push_back(retained[r].name);
  }

  ColumnBlock block;
  block.columns.resize(attribute_names.size());
  LoadStats local;
  size_t line_no = 1;
  std::vector<uint8_t> values(retained.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ++local.rows_read;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, got " +
                      std::to_string(cells.size()));
    }
    bool missing = weight_index && IsMissing(cells[*weight_index]);
    for (const auto& r : retained) missing = missing || IsMissing(cells[r.source]);
    if (missing) {
      ++local.rows_dropped;
      continue;
    }

    for (size_t r = 0; r < retained.size(); ++r) {
      const std::string& cell = cells[retained[r].source];
      if (retained[r].rule != nullptr) {
        values[r] = retained[r].rule->apply(cell);
        continue;
      }
      if (cell == "0" || cell == "1") {
        values[r] = static_cast<uint8_t>(cell[0] - '0');
      } else {
        throw DataError("line " + std::to_string(line_no) + ", column '" +
                        retained[r].name + "': non-binary value '" + cell + "'");
      }
    }
    uint32_t weight = 1;
    if (weight_index) {
      const auto w = ParseNumber(cells[*weight_index]);
      if (!w || *w != static_cast<double>(static_cast<int64_t>(*w)) || *w < 1 ||
          *w > 4294967295.0) {
        throw DataError("line " + std::to_string(line_no) +
                        ": weight must be an integer >= 1, got '" +
                        cells[*weight_index] + "'");
      }
      weight = static_cast<uint32_t>(*w);
    }
    size_t a = 0;
    for (size_t r = 0; r < retained.size(); ++r) {
      if (r == *outcome_slot) {
        block.outcome.push_back(values[r]);
      } else {
        block.columns[a++].push_back(values[r]);
      }
    }
    block.weights.push_back(weight);
    block.total_weight += weight;
    if (block.total_weight > kMaxTotalWeight) throw DataError("dataset weight too large");
  }
  if (stats != nullptr) *stats = local;
  return BinaryDataset(std::move(attribute_names), options.outcome,
                       std::move(block));
}

BinaryDataset load_csv(const std::string& path, const LoadOptions& options,
                       LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_csv(in, options, stats);
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

std::string weight_column_name(const BinaryDataset& data) {
  std::string name = "count";
  while (data.attribute_index(name) || name == data.outcome_name()) name += '_';
  return name;
}

void write_csv(const BinaryDataset& data, std::ostream& out) {
  for (const auto& name : data.attribute_names()) out << CsvField(name) << ',';
  out << CsvField(data.outcome_name()) << ',' << CsvField(weight_column_name(data))
      << '\n';
  const ColumnBlock& b = data.block();
  for (size_t i = 0; i < b.rows(); ++i) {
    for (const auto& column : b.columns) out << int{column[i]} << ',';
    out << int{b.outcome[i]} << ',' << b.weights[i] << '\n';
  }
}

}  // namespace cdt
