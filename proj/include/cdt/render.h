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

// Text, JSON and Graphviz DOT serialization of causal and plain trees, plus
// the JSON reader used by `cdt eval`.

#ifndef CDT_RENDER_H_
#define CDT_RENDER_H_

#include <optional>
#include <string>
#include <string_view>

#include "cdt/baseline.h"
#include "cdt/cdt.h"

namespace cdt {

enum class TreeFormat { kText, kJson, kDot };

std::optional<TreeFormat> parse_format(std::string_view name);

std::string render(const CausalDecisionTree& tree, TreeFormat format);
std::string render(const PlainTree& tree, TreeFormat format);

// Tab-separated, one row per branch node in pre-order: context, attribute,
// statistic, critical value, stratifying attributes, stratum count, support.
std::string render_audit(const CausalDecisionTree& tree);

// Inverse of render(tree, TreeFormat::kJson). Throws DataError on malformed
// documents.
CausalDecisionTree parse_tree(std::string_view json);
PlainTree parse_plain_tree(std::string_view json);

}  // namespace cdt

#endif  // CDT_RENDER_H_
