// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qamine::html {

/// Element or text node of a parsed page. Text nodes have an empty tag.
struct Node {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;
  std::vector<Node> children;
  /// Byte offset of the node's start in the source.
  std::size_t offset = 0;

  bool is_text() const { return tag.empty(); }
  const std::string* attr(std::string_view name) const;
  bool has_class(std::string_view cls) const;

  /// Concatenated descendant text with whitespace runs collapsed and trimmed.
  std::string text_content() const;

  const Node* find_first(const std::function<bool(const Node&)>& pred) const;
  std::vector<const Node*> find_all(const std::function<bool(const Node&)>& pred) const;

  const Node* first_with_class(std::string_view cls) const;
  std::vector<const Node*> all_with_class(std::string_view cls) const;
};

/// Decodes named (amp, lt, gt, quot, apos, nbsp) and numeric character
/// references into UTF-8. Unknown references are left verbatim.
std::string decode_entities(std::string_view text);

/// Tolerant HTML parse: unknown end tags are ignored, unclosed elements are
/// closed at end of input, void elements never take children, and an
/// opening <li> or <p> closes an open sibling of the same name. Comments,
/// doctype and script/style content are dropped. Never throws.
Node parse(std::string_view source);

}  // namespace qamine::html
