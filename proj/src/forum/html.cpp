// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/html.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "qamine/strings.hpp"

namespace qamine::html {

namespace {

constexpr std::array<std::string_view, 14> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr"};

bool is_void(std::string_view tag) {
  return std::find(kVoidElements.begin(), kVoidElements.end(), tag) != kVoidElements.end();
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '_' || c == ':' || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {
    root_.tag = "#document";
    stack_.push_back(&root_);
  }

  Node run() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        if (!markup()) text_until_next_tag();
      } else {
        text_until_next_tag();
      }
    }
    return std::move(root_);
  }

 private:
  Node& top() { return *stack_.back(); }

  void text_until_next_tag() {
    const std::size_t start = pos_;
    auto next = src_.find('<', pos_ + 1);
    if (next == std::string_view::npos) next = src_.size();
    pos_ = next;
    Node text;
    text.offset = start;
    text.text = decode_entities(src_.substr(start, next - start));
    top().children.push_back(std::move(text));
  }

  // Returns false when the '<' does not start markup and should be text.
  bool markup() {
    auto rest = src_.substr(pos_);
    if (rest.starts_with("<!--")) {
      auto end = src_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? src_.size() : end + 3;
      return true;
    }
    if (rest.starts_with("<!") || rest.starts_with("<?")) {
      auto end = src_.find('>', pos_);
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      return true;
    }
    if (rest.starts_with("</")) return end_tag();
    if (rest.size() > 1 && is_name_char(rest[1])) return start_tag();
    return false;
  }

  bool end_tag() {
    std::size_t p = pos_ + 2;
    const std::size_t name_start = p;
    while (p < src_.size() && is_name_char(src_[p])) ++p;
    const std::string name = to_lower(src_.substr(name_start, p - name_start));
    auto close = src_.find('>', p);
    pos_ = close == std::string_view::npos ? src_.size() : close + 1;
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == name) {
        stack_.resize(i);
        break;
      }
    }
    return true;
  }

  bool start_tag() {
    Node node;
    node.offset = pos_;
    std::size_t p = pos_ + 1;
    const std::size_t name_start = p;
    while (p < src_.size() && is_name_char(src_[p])) ++p;
    node.tag = to_lower(src_.substr(name_start, p - name_start));
    bool self_closing = false;
    for (;;) {
      while (p < src_.size() && is_space(src_[p])) ++p;
      if (p >= src_.size()) break;
      if (src_[p] == '>') {
        ++p;
        break;
      }
      if (src_[p] == '/') {
        self_closing = true;
        ++p;
        continue;
      }
      const std::size_t attr_start = p;
      while (p < src_.size() && !is_space(src_[p]) && src_[p] != '=' && src_[p] != '>' && src_[p] != '/') ++p;
      std::string name = to_lower(src_.substr(attr_start, p - attr_start));
      if (name.empty()) {
        ++p;
        continue;
      }
      std::string value;
      while (p < src_.size() && is_space(src_[p])) ++p;
      if (p < src_.size() && src_[p] == '=') {
        ++p;
        while (p < src_.size() && is_space(src_[p])) ++p;
        if (p < src_.size() && (src_[p] == '"' || src_[p] == '\'')) {
          const char quote = src_[p++];
          auto end = src_.find(quote, p);
          if (end == std::string_view::npos) end = src_.size();
          value = decode_entities(src_.substr(p, end - p));
          p = std::min(end + 1, src_.size());
        } else {
          const std::size_t v = p;
          while (p < src_.size() && !is_space(src_[p]) && src_[p] != '>') ++p;
          value = decode_entities(src_.substr(v, p - v));
        }
      }
      node.attrs.emplace_back(std::move(name), std::move(value));
    }
    pos_ = p;

    if ((node.tag == "li" || node.tag == "p") && top().tag == node.tag) stack_.pop_back();

    if (node.tag == "script" || node.tag == "style") {
      auto end = src_.find("</" + node.tag, pos_);
      if (end == std::string_view::npos) end = src_.size();
      auto close = src_.find('>', end);
      pos_ = close == std::string_view::npos ? src_.size() : close + 1;
      top().children.push_back(std::move(node));
      return true;
    }

    const bool leaf = self_closing || is_void(node.tag);
    top().children.push_back(std::move(node));
    if (!leaf) stack_.push_back(&top().children.back());
    return true;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Node root_;
  // Pointers into the tree; only the back of each children vector grows,
  // and only the innermost open element receives children, so outer
  // pointers stay valid.
  std::vector<Node*> stack_;
};

void collect_text(const Node& node, std::string& out) {
  if (node.is_text()) {
    out += node.text;
    out.push_back(' ');
    return;
  }
  for (const auto& child : node.children) collect_text(child, out);
}

void walk(const Node& node, const std::function<bool(const Node&)>& pred, std::vector<const Node*>& out,
          bool first_only) {
  for (const auto& child : node.children) {
    if (first_only && !out.empty()) return;
    if (!child.is_text() && pred(child)) {
      out.push_back(&child);
      if (first_only) return;
    }
    walk(child, pred, out, first_only);
  }
}

}  // namespace

const std::string* Node::attr(std::string_view name) const {
  for (const auto& [k, v] : attrs) {
    if (k == name) return &v;
  }
  return nullptr;
}

bool Node::has_class(std::string_view cls) const {
  const auto* classes = attr("class");
  if (classes == nullptr) return false;
  std::string_view rest(*classes);
  while (!rest.empty()) {
    while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
    std::size_t n = 0;
    while (n < rest.size() && !is_space(rest[n])) ++n;
    if (rest.substr(0, n) == cls) return true;
    rest.remove_prefix(n);
  }
  return false;
}

std::string Node::text_content() const {
  std::string raw;
  collect_text(*this, raw);
  return normalize_whitespace(raw);
}

const Node* Node::find_first(const std::function<bool(const Node&)>& pred) const {
  std::vector<const Node*> out;
  walk(*this, pred, out, true);
  return out.empty() ? nullptr : out.front();
}

std::vector<const Node*> Node::find_all(const std::function<bool(const Node&)>& pred) const {
  std::vector<const Node*> out;
  walk(*this, pred, out, false);
  return out;
}

const Node* Node::first_with_class(std::string_view cls) const {
  return find_first([cls](const Node& n) { return n.has_class(cls); });
}

std::vector<const Node*> Node::all_with_class(std::string_view cls) const {
  return find_all([cls](const Node& n) { return n.has_class(cls); });
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    auto name = text.substr(i + 1, semi - i - 1);
    bool done = true;
    if (name == "amp") {
      out.push_back('&');
    } else if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else if (name == "nbsp") {
      append_utf8(out, 0xA0);
    } else if (name.size() > 1 && name[0] == '#') {
      unsigned long cp = 0;
      const bool hex = name[1] == 'x' || name[1] == 'X';
      auto digits = name.substr(hex ? 2 : 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty() && cp <= 0x10FFFF) {
        append_utf8(out, cp);
      } else {
        done = false;
      }
    } else {
      done = false;
    }
    if (done) {
      i = semi + 1;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

Node parse(std::string_view source) { return Parser(source).run(); }

}  // namespace qamine::html
