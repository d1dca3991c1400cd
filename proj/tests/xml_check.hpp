#pragma once

#include <string>
#include <vector>

namespace h3body::testing {

// Minimal well-formedness check: balanced, properly nested tags and quoted
// attributes. Enough for the hand-emitted SVG, which uses no CDATA or comments.
inline bool well_formed_xml(const std::string& doc, std::string* why = nullptr) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  int roots = 0;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg + " at offset " + std::to_string(pos);
    return false;
  };
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const std::size_t end = doc.find('>', pos);
    if (end == std::string::npos) return fail("unterminated tag");
    std::string tag = doc.substr(pos + 1, end - pos - 1);
    if (tag.empty()) return fail("empty tag");
    if (tag[0] == '?') {
      pos = end + 1;
      continue;
    }
    int quotes = 0;
    for (char c : tag) quotes += (c == '"');
    if (quotes % 2) return fail("unbalanced quotes");
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
      stack.pop_back();
    } else {
      const bool self_closing = tag.back() == '/';
      const std::string name = tag.substr(0, tag.find_first_of(" /\n"));
      if (stack.empty()) ++roots;
      if (!self_closing) stack.push_back(name);
    }
    pos = end + 1;
  }
  if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
  if (roots != 1) return fail("expected one root element");
  // Text content must not carry a raw '<' or unescaped '&'.
  for (std::size_t k = doc.find('&'); k != std::string::npos; k = doc.find('&', k + 1)) {
    const std::size_t semi = doc.find(';', k);
    if (semi == std::string::npos || semi - k > 6) return fail("bare ampersand");
  }
  return true;
}

inline bool has_external_reference(const std::string& doc) {
  return doc.find("href") != std::string::npos || doc.find("url(") != std::string::npos ||
         doc.find("<image") != std::string::npos || doc.find("<script") != std::string::npos;
}

}  // namespace h3body::testing
