#pragma once

// Small text helpers shared by the parsers of the plain-text formats.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vldl {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

inline bool is_identifier(std::string_view s) {
  if (s.empty())
    return false;
  auto ok_first = [](unsigned char c) { return std::isalpha(c) || c == '_'; };
  if (!ok_first(static_cast<unsigned char>(s[0])))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      return false;
  return true;
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos)
      comma = s.size();
    auto item = trim(s.substr(start, comma - start));
    if (!item.empty())
      out.push_back(item);
    start = comma + 1;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += sep;
    out += parts[i];
  }
  return out;
}

/// Removes `#` comments up to the end of each line.
inline std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '\n')
      comment = false;
    else if (c == '#')
      comment = true;
    if (!comment)
      out += c;
  }
  return out;
}

struct Statement {
  std::string text;
  std::size_t line;
};

/// Splits comment-free text at `;`, keeping the line each statement starts
/// on.  Empty statements are dropped.
inline std::vector<Statement> split_statements(std::string_view raw,
                                               std::size_t first_line = 1) {
  std::string text = strip_comments(raw);
  std::vector<Statement> out;
  std::size_t line = first_line;
  std::string current;
  std::size_t current_line = line;
  bool started = false;
  for (char c : text) {
    if (c == ';') {
      auto t = trim(current);
      if (!t.empty())
        out.push_back({t, current_line});
      current.clear();
      started = false;
    } else {
      if (!started && !std::isspace(static_cast<unsigned char>(c))) {
        started = true;
        current_line = line;
      }
      current += c;
    }
    if (c == '\n')
      ++line;
  }
  auto t = trim(current);
  if (!t.empty())
    out.push_back({t, current_line});
  return out;
}

} // namespace vldl
