// Small string helpers shared by the library sources. Not installed.

#ifndef ATGEN_SRC_TEXT_UTIL_H_
#define ATGEN_SRC_TEXT_UTIL_H_

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace atgen::detail {

inline std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Ids become canonical path segments.
inline bool valid_id(std::string_view id) {
  return !id.empty() && id.find('/') == std::string_view::npos &&
         id.find('#') == std::string_view::npos;
}

template <class Range, class T>
bool contains(const Range& range, const T& value) {
  return std::find(std::begin(range), std::end(range), value) !=
         std::end(range);
}

}  // namespace atgen::detail

#endif  // ATGEN_SRC_TEXT_UTIL_H_
