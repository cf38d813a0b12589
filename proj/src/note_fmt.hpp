#pragma once

#include <sstream>
#include <string>

namespace setdist::detail {

inline void cat_append(std::ostringstream&) {}

template <typename T, typename... Rest>
void cat_append(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  cat_append(os, rest...);
}

// Streams the arguments into one string; keeps report notes terse without a
// formatting library.
template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  cat_append(os, args...);
  return os.str();
}

}  // namespace setdist::detail
