#pragma once

#include <charconv>
#include <string>

namespace stereogen {

/// Shortest round-trip decimal form of a double. Keeps emitted CSV/JSON
/// artifacts byte-stable across runs.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace stereogen
