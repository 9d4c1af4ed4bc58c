#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace semsnap::detail {

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string short_hash(std::string_view text, int digits = 10) {
  return fmt::format("{:016x}", fnv1a(text)).substr(0, static_cast<std::size_t>(digits));
}

}  // namespace semsnap::detail
