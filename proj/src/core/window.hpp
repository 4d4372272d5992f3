#pragma once

#include <compare>
#include <string>

namespace fss {

// Inclusive range of publication years.
struct Window {
  int start = 0;
  int end = 0;

  constexpr int length() const noexcept { return end - start + 1; }
  constexpr bool contains(int year) const noexcept { return year >= start && year <= end; }
  constexpr bool contains(const Window& other) const noexcept {
    return other.start >= start && other.end <= end;
  }
  constexpr bool valid() const noexcept { return start <= end; }

  std::string label() const;  // "2003-2008", or "2008" for a single year

  friend constexpr auto operator<=>(const Window&, const Window&) = default;
};

// Throws UsageError unless start <= end.
Window make_window(int start, int end);

// Parses "2003-2008" or "2008".
Window parse_window(const std::string& text);

}  // namespace fss
