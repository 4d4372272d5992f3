#include "window.hpp"

#include <charconv>

#include "error.hpp"

namespace fss {
namespace {

int parse_year(std::string_view text, const std::string& whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw UsageError("invalid window '" + whole + "'");
  }
  return value;
}

}  // namespace

std::string Window::label() const {
  if (start == end) return std::to_string(start);
  return std::to_string(start) + "-" + std::to_string(end);
}

Window make_window(int start, int end) {
  if (start > end) {
    throw UsageError("window start " + std::to_string(start) + " is after end " +
                     std::to_string(end));
  }
  return Window{start, end};
}

Window parse_window(const std::string& text) {
  const std::string_view view(text);
  // A leading '-' would be a negative year; skip it when looking for the separator.
  const auto dash = view.find('-', 1);
  if (dash == std::string_view::npos) {
    const int year = parse_year(view, text);
    return Window{year, year};
  }
  return make_window(parse_year(view.substr(0, dash), text),
                     parse_year(view.substr(dash + 1), text));
}

}  // namespace fss
